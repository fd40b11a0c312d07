class ProjInfo:
	PROJECT_NAME = 'theta-boundary'
	VERSION = '1.0.0'
	AUTHOR_FULL_NAME = 'the theta-boundary developers'
	DESCRIPTION = "Exact intersection numbers on universal semiabelian families: theta classes and boundary coefficients."
	BANNER = """
  theta-boundary
  --------------
  xi + mu + 1/2*alpha + 1/4*eta"""


ProjInfo = ProjInfo()
