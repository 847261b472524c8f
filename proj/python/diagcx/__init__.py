from ._diagcx import *  # noqa: F401,F403
from ._diagcx import __doc__  # noqa: F401
