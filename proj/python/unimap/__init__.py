from ._unimap import *  # noqa: F401,F403
from ._unimap import __doc__  # noqa: F401
