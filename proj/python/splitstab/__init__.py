"""IMEX flux-splitting stability toolkit."""

from splitstab._core import *  # noqa: F401,F403
from splitstab._core import __doc__  # noqa: F401
