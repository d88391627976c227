"""Verification toolkit for product-test-positive operators and distinguishability games."""

from ._poptlab import *  # noqa: F401,F403
from ._poptlab import __version__  # noqa: F401
