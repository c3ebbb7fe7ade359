"""Dirichlet sine-basis SQG solver and Besov estimate checks."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
