"""Filtered B-spline feedforward compensation for H-frame motion stages."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
