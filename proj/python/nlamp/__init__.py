"""Photon-number noise of linear and nonlinear amplifiers."""

from ._nlamp import *  # noqa: F401,F403
from ._nlamp import mc, verify  # noqa: F401

__version__ = "0.1.0"
