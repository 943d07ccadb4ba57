"""Pseudospectral solvers and convergence studies for the cubic Schrodinger
equation with white noise dispersion."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
