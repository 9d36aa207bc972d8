"""fractalc: fractional derivative operators and mechanical checks of the
algebraic laws (linearity, Leibniz, chain rule, constant annihilation) they
do and do not satisfy."""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
