"""Canonical-transformation kernels for the quantum Hamiltonians with V''' = rho V'."""

__version__ = "0.1.0"
