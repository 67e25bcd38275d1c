"""Channel-flow solver, POD-Galerkin reduction, and polynomial-chaos UQ."""

__version__ = "0.1.0"
