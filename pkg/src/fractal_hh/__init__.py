"""Local fractional calculus on the fractal line and Hermite-Hadamard checks."""

__version__ = "0.1.0"
