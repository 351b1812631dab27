"""Discrete lacunary spherical maximal functions: lattice points, Kloosterman
sums, the main/error multiplier decomposition and the operators built on it."""
__version__ = "0.1.0"
