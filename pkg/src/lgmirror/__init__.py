"""Landau-Ginzburg orbifold state spaces and nonabelian BHK mirror checks."""

__version__ = "0.1.0"
