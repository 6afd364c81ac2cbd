"""Exact vortex invariants of linear torus actions and quantum cohomology of toric quotients."""
__version__ = "0.1.0"
