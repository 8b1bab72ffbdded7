"""Universal sl(2) link homology over Q[a, h].

The package computes the two-parameter deformation of Khovanov homology for
oriented link diagrams via a cube of resolutions over the Frobenius algebra
Q[a, h][X]/(X^2 - h X - a), and provides an exact Koszul matrix-factorization
calculus that verifies the web-level isomorphisms underpinning the theory.
"""

from __future__ import annotations

__version__ = "0.1.0"

__all__ = ["__version__"]
