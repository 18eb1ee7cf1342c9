"""Generalized cluster algebras from triangulated orbifolds, checked four ways.

The package computes the same objects along independent routes: seed mutation,
tropical recursions, triangulation flips, gentle-algebra representations and
wall-crossing, so that each route can audit the others.
"""

__version__ = "0.1.0"
