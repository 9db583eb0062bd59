"""loopsing: exact tools for loop-with-branches quasihomogeneous singularities.

The package completes degenerate choice-map polynomials into polynomials with
an isolated singularity, certifies the result through Milnor numbers computed
by Groebner bases, resolves a Z/2 diagonal symmetry into an equivalent single
polynomial, and verifies the induced isomorphism of orbifold Jacobian
algebras.
"""

from .poly import Polynomial, parse_polynomial, format_polynomial

__version__ = "0.1.0"

__all__ = ["Polynomial", "parse_polynomial", "format_polynomial", "__version__"]
