"""Newton polygons, Ore's theorem and non-monogenity certificates for trinomials x^n + a x^m + b."""

from .intpoly import IntPoly, Trinomial, trinomial_discriminant
from .monogenity import Certificate, certify
from .ore import FactorizationShape, OreReport, analyze_prime, dedekind_index_test

__all__ = [
    "Certificate",
    "FactorizationShape",
    "IntPoly",
    "OreReport",
    "Trinomial",
    "analyze_prime",
    "certify",
    "dedekind_index_test",
    "trinomial_discriminant",
]
__version__ = "0.1.0"
