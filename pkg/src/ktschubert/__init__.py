"""Equivariant K-theory of flag varieties: Schubert calculus and positivity checks."""

from .kring import BASES, Expansion, FlagK, InvariantViolation, KClass
from .laurent import LaurentPoly, NotDivisible, NotInYRing, YPolynomial, divide_exact, expand_in_y
from .positivity import (
    CLAIMS,
    PositivityReport,
    SubtorusBasis,
    verify_dualizing,
    verify_grku_prime,
    verify_grku_richardson,
    verify_grra,
    verify_richardson_family,
)
from .rootsystem import ConfigurationError, RootSystem, build_root_system
from .weyl import ResourceCapError, WeylElement, WeylGroup

__version__ = "0.1.0"

__all__ = [
    "BASES", "CLAIMS", "ConfigurationError", "Expansion", "FlagK", "InvariantViolation", "KClass",
    "LaurentPoly", "NotDivisible", "NotInYRing", "PositivityReport", "ResourceCapError", "RootSystem",
    "SubtorusBasis", "WeylElement", "WeylGroup", "YPolynomial", "build_root_system", "divide_exact",
    "expand_in_y", "verify_dualizing", "verify_grku_prime", "verify_grku_richardson", "verify_grra",
    "verify_richardson_family",
]
