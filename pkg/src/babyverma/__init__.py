"""Simplicity of parabolically induced modules for reduced enveloping algebras.

The closed-form criterion lives in :mod:`babyverma.rcrit`; the explicit
modules it is checked against are built in :mod:`babyverma.modrep`.
"""

from .chevalley import E, F, H, structure_constants, verify_chevalley
from .envalg import Character, HypothesisError, ReducedEnvelopingAlgebra, algebra_for
from .gf import GF, field
from .meataxe import is_simple
from .modrep import (ParabolicContext, induce, levi_simple, r_by_straightening,
                     verify_theorem37)
from .rcrit import r_factorization, r_product
from .rootsys import ConfigurationError, Root, build_root_system, parabolic_data

__all__ = [
    "Character", "ConfigurationError", "E", "F", "GF", "H", "HypothesisError",
    "ParabolicContext", "ReducedEnvelopingAlgebra", "Root", "algebra_for",
    "build_root_system", "field", "induce", "is_simple", "levi_simple",
    "parabolic_data", "r_by_straightening", "r_factorization", "r_product",
    "structure_constants", "verify_chevalley", "verify_theorem37",
]

__version__ = "0.1.0"
