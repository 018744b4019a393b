"""The closed-form simplicity criterion.

``R(lambda)`` is, up to a nonzero constant, the product over the roots
outside the Levi factor of ``(lambda + rho)(h_a)^(p-1) - 1``.  A factor
vanishes exactly when ``(lambda + rho)(h_a)`` is a nonzero element of the
prime field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from itertools import product

from .envalg import Character, HypothesisError
from .gf import GF
from .rootsys import ParabolicData, Root, RootSystem, rho_I_pairing, rho_pairing


@dataclass(frozen=True)
class LinearForm:
    """``sum_i coeffs[i] * x_i + constant`` with integer coefficients."""

    root: Root
    coeffs: tuple[int, ...]
    constant: int

    def evaluate(self, fld: GF, x) -> int:
        out = fld.from_int(self.constant)
        for k, xi in zip(self.coeffs, x):
            if k:
                out = fld.add(out, fld.mul(fld.from_int(k), xi))
        return out

    def factor(self, fld: GF, x) -> int:
        """``y^(p-1) - 1`` at ``y = self(x)``."""
        y = self.evaluate(fld, x)
        return fld.sub(fld.pow(y, fld.p - 1), 1)

    def __str__(self):
        terms = []
        for i, k in enumerate(self.coeffs, start=1):
            if k == 1:
                terms.append(f"x{i}")
            elif k:
                terms.append(f"{k}*x{i}")
        terms.append(str(self.constant))
        return " + ".join(terms)


@dataclass(frozen=True)
class RFactorization:
    system: RootSystem
    pd: ParabolicData
    factors: tuple[LinearForm, ...]

    def to_dict(self) -> dict:
        return {
            "type": self.system.name,
            "I": list(self.pd.I),
            "factors": [{"root": list(f.root), "name": f.root.name(),
                         "coeffs": list(f.coeffs), "constant": f.constant}
                        for f in self.factors],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def describe(self, p: int) -> list[str]:
        return [f"({f})^{p - 1} - 1    [{f.root.name()}]" for f in self.factors]


def r_factorization(sys_: RootSystem, pd: ParabolicData) -> RFactorization:
    forms = tuple(LinearForm(a, tuple(sys_.coroot_coeffs[a]), rho_pairing(sys_, a))
                  for a in pd.complement)
    return RFactorization(sys_, pd, forms)


@dataclass
class RVerdict:
    simple: bool
    r_value: int
    vanishing_factors: list = dc_field(default_factory=list)
    factor_values: list = dc_field(default_factory=list)
    oracle_simple: bool | None = None


def r_product(sys_: RootSystem, pd: ParabolicData, fld: GF, x) -> RVerdict:
    """Evaluate the product formula at the weight with ``x_i = lambda(h_i)``."""
    fac = r_factorization(sys_, pd)
    value = 1
    vanishing = []
    values = []
    for f in fac.factors:
        v = f.factor(fld, x)
        values.append(v)
        if v == 0:
            vanishing.append(f.root)
        value = fld.mul(value, v)
    return RVerdict(value != 0, value, vanishing, values)


def _signed_product(fld: GF, forms, x, sign_exp: int) -> int:
    value = 1 if sign_exp % 2 == 0 else fld.neg(1)
    for f in forms:
        value = fld.mul(value, f.factor(fld, x))
    return value


def full_rudakov(sys_: RootSystem, fld: GF, x) -> int:
    """``(-1)^t`` times the product over all positive roots."""
    forms = [LinearForm(a, tuple(sys_.coroot_coeffs[a]), rho_pairing(sys_, a))
             for a in sys_.positive_roots]
    return _signed_product(fld, forms, x, len(forms))


def levi_rudakov(sys_: RootSystem, pd: ParabolicData, fld: GF, x) -> int:
    """``(-1)^s`` times the product over the Levi positive roots, shifted by rho_I."""
    forms = [LinearForm(a, tuple(sys_.coroot_coeffs[a]), rho_I_pairing(sys_, pd, a))
             for a in pd.phi_I_plus]
    return _signed_product(fld, forms, x, len(forms))


def kw_sufficient(sys_: RootSystem, pd: ParabolicData, chi: Character) -> bool:
    """Whether ``chi(h_a) != 0`` for every root outside the Levi factor."""
    chi.validate(sys_, pd)
    return all(chi.h_value(sys_, a) != 0 for a in pd.complement)


def lemma42_constant(sys_: RootSystem, pd: ParabolicData, fld: GF, weights) -> int | None:
    """The constant ``c`` with ``R^I * R_I = c * R`` across ``weights``.

    Returns ``None`` when no weight has all three values nonzero, and raises
    when two weights disagree or the zero loci are inconsistent.
    """
    c = None
    for x in weights:
        a = r_product(sys_, pd, fld, x).r_value
        b = levi_rudakov(sys_, pd, fld, x)
        full = full_rudakov(sys_, fld, x)
        lhs = fld.mul(a, b)
        if full == 0:
            if lhs != 0:
                raise AssertionError(f"zero of the full product missed at {x}")
            continue
        if lhs == 0:
            raise AssertionError(f"spurious zero at {x}")
        ratio = fld.div(lhs, full)
        if c is None:
            c = ratio
        elif ratio != c:
            raise AssertionError(f"ratio changes at {x}: {ratio} != {c}")
    return c


def is_compatible(fld: GF, chi: Character, x) -> bool:
    p = fld.p
    return all(fld.sub(fld.pow(xi, p), xi) == fld.pow(ci, p) for xi, ci in zip(x, chi.chi_h))


def check_compatible(fld: GF, chi: Character, x) -> None:
    if len(x) != len(chi.chi_h):
        raise HypothesisError(f"weight needs {len(chi.chi_h)} coordinates")
    if not is_compatible(fld, chi, x):
        raise HypothesisError("weight not compatible with chi: x_i^p - x_i != chi(h_i)^p")


def compatible_weights(fld: GF, chi: Character) -> list[tuple[int, ...]]:
    """All ``x`` in GF(p^e)^l with ``x_i^p - x_i = chi(h_i)^p``, lexicographic."""
    p = fld.p
    per_coord = []
    for c in chi.chi_h:
        target = fld.pow(c, p)
        per_coord.append([x for x in fld.elements() if fld.sub(fld.pow(x, p), x) == target])
    return [tuple(x) for x in product(*per_coord)]


def steinberg_weight(sys_: RootSystem, p: int) -> tuple[int, ...]:
    """``(p-1) rho``, i.e. ``x_i = p - 1`` for every simple coroot."""
    return (p - 1,) * sys_.rank
