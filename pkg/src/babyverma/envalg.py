"""The reduced enveloping algebra u_chi(g) as a PBW straightening engine.

Monomials are exponent tuples over the ordered generator list

    F(b_1) ... F(b_t)  H(1) ... H(l)  E(b_1) ... E(b_t)

with every exponent below ``p``.  Products are rewritten into this form by
moving generators left to right past each other, using the bracket table for
the commutators and ``x^p = x^[p] + chi(x)^p`` to cut exponents at ``p``.
"""

from __future__ import annotations

import sys as _sys
from dataclasses import dataclass

from .chevalley import BasisLabel, E, F, H, StructureConstants
from .gf import GF
from .rootsys import (ConfigurationError, ParabolicData, Root, RootError, RootSystem,
                      extended_alpha_string)

_sys.setrecursionlimit(max(_sys.getrecursionlimit(), 100_000))


class HypothesisError(ConfigurationError):
    """A standing hypothesis on the p-character or the weight is violated."""


class LemmaViolation(AssertionError):
    """A computation contradicted an identity the theory guarantees."""


@dataclass(frozen=True)
class Character:
    """A p-character with ``chi(n^+) = 0``.

    ``chi_h[i-1]`` is ``chi(h_i)``; ``chi_f`` lists the nonzero values
    ``chi(F(a))`` as ``(root, value)`` pairs.
    """

    field: GF
    chi_h: tuple
    chi_f: tuple = ()

    def __post_init__(self):
        cleaned = tuple(sorted((Root(r), int(v)) for r, v in self.chi_f if int(v)))
        object.__setattr__(self, "chi_f", cleaned)
        object.__setattr__(self, "chi_h", tuple(int(v) for v in self.chi_h))

    @classmethod
    def zero(cls, field: GF, rank: int) -> "Character":
        return cls(field, (0,) * rank)

    def f(self, root) -> int:
        return dict(self.chi_f).get(Root(root), 0)

    def h(self, i: int) -> int:
        return self.chi_h[i - 1]

    def h_value(self, sys_: RootSystem, alpha) -> int:
        """``chi(h_alpha)`` through the coroot expansion."""
        fld = self.field
        out = 0
        for k, c in zip(sys_.coroot_coeffs[tuple(alpha)], self.chi_h):
            out = fld.add(out, fld.mul(fld.from_int(k), c))
        return out

    @property
    def semisimple_part(self) -> "Character":
        return Character(self.field, self.chi_h)

    @property
    def nilpotent_part(self) -> "Character":
        return Character(self.field, (0,) * len(self.chi_h), self.chi_f)

    def is_semisimple(self) -> bool:
        return not self.chi_f

    def is_zero(self) -> bool:
        return not self.chi_f and not any(self.chi_h)

    def validate(self, sys_: RootSystem, pd: ParabolicData | None = None) -> None:
        if len(self.chi_h) != sys_.rank:
            raise HypothesisError(f"chi_h needs {sys_.rank} values")
        for r, _ in self.chi_f:
            if not sys_.is_positive_root(r):
                raise HypothesisError(f"chi_f given on {r}, which is not a positive root")
        if pd is not None:
            comp = set(pd.complement)
            for r, v in self.chi_f:
                if r in comp:
                    raise HypothesisError(
                        f"chi(u') = 0 violated: chi(f[{r.name()}]) = {self.field.format(v)}")

    def spec(self) -> str:
        fmt = self.field.format
        hs = ",".join(fmt(v) for v in self.chi_h)
        fs = ",".join(f"{r.name()}:{fmt(v)}" for r, v in self.chi_f)
        return f"h=({hs});f=({fs})"


class PBWElement:
    """A finite combination of PBW monomials with nonzero field coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "ReducedEnvelopingAlgebra", terms: dict):
        self.alg = alg
        self.terms = {m: c for m, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, PBWElement):
            return self.alg is other.alg and self.terms == other.terms
        if isinstance(other, int):
            return self == self.alg.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _combine(self, other, sign):
        fld = self.alg.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            c = c if sign > 0 else fld.neg(c)
            out[m] = fld.add(out.get(m, 0), c)
        return PBWElement(self.alg, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        fld = self.alg.field
        return PBWElement(self.alg, {m: fld.neg(c) for m, c in self.terms.items()})

    def scale(self, c: int) -> "PBWElement":
        fld = self.alg.field
        return PBWElement(self.alg, {m: fld.mul(c, v) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return self.alg.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scalar_value(self) -> int | None:
        """The coefficient if this element is a scalar multiple of 1, else ``None``."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            if not any(m):
                return c
        return None

    def __str__(self):
        return self.alg.format(self)

    __repr__ = __str__


class ReducedEnvelopingAlgebra:
    """u_chi(g) with PBW basis ordered F-part, H-part, E-part.

    ``f_order`` fixes the order of the positive roots within the F- and
    E-parts; it defaults to the root system's order.
    """

    def __init__(self, sc: StructureConstants, chi: Character, f_order=None):
        sys_ = sc.system
        chi.validate(sys_)
        self.sc = sc
        self.system = sys_
        self.chi = chi
        self.field = fld = chi.field
        self.p = fld.p
        if f_order is None:
            f_order = sys_.positive_roots
        f_order = tuple(Root(r) for r in f_order)
        if sorted(f_order) != sorted(sys_.positive_roots):
            raise RootError("f_order must be a permutation of the positive roots")
        self.f_order = f_order
        self.gens = tuple([F(a) for a in f_order] + [H(i) for i in range(1, sys_.rank + 1)]
                          + [E(a) for a in f_order])
        self.index = {g: i for i, g in enumerate(self.gens)}
        self.ngens = len(self.gens)
        self.kinds = tuple(g.kind for g in self.gens)
        p = self.p
        self._chi_p = []
        for g in self.gens:
            if g.kind == "F":
                self._chi_p.append(fld.pow(chi.f(g.key), p))
            elif g.kind == "H":
                self._chi_p.append(fld.pow(chi.h(g.key), p))
            else:
                self._chi_p.append(0)
        self._comm = {}
        for j, gj in enumerate(self.gens):
            for i, gi in enumerate(self.gens):
                combo = [(self.index[lab], fld.from_int(c))
                         for lab, c in sc.bracket_labels(gj, gi).items() if c % p]
                if combo:
                    self._comm[(j, i)] = combo
        self._memo: dict = {}
        self._one = (0,) * self.ngens

    # -- construction ---------------------------------------------------------

    def scalar(self, c: int) -> PBWElement:
        return PBWElement(self, {self._one: self.field.from_int(c) if c < self.p else c})

    def one(self) -> PBWElement:
        return PBWElement(self, {self._one: 1})

    def zero(self) -> PBWElement:
        return PBWElement(self, {})

    def gen(self, label: BasisLabel) -> PBWElement:
        m = [0] * self.ngens
        m[self.index[label]] = 1
        return PBWElement(self, {tuple(m): 1})

    def monomial(self, exps: dict) -> PBWElement:
        """The canonical monomial with the given ``{label: exponent}``."""
        m = [0] * self.ngens
        for lab, a in exps.items():
            if not 0 <= a < self.p:
                raise ValueError(f"exponent {a} out of range for {lab}")
            m[self.index[lab]] = a
        return PBWElement(self, {tuple(m): 1})

    def product(self, factors) -> PBWElement:
        """Product of generator powers ``[(label, exponent), ...]`` in the given order."""
        terms = {self._one: 1}
        for lab, a in reversed(list(factors)):
            j = self.index[lab]
            for _ in range(a):
                terms = self._lmul(j, terms)
        return PBWElement(self, terms)

    # -- arithmetic -------------------------------------------------------------

    def multiply(self, x: PBWElement, y: PBWElement) -> PBWElement:
        fld = self.field
        out: dict = {}
        for m1, c1 in x.terms.items():
            terms = y.terms
            for j in reversed(range(self.ngens)):
                for _ in range(m1[j]):
                    terms = self._lmul(j, terms)
            for m, c in terms.items():
                out[m] = fld.add(out.get(m, 0), fld.mul(c1, c))
        return PBWElement(self, out)

    def commutator(self, x: PBWElement, y: PBWElement) -> PBWElement:
        return self.multiply(x, y) - self.multiply(y, x)

    def left_gen(self, label: BasisLabel, x: PBWElement) -> PBWElement:
        return PBWElement(self, self._lmul(self.index[label], x.terms))

    def _lmul(self, j: int, terms: dict) -> dict:
        fld = self.field
        out: dict = {}
        for m, c in terms.items():
            for m2, c2 in self._gmul(j, m).items():
                out[m2] = fld.add(out.get(m2, 0), fld.mul(c, c2))
        return {m: c for m, c in out.items() if c}

    def _gmul(self, j: int, mono: tuple) -> dict:
        """``g_j * mono`` in canonical form.  Results are shared; do not mutate."""
        key = (j, mono)
        res = self._memo.get(key)
        if res is not None:
            return res
        i = 0
        n = self.ngens
        while i < n and not mono[i]:
            i += 1
        m = list(mono)
        if j < i:
            m[j] = 1
            res = {tuple(m): 1}
        elif j == i:
            a = mono[j] + 1
            if a < self.p:
                m[j] = a
                res = {tuple(m): 1}
            else:
                m[j] = 0
                base = tuple(m)
                c = self._chi_p[j]
                kind = self.kinds[j]
                if kind == "E":
                    res = {}
                elif kind == "F":
                    res = {base: c} if c else {}
                else:
                    # h^p = h + chi(h)^p
                    m[j] = 1
                    res = {tuple(m): 1}
                    if c:
                        res[base] = c
        else:
            fld = self.field
            comm = self._comm.get((j, i))
            if comm is None:
                a = mono[i]
                m[i] = 0
                res = self._gmul(j, tuple(m))
                for _ in range(a):
                    res = self._lmul(i, res)
            else:
                m[i] -= 1
                rest = tuple(m)
                res = dict(self._lmul(i, self._gmul(j, rest)))
                for k, ck in comm:
                    for m2, c2 in self._gmul(k, rest).items():
                        res[m2] = fld.add(res.get(m2, 0), fld.mul(ck, c2))
                res = {mm: cc for mm, cc in res.items() if cc}
        self._memo[key] = res
        return res

    # -- presentation -----------------------------------------------------------

    def split(self, mono: tuple) -> tuple[tuple, tuple, tuple]:
        t = len(self.f_order)
        l = self.system.rank
        return mono[:t], mono[t:t + l], mono[t + l:]

    def format_monomial(self, mono: tuple) -> str:
        parts = []
        for g, a in zip(self.gens, mono):
            if a:
                parts.append(str(g) + (f"^{a}" if a > 1 else ""))
        return " ".join(parts) if parts else "1"

    def format(self, x: PBWElement) -> str:
        if not x.terms:
            return "0"
        items = sorted(x.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]))
        return " + ".join(f"{self.field.format(c)}*{self.format_monomial(m)}"
                          for m, c in items)


def algebra_for(sc: StructureConstants, chi: Character,
                pd: ParabolicData | None = None) -> ReducedEnvelopingAlgebra:
    """An algebra whose F-order lists the complement of ``pd`` first."""
    if pd is None:
        return ReducedEnvelopingAlgebra(sc, chi)
    chi.validate(sc.system, pd)
    return ReducedEnvelopingAlgebra(sc, chi, pd.complement + pd.phi_I_plus)


# -- the products and lemmas --------------------------------------------------------


def _require_zero_chi_on(alg: ReducedEnvelopingAlgebra, roots) -> None:
    for r in roots:
        if alg.chi.f(r):
            raise HypothesisError(f"chi(f[{Root(r).name()}]) must vanish here")


def ftilde(alg: ReducedEnvelopingAlgebra, alpha, beta) -> PBWElement:
    """Product of ``f_g^(p-1)`` over the extended alpha-string through ``beta``."""
    ext = extended_alpha_string(alg.system, alpha, beta)
    _require_zero_chi_on(alg, ext.members)
    return alg.product([(F(g), alg.p - 1) for g in ext.members])


def check_lemma31(alg: ReducedEnvelopingAlgebra, alpha, beta) -> bool:
    """Whether ``e_alpha`` commutes with the extended-string product."""
    ft = ftilde(alg, alpha, beta)
    return alg.commutator(alg.gen(E(alpha)), ft).is_zero()


def full_f_product(alg: ReducedEnvelopingAlgebra, pd: ParabolicData, order=None) -> PBWElement:
    order = pd.complement if order is None else [Root(r) for r in order]
    if sorted(order) != sorted(pd.complement):
        raise RootError("order must be a permutation of the complement")
    _require_zero_chi_on(alg, order)
    return alg.product([(F(b), alg.p - 1) for b in order])


def reorder_constant(alg: ReducedEnvelopingAlgebra, pd: ParabolicData, permutation) -> int:
    """The scalar ``c`` with (permuted product) = c * (canonical product).

    ``permutation`` lists positions into ``pd.complement``.
    """
    order = [pd.complement[i] for i in permutation]
    canon = full_f_product(alg, pd)
    perm = full_f_product(alg, pd, order)
    (mono, c0), = canon.terms.items()
    if set(perm.terms) != {mono}:
        raise LemmaViolation("permuted f-product is not a multiple of the canonical one")
    c = alg.field.div(perm.terms[mono], c0)
    if c == 0:
        raise LemmaViolation("reordering constant vanished")
    return c


def insertion_product(alg: ReducedEnvelopingAlgebra, ordering, exponents, insert_root,
                      position: int) -> PBWElement:
    """``f_{a_1}^{i_1} ... f_{a_m}^{i_m}`` with ``f_{insert_root}`` inserted at ``position``."""
    factors = [(F(r), a) for r, a in zip(ordering, exponents)]
    factors.insert(position, (F(insert_root), 1))
    return alg.product(factors)


def check_lemma35(alg: ReducedEnvelopingAlgebra, pd: ParabolicData) -> bool:
    """``[e_a, F] = [f_a, F] = 0`` for the full complement product and all ``a`` in Phi_I^+."""
    prod = full_f_product(alg, pd)
    for a in pd.phi_I_plus:
        for lab in (E(a), F(a)):
            if not alg.commutator(alg.gen(lab), prod).is_zero():
                return False
    return True


def check_lemma34(alg: ReducedEnvelopingAlgebra, ordering, exponents, k: int) -> bool:
    """Inserting ``f_{ordering[k]}`` at every position of the product gives zero.

    Exponents of roots at least as high as ``ordering[k]`` must be ``p-1``.
    """
    ordering = [Root(r) for r in ordering]
    h = ordering[k].height
    for r, a in zip(ordering, exponents):
        if r.height >= h and a != alg.p - 1:
            raise ValueError("exponents at or above the inserted height must be p-1")
    _require_zero_chi_on(alg, ordering)
    return all(insertion_product(alg, ordering, exponents, ordering[k], pos).is_zero()
               for pos in range(len(ordering) + 1))
