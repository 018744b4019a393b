"""Chevalley basis structure constants.

Signs are fixed by declaring ``N(a, b) = +(r+1)`` on every extraspecial
pair ``(a, b)`` (``a`` the first positive root in the fixed root order with
``a + b = xi``); all other constants follow from Carter's relations.

The basis is ``E(a), F(a)`` for positive roots ``a`` and ``H(i)`` for the
simple coroots.  With ``e_{-a}`` the Carter basis vector of ``-a`` we take
``F(a) = e_{-a}``, so that ``[E(a), F(a)] = h_a`` is the coroot.  In a
Chevalley basis normalised by ``[e_a, e_{-a}] = -h_a`` this is the vector
``-e_{-a}``.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .rootsys import Root, RootSystem


class BasisLabel(NamedTuple):
    kind: str  # "E", "F" or "H"
    key: object  # a Root for E/F, a 1-based index for H

    def __str__(self):
        if self.kind == "H":
            return f"h[{self.key}]"
        return f"{self.kind.lower()}[{Root(self.key).name()}]"


def E(root) -> BasisLabel:
    return BasisLabel("E", Root(root))


def F(root) -> BasisLabel:
    return BasisLabel("F", Root(root))


def H(i: int) -> BasisLabel:
    return BasisLabel("H", int(i))


def _full_to_label(v: tuple) -> tuple[BasisLabel, int]:
    """Map a root of the full system to (label, sign) in the E/F basis."""
    if all(c >= 0 for c in v):
        return E(v), 1
    return F(tuple(-c for c in v)), 1


def _carter_constants(sys_: RootSystem) -> dict:
    """``N(a, b)`` for all roots ``a, b`` with ``a + b`` a root."""
    pos = sys_.positive_roots
    order = {r: i for i, r in enumerate(pos)}
    norm = {}
    for r in sys_.roots:
        norm[r] = Fraction(sys_.inner2(r, r), 2)

    def add(a, b):
        return Root(x + y for x, y in zip(a, b))

    def neg(a):
        return Root(-x for x in a)

    def is_root(v):
        return sys_.is_root(v)

    def r_value(a, b):
        r = 0
        while is_root(Root(y - (r + 1) * x for x, y in zip(a, b))):
            r += 1
        return r

    P: dict = {}

    def N(a, b):
        # general constant, reduced to positive pairs via Carter's relations
        s = add(a, b)
        if not any(s) or not is_root(s):
            return Fraction(0)
        ap, bp = a.is_positive(), b.is_positive()
        if ap and bp:
            return P[(a, b)]
        if not ap and not bp:
            return -P[(neg(a), neg(b))]
        if not ap:
            return -N(b, a)
        # a positive, b negative; triple (a, b, -s) sums to zero
        if s.is_positive():
            # N(a,b)/(s,s) = N(b,-s)/(a,a), both b and -s negative
            return -norm[s] / norm[a] * P[(neg(b), s)]
        # N(a,b)/(s,s) = N(-s,a)/(b,b), both -s and a positive
        return norm[s] / norm[b] * P[(neg(s), a)]

    for xi in pos:
        if xi.height == 1:
            continue
        pairs = [(a, xi - a) for a in pos if sys_.is_positive_root(xi - a)]
        pairs.sort(key=lambda ab: order[ab[0]])
        gamma, delta = pairs[0]
        P[(gamma, delta)] = Fraction(r_value(gamma, delta) + 1)
        P[(delta, gamma)] = -P[(gamma, delta)]
        for a, b in pairs[1:]:
            if (a, b) in P:
                continue
            total = Fraction(0)
            bg = b - gamma
            if any(bg) and is_root(bg):
                total += N(b, neg(gamma)) * N(a, neg(delta)) / norm[bg]
            ag = a - gamma
            if any(ag) and is_root(ag):
                total += N(neg(gamma), a) * N(b, neg(delta)) / norm[ag]
            # N(-g,-d) = -N(g,d)
            val = norm[xi] * total / P[(gamma, delta)]
            P[(a, b)] = val
            P[(b, a)] = -val
    out = {}
    for a in sys_.roots:
        for b in sys_.roots:
            s = add(a, b)
            if any(s) and is_root(s):
                v = N(a, b)
                if v.denominator != 1:
                    raise AssertionError(f"non-integral structure constant N({a},{b})")
                out[(a, b)] = int(v)
    return out


@dataclass
class StructureConstants:
    """Integer bracket table on the basis ``E(a), F(a), H(i)``.

    ``table[(x, y)]`` is a dict ``label -> int`` for ``[x, y]``; zero
    brackets are omitted.
    """

    system: RootSystem
    labels: tuple[BasisLabel, ...]
    table: dict
    N: dict = field(repr=False, default_factory=dict)

    def bracket_labels(self, x: BasisLabel, y: BasisLabel) -> dict:
        return self.table.get((x, y), {})

    def bracket(self, x: dict, y: dict) -> dict:
        """Bilinear bracket of integer combinations ``{label: coeff}``."""
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, cc in self.table.get((a, b), {}).items():
                    out[c] = out.get(c, 0) + ca * cb * cc
        return {k: v for k, v in out.items() if v}

    def p_power(self, label: BasisLabel) -> dict:
        """The restricted p-th power of a basis vector."""
        if label.kind == "H":
            return {label: 1}
        return {}

    def to_csv(self) -> str:
        """Rows ``alpha, beta, target, coefficient`` for all root-vector brackets."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["alpha", "beta", "target", "coefficient"])
        for (a, b), v in sorted(self.N.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            w.writerow([Root(a).name(), Root(b).name(), Root(a + b).name(), v])
        return buf.getvalue()


def structure_constants(sys_: RootSystem) -> StructureConstants:
    N = _carter_constants(sys_)
    pos = sys_.positive_roots
    labels = tuple([E(a) for a in pos] + [F(a) for a in pos]
                   + [H(i) for i in range(1, sys_.rank + 1)])
    # Carter basis e_v for every root v; F(a) = e_{-a}
    def as_root(label):
        return label.key if label.kind == "E" else -Root(label.key)

    table: dict = {}

    def put(x, y, val):
        if val:
            table[(x, y)] = val
            table[(y, x)] = {k: -c for k, c in val.items()}

    for x, y in itertools.combinations(labels, 2):
        if x.kind == "H" and y.kind == "H":
            continue
        if x.kind == "H" or y.kind == "H":
            h, v = (x, y) if x.kind == "H" else (y, x)
            wt = sys_.pairing(as_root(v), h.key)
            val = {v: wt} if wt else {}
            if x.kind == "H":
                put(x, y, val)
            else:
                put(y, x, val)
            continue
        a, b = as_root(x), as_root(y)
        s = a + b
        if not any(s):
            # [e_a, e_{-a}] = h_a for a positive
            pa = a if a.is_positive() else b
            sign = 1 if a.is_positive() else -1
            k = sys_.coroot_coeffs[tuple(pa)]
            put(x, y, {H(i): sign * ki for i, ki in enumerate(k, start=1) if ki})
        elif sys_.is_root(s):
            target, _ = _full_to_label(tuple(s))
            put(x, y, {target: N[(a, b)]})
    return StructureConstants(sys_, labels, table, N)


def reduce_mod(combo: dict, p: int) -> dict:
    return {k: v % p for k, v in combo.items() if v % p}


@dataclass
class ChevalleyReport:
    passed: bool
    checks: dict
    counterexample: str | None = None


def verify_chevalley(sc: StructureConstants) -> ChevalleyReport:
    """Antisymmetry, Jacobi on all basis triples, the ``|N| = r+1`` law and coroots."""
    sys_ = sc.system
    labels = sc.labels
    checks = {"antisymmetry": 0, "jacobi": 0, "r_plus_one": 0, "coroots": 0}

    def fail(name, what):
        return ChevalleyReport(False, checks, f"{name}: {what}")

    for x in labels:
        if sc.bracket_labels(x, x):
            return fail("antisymmetry", f"[{x}, {x}] != 0")
        for y in labels:
            xy = sc.bracket_labels(x, y)
            yx = sc.bracket_labels(y, x)
            if {k: -v for k, v in xy.items()} != yx:
                return fail("antisymmetry", f"[{x}, {y}] != -[{y}, {x}]")
            checks["antisymmetry"] += 1
    for x, y, z in itertools.combinations(labels, 3):
        acc: dict = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for k, v in sc.bracket({a: 1}, sc.bracket({b: 1}, {c: 1})).items():
                acc[k] = acc.get(k, 0) + v
        if any(acc.values()):
            return fail("jacobi", f"Jacobi fails on ({x}, {y}, {z})")
        checks["jacobi"] += 1
    for (a, b), v in sc.N.items():
        r = 0
        while sys_.is_root(b - (r + 1) * a):
            r += 1
        if abs(v) != r + 1:
            return fail("r_plus_one", f"|N({a.name()}, {b.name()})| = {abs(v)} but r+1 = {r + 1}")
        checks["r_plus_one"] += 1
    for a in sys_.positive_roots:
        got = sc.bracket_labels(E(a), F(a))
        want = {H(i): k for i, k in enumerate(sys_.coroot_coeffs[a], start=1) if k}
        if got != want:
            return fail("coroots", f"[e_{a.name()}, f_{a.name()}] = {got}")
        checks["coroots"] += 1
    return ChevalleyReport(True, checks)
