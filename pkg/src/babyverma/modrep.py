"""Explicit induced modules over GF(p^e) and the scalar R computed from them.

A :class:`ParabolicContext` fixes the Lie algebra, the prime, the field,
the Levi subset ``I`` and the character.  From it we build

* the Levi baby Verma module and its simple head ``L`` (``levi_simple``),
* the induced module ``Z = u_chi(g) (x) L`` (``induce``),
* the scalar ``R`` for which ``e-product * f-product . v = R v``
  (``r_by_straightening``).

The action of a generator on ``f^l (x) v`` is found by straightening
``x f^l`` in the reduced enveloping algebra, dropping terms that end in a
root vector of the nilradical, and letting the Levi part act on ``L``.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field as dc_field
from itertools import product

import numpy as np

from . import meataxe
from .chevalley import BasisLabel, E, F, H, StructureConstants, structure_constants
from .envalg import Character, HypothesisError, LemmaViolation, algebra_for
from .gf import GF, field
from .rcrit import check_compatible, compatible_weights, r_product
from .rootsys import (ConfigurationError, ParabolicData, RootSystem, build_root_system,
                      check_good_prime, parabolic_data)

log = logging.getLogger(__name__)

DEFAULT_SIZE_BOUND = 2048


class SizeBoundError(RuntimeError):
    """A module would exceed the configured dimension bound."""


@dataclass
class ModuleRep:
    field: GF
    action: dict  # BasisLabel -> matrix acting on column vectors
    basis_labels: list  # (complement exponents, Levi index)
    highest_vector: int

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def matrices(self, labels=None) -> list:
        labels = self.action if labels is None else labels
        return [self.action[x] for x in labels]


class ParabolicContext:
    """Everything fixed while the weight varies."""

    def __init__(self, sys_: RootSystem, p: int, e: int = 1, I=(), chi: Character | None = None,
                 sc: StructureConstants | None = None, size_bound: int = DEFAULT_SIZE_BOUND,
                 seed: int = meataxe.DEFAULT_SEED):
        check_good_prime(sys_.kind, sys_.rank, p)
        self.system = sys_
        self.field = fld = field(p, e)
        self.p = p
        self.pd: ParabolicData = parabolic_data(sys_, I)
        if chi is None:
            chi = Character.zero(fld, sys_.rank)
        if chi.field != fld:
            raise ConfigurationError("character lives over a different field")
        chi.validate(sys_, self.pd)
        self.chi = chi
        self.sc = sc if sc is not None else structure_constants(sys_)
        self.alg = algebra_for(self.sc, chi, self.pd)
        self.size_bound = size_bound
        self.seed = seed
        k, s = self.pd.k, self.pd.s
        t = k + s
        r = sys_.rank
        self._slices = {
            "f_comp": slice(0, k), "f_I": slice(k, t), "h": slice(t, t + r),
            "e_comp": slice(t + r, t + r + k), "e_I": slice(t + r + k, 2 * t + r),
        }
        self._symbolic: dict = {}

    @classmethod
    def build(cls, kind: str, rank: int, p: int, e: int = 1, I=(), chi=None, **kw):
        return cls(build_root_system(kind, rank), p, e, I, chi, **kw)

    def with_field(self, e: int) -> "ParabolicContext":
        fld = field(self.p, e)
        chi = Character(fld, self.chi.chi_h, self.chi.chi_f)
        return ParabolicContext(self.system, self.p, e, self.pd.I, chi, self.sc,
                                self.size_bound, self.seed)

    @property
    def levi_labels(self) -> list[BasisLabel]:
        pos = self.pd.phi_I_plus
        return ([F(a) for a in pos] + [H(i) for i in range(1, self.system.rank + 1)]
                + [E(a) for a in pos])

    @property
    def labels(self) -> list[BasisLabel]:
        pos = self.system.positive_roots
        return ([F(a) for a in pos] + [H(i) for i in range(1, self.system.rank + 1)]
                + [E(a) for a in pos])

    def describe(self) -> str:
        fe = f"GF({self.p}^{self.field.e})" if self.field.e > 1 else f"GF({self.p})"
        return f"{self.system.name} {fe} I={self.pd.label()} chi[{self.chi.spec()}]"

    def weights(self) -> list[tuple]:
        return compatible_weights(self.field, self.chi)

    # -- symbolic action ------------------------------------------------------

    def _mono(self, f_comp=(), f_I=()) -> tuple:
        m = [0] * self.alg.ngens
        m[self._slices["f_comp"]] = f_comp or [0] * self.pd.k
        m[self._slices["f_I"]] = f_I or [0] * self.pd.s
        return tuple(m)

    def symbolic_action(self, label: BasisLabel, f_comp: tuple) -> list:
        """Terms ``(f_comp', y, c)`` of ``label * f^f_comp``, with ``y`` in u_chi(p_I).

        ``y = (f_I, h, e_I)`` exponent triples; terms containing a nilradical
        root vector are dropped.  Cached per context, so sweeps over the
        weight reuse the straightening work.
        """
        key = (label, f_comp)
        hit = self._symbolic.get(key)
        if hit is not None:
            return hit
        j = self.alg.index[label]
        sl = self._slices
        out = []
        for mono, c in self.alg._gmul(j, self._mono(f_comp)).items():
            if any(mono[sl["e_comp"]]):
                continue
            out.append((mono[sl["f_comp"]], (mono[sl["f_I"]], mono[sl["h"]], mono[sl["e_I"]]), c))
        self._symbolic[key] = out
        return out


def _h_scalar(fld: GF, x, h_exps) -> int:
    out = 1
    for xi, a in zip(x, h_exps):
        if a:
            out = fld.mul(out, fld.pow(xi, a))
    return out


def levi_baby_verma(ctx: ParabolicContext, x) -> ModuleRep:
    """``u_chi(levi) (x) F v`` with ``h`` acting on ``v`` by ``x`` and ``e`` by zero."""
    fld = ctx.field
    check_compatible(fld, ctx.chi, x)
    s = ctx.pd.s
    p = ctx.p
    monos = list(product(range(p), repeat=s))
    pos = {m: i for i, m in enumerate(monos)}
    n = len(monos)
    alg = ctx.alg
    sl = ctx._slices
    action = {}
    for lab in ctx.levi_labels:
        j = alg.index[lab]
        mat = np.zeros((n, n), dtype=np.int64)
        for col, m in enumerate(monos):
            for mono, c in alg._gmul(j, ctx._mono(f_I=m)).items():
                if any(mono[sl["f_comp"]]):
                    raise LemmaViolation("Levi product left the Levi subalgebra")
                if any(mono[sl["e_comp"]]) or any(mono[sl["e_I"]]):
                    continue
                val = fld.mul(c, _h_scalar(fld, x, mono[sl["h"]]))
                row = pos[mono[sl["f_I"]]]
                mat[row, col] = fld.add(int(mat[row, col]), val)
        action[lab] = mat
    return ModuleRep(fld, action, [((), i) for i in range(n)], 0)


def quotient(M: ModuleRep, sub: np.ndarray) -> ModuleRep:
    """``M / span(sub)``, keeping the highest vector as a basis vector."""
    fld = M.field
    n = M.dim
    order = [c for c in range(n) if c != M.highest_vector] + [M.highest_vector]
    R, piv = fld.rref(sub, col_order=order)
    if M.highest_vector in piv:
        raise LemmaViolation("proper submodule contains the generating vector")
    keep = [c for c in range(n) if c not in set(piv)]
    action = {}
    for lab, G in M.action.items():
        Q = G[np.ix_(keep, keep)]
        if piv:
            corr = fld.matmul(R[:, keep].T, G[np.ix_(piv, keep)])
            Q = fld.vsub(Q, corr)
        action[lab] = Q
    labels = [M.basis_labels[c] for c in keep]
    return ModuleRep(fld, action, labels, keep.index(M.highest_vector))


def head(ctx: ParabolicContext, M: ModuleRep) -> tuple[ModuleRep, meataxe.SimplicityWitness]:
    """Quotient ``M`` by proper submodules until it is simple."""
    while True:
        w = meataxe.is_simple(M.field, M.matrices(), seed=ctx.seed)
        if w.simple:
            return M, w
        M = quotient(M, w.proper_submodule_basis)


def levi_simple(ctx: ParabolicContext, x) -> ModuleRep:
    """The simple module ``L`` generated by a maximal vector of weight ``x``.

    Absolute simplicity is checked; when the commutant is larger than the
    base field the construction is repeated over GF(p^2).
    """
    V = levi_baby_verma(ctx, x)
    if V.dim == 1:
        return V
    L, w = head(ctx, V)
    endo = w.endomorphism_dim
    if endo is None or L.dim <= 40:
        mod = meataxe.MatrixModule(L.field, L.matrices())
        v = np.zeros(L.dim, dtype=np.int64)
        v[L.highest_vector] = 1
        endo = meataxe.commutant_dim(mod, v)
    if endo != 1:
        if ctx.field.e == 1:
            log.info("head not absolutely simple over GF(%d); retrying over GF(%d^2)", ctx.p, ctx.p)
            return levi_simple(ctx.with_field(2), x)
        raise LemmaViolation(f"Levi head has endomorphism dimension {endo}")
    return L


def _matrix_for(L: ModuleRep, ctx: ParabolicContext, y, x, cache: dict) -> np.ndarray:
    """Action on ``L`` of the monomial ``y = (f_I, h, e_I)``."""
    hit = cache.get(y)
    if hit is not None:
        return hit
    fld = L.field
    f_I, h, e_I = y
    pos = ctx.pd.phi_I_plus
    mat = fld.identity(L.dim)
    for i, a in enumerate(h, start=1):
        if a:
            mat = fld.matmul(mat, fld.matpow(L.action[H(i)], a))
    factors = [(F(a), k) for a, k in zip(pos, f_I)] + [(E(a), k) for a, k in zip(pos, e_I)]
    left = fld.identity(L.dim)
    for lab, k in factors[:len(pos)]:
        for _ in range(k):
            left = fld.matmul(left, L.action[lab])
    right = fld.identity(L.dim)
    for lab, k in factors[len(pos):]:
        for _ in range(k):
            right = fld.matmul(right, L.action[lab])
    out = fld.matmul(fld.matmul(left, mat), right)
    cache[y] = out
    return out


class InducedModule(ModuleRep):
    """``Z`` with its generator matrices filled in on demand."""

    def __init__(self, ctx: ParabolicContext, L: ModuleRep, x):
        fld = L.field
        self.ctx = ctx
        self.L = L
        self.x = tuple(x)
        self.monos = list(product(range(ctx.p), repeat=ctx.pd.k))
        self.mono_index = {m: i for i, m in enumerate(self.monos)}
        labels = [(m, j) for m in self.monos for j in range(L.dim)]
        super().__init__(fld, _LazyActions(self), labels, L.highest_vector)
        self._ycache: dict = {}

    def index(self, mono, j) -> int:
        return self.mono_index[tuple(mono)] * self.L.dim + j

    def _build(self, label: BasisLabel) -> np.ndarray:
        fld = self.field
        d = self.L.dim
        n = self.dim
        out = np.zeros((n, n), dtype=np.int64)
        for col, m in enumerate(self.monos):
            for m2, y, c in self.ctx.symbolic_action(label, m):
                blk = _matrix_for(self.L, self.ctx, y, self.x, self._ycache)
                r0 = self.mono_index[m2] * d
                c0 = col * d
                cur = out[r0:r0 + d, c0:c0 + d]
                out[r0:r0 + d, c0:c0 + d] = fld.vadd(cur, fld.vmul(blk, c))
        return out

    def apply(self, label: BasisLabel, vec: np.ndarray) -> np.ndarray:
        return self.field.matmul(self.action[label], vec[:, None])[:, 0]


class _LazyActions(dict):
    def __init__(self, Z: InducedModule):
        super().__init__()
        self._Z = Z

    def __missing__(self, label):
        mat = self._Z._build(label)
        self[label] = mat
        return mat

    def __iter__(self):
        return iter(self._Z.ctx.labels)

    def keys(self):
        return list(self._Z.ctx.labels)

    def items(self):
        return [(lab, self[lab]) for lab in self._Z.ctx.labels]

    def __len__(self):
        return len(self._Z.ctx.labels)

    def __contains__(self, label):
        return label in set(self._Z.ctx.labels)


def induce(ctx: ParabolicContext, L: ModuleRep, x) -> InducedModule:
    n = ctx.p ** ctx.pd.k * L.dim
    if n > ctx.size_bound:
        raise SizeBoundError(f"induced module has dimension {n} > bound {ctx.size_bound}")
    return InducedModule(ctx, L, x)


def _sparse_apply(ctx: ParabolicContext, L: ModuleRep, x, label, vec: dict, cache) -> dict:
    """Apply a generator to ``{(mono, j): c}`` without building matrices."""
    fld = L.field
    out: dict = {}
    by_mono: dict = {}
    for (m, j), c in vec.items():
        by_mono.setdefault(m, np.zeros(L.dim, dtype=np.int64))[j] = c
    for m, v in by_mono.items():
        for m2, y, c in ctx.symbolic_action(label, m):
            img = fld.matmul(_matrix_for(L, ctx, y, x, cache), v[:, None])[:, 0]
            img = fld.vmul(img, c)
            for j in np.nonzero(img)[0]:
                key = (m2, int(j))
                out[key] = fld.add(out.get(key, 0), int(img[j]))
    return {k: c for k, c in out.items() if c}


def r_by_straightening(ctx: ParabolicContext, x, L: ModuleRep | None = None) -> int:
    """The scalar ``R`` with ``e_b1^(p-1)...e_bk^(p-1) f_b1^(p-1)...f_bk^(p-1) v = R v``.

    Raises :class:`LemmaViolation` if the result is not a multiple of ``v``.
    """
    if L is None:
        L = levi_simple(ctx, x)
    p = ctx.p
    k = ctx.pd.k
    top = (p - 1,) * k
    vec = {(top, L.highest_vector): 1}
    cache: dict = {}
    for beta in reversed(ctx.pd.complement):
        for _ in range(p - 1):
            vec = _sparse_apply(ctx, L, x, E(beta), vec, cache)
    zero = ((0,) * k, L.highest_vector)
    extra = [key for key in vec if key != zero]
    if extra:
        raise LemmaViolation(f"e-product image is not a multiple of v: {len(extra)} stray terms")
    return vec.get(zero, 0)


def spin_recovers_generator(Z: InducedModule) -> bool:
    """Whether ``f-product (x) v`` generates all of ``Z``."""
    top = (Z.ctx.p - 1,) * Z.ctx.pd.k
    v = np.zeros(Z.dim, dtype=np.int64)
    v[Z.index(top, Z.L.highest_vector)] = 1
    mod = meataxe.MatrixModule(Z.field, Z.matrices())
    return mod.spin(v).shape[0] == Z.dim


# -- checks -------------------------------------------------------------------------


def check_representation(ctx: ParabolicContext, M: ModuleRep, labels=None) -> str | None:
    """First bracket relation violated by ``M``, or ``None``."""
    fld = M.field
    labels = list(M.action) if labels is None else list(labels)
    mats = {lab: M.action[lab] for lab in labels}
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            lhs = fld.vsub(fld.matmul(mats[a], mats[b]), fld.matmul(mats[b], mats[a]))
            rhs = np.zeros_like(lhs)
            for lab, c in ctx.sc.bracket_labels(a, b).items():
                if c % ctx.p:
                    if lab not in mats:
                        mats[lab] = M.action[lab]
                    rhs = fld.vadd(rhs, fld.vmul(mats[lab], fld.from_int(c)))
            if np.any(lhs != rhs):
                return f"[{a}, {b}]"
    return None


def check_reduced(ctx: ParabolicContext, M: ModuleRep, labels=None) -> str | None:
    """First ``x^p - x^[p] = chi(x)^p`` relation violated by ``M``, or ``None``."""
    fld = M.field
    p = ctx.p
    labels = list(M.action) if labels is None else list(labels)
    eye = fld.identity(M.dim)
    for lab in labels:
        A = M.action[lab]
        lhs = fld.matpow(A, p)
        if lab.kind == "H":
            lhs = fld.vsub(lhs, A)
            want = fld.pow(ctx.chi.h(lab.key), p)
        elif lab.kind == "F":
            want = fld.pow(ctx.chi.f(lab.key), p)
        else:
            want = 0
        if np.any(lhs != fld.vmul(eye, want)):
            return str(lab)
    return None


# -- sweeps ------------------------------------------------------------------------


@dataclass
class SweepRow:
    x: tuple
    formula_simple: bool
    r_product: int
    oracle_simple: bool | None = None
    r_straightened: int | None = None
    dim: int | None = None
    note: str = ""

    def ratio(self, fld: GF) -> int | None:
        if self.r_straightened is None or self.r_product == 0:
            return None
        return fld.div(self.r_straightened, self.r_product)


def evaluate_weight(ctx: ParabolicContext, x, oracle: bool = True,
                    straighten: bool = True) -> SweepRow:
    fld = ctx.field
    check_compatible(fld, ctx.chi, x)
    verdict = r_product(ctx.system, ctx.pd, fld, x)
    row = SweepRow(tuple(x), verdict.simple, verdict.r_value)
    if not (oracle or straighten):
        return row
    L = levi_simple(ctx, x)
    if straighten:
        row.r_straightened = r_by_straightening(ctx, x, L)
    if oracle:
        n = ctx.p ** ctx.pd.k * L.dim
        row.dim = n
        if n > ctx.size_bound:
            row.note = f"oracle skipped: dim {n} > bound {ctx.size_bound}"
        else:
            Z = induce(ctx, L, x)
            w = meataxe.is_simple(Z.field, Z.matrices(), seed=ctx.seed)
            row.oracle_simple = w.simple
    return row


@dataclass
class Theorem37Report:
    context: str
    rows: list = dc_field(default_factory=list)
    mismatches: list = dc_field(default_factory=list)
    ratios: set = dc_field(default_factory=set)

    @property
    def passed(self) -> bool:
        return not self.mismatches and len(self.ratios) <= 1 and 0 not in self.ratios


def verify_theorem37(ctx: ParabolicContext, weights=None, oracle: bool = True,
                     straighten: bool = True) -> Theorem37Report:
    """Compare the oracle, the straightened R and the product formula per weight."""
    weights = ctx.weights() if weights is None else weights
    rep = Theorem37Report(ctx.describe())
    fld = ctx.field
    for x in weights:
        row = evaluate_weight(ctx, x, oracle, straighten)
        rep.rows.append(row)
        verdicts = {"formula": row.formula_simple}
        if row.oracle_simple is not None:
            verdicts["oracle"] = row.oracle_simple
        if row.r_straightened is not None:
            verdicts["straightened"] = row.r_straightened != 0
        if len(set(verdicts.values())) > 1:
            rep.mismatches.append((tuple(x), verdicts))
        r = row.ratio(fld)
        if r is not None:
            rep.ratios.add(r)
    return rep


CSV_FIELDS = ["type", "rank", "p", "e", "I", "chi", "lambda", "formula_verdict",
              "oracle_verdict", "R_value", "ratio_to_product"]


def _verdict(flag) -> str:
    if flag is None:
        return ""
    return "simple" if flag else "not_simple"


def sweep_csv(ctx: ParabolicContext, rows) -> str:
    fld = ctx.field
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for row in rows:
        ratio = row.ratio(fld)
        w.writerow([
            ctx.system.kind, ctx.system.rank, ctx.p, fld.e,
            " ".join(str(i) for i in ctx.pd.I), ctx.chi.spec(),
            " ".join(fld.format(v) for v in row.x),
            _verdict(row.formula_simple), _verdict(row.oracle_simple),
            "" if row.r_straightened is None else fld.format(row.r_straightened),
            "" if ratio is None else fld.format(ratio),
        ])
    return buf.getvalue()


def dump_matrix(fld: GF, mat: np.ndarray, name: str = "") -> str:
    """Coordinate text format: header, size line, then ``row col value`` (1-based)."""
    lines = [f"%babyverma matrix {name} over GF({fld.p}^{fld.e})".rstrip(),
             f"{mat.shape[0]} {mat.shape[1]} {int(np.count_nonzero(mat))}"]
    for i, j in zip(*np.nonzero(mat)):
        lines.append(f"{i + 1} {j + 1} {fld.format(int(mat[i, j]))}")
    return "\n".join(lines) + "\n"


def dump_module(M: ModuleRep) -> str:
    return "".join(dump_matrix(M.field, M.action[lab], str(lab)) for lab in M.action)
