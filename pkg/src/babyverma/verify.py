"""Named check suites shared by the command line and the acceptance tests.

Each check returns a :class:`CheckResult`.  A failed result means a
mathematical statement was contradicted by computation.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

from .chevalley import structure_constants, verify_chevalley
from .envalg import (Character, algebra_for, check_lemma31, check_lemma34, check_lemma35,
                     reorder_constant)
from .gf import field
from .modrep import DEFAULT_SIZE_BOUND, ParabolicContext, r_by_straightening, verify_theorem37
from .rcrit import kw_sufficient, lemma42_constant, r_product, steinberg_weight
from .rootsys import (alpha_string, build_root_system, extended_alpha_string, is_closed_subset,
                      is_good_prime, parabolic_data, rho_I_pairing, rho_pairing)

STRING_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2"]
CHEVALLEY_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    count: int
    seconds: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"{status}  {self.name:<10} {self.count:>6} cases  {self.seconds:7.2f}s{extra}"


def _systems(types):
    for t in types:
        yield build_root_system(t[0], int(t[1:]))


def proper_subsets(rank: int):
    for r in range(rank):
        yield from itertools.combinations(range(1, rank + 1), r)


def _timed(name, fn, *args):
    t0 = time.perf_counter()
    passed, count, detail = fn(*args)
    return CheckResult(name, passed, count, time.perf_counter() - t0, detail)


# -- root system checks ---------------------------------------------------------------

G2_STRINGS = {
    # (alpha index, base) -> (plain members, extended members)
    (1, (3, 1)): ([(3, 1), (2, 1), (1, 1), (0, 1)],
                  [(3, 2), (3, 1), (2, 1), (1, 1), (0, 1)]),
    (2, (3, 2)): ([(3, 2), (3, 1)], [(3, 2), (3, 1)]),
    (2, (1, 1)): ([(1, 1), (1, 0)], [(3, 2), (3, 1), (2, 1), (1, 1), (1, 0)]),
}


def _prop21(types):
    count = 0
    for sys_ in _systems(types):
        for a in sys_.simple_roots:
            for b in sys_.positive_roots:
                if b == a:
                    continue
                plain = alpha_string(sys_, a, b)
                if plain.isolated or plain.base != b:
                    continue
                ext = extended_alpha_string(sys_, a, b)
                count += 1
                got_p = [tuple(r) for r in plain.members]
                got_e = [tuple(r) for r in ext.members]
                if sys_.kind == "G":
                    want = G2_STRINGS.get((sys_.simple_index(a), tuple(b)))
                    if want is None or (got_p, got_e) != tuple(map(list, want)):
                        return False, count, f"G2 string mismatch at {a.name()}, {b.name()}"
                    continue
                forms_p = [[b, b - a], [b, b - a, b - 2 * a]]
                if [list(map(tuple, f)) for f in forms_p].count(got_p) != 1:
                    return False, count, f"{sys_.name}: plain string {got_p}"
                twice = 2 * b - a
                if got_e != got_p and got_e != [tuple(twice)] + got_p:
                    return False, count, f"{sys_.name}: extended string {got_e}"
    return True, count, ""


def check_prop21(types=STRING_TYPES) -> CheckResult:
    return _timed("prop21", _prop21, types)


def _rho(types):
    count = 0
    for sys_ in _systems(types):
        for I in proper_subsets(sys_.rank):
            pd = parabolic_data(sys_, I)
            if not is_closed_subset(sys_, pd.complement):
                return False, count, f"{sys_.name} I={I}: complement not closed"
            for a in pd.phi_I_plus:
                count += 1
                if rho_pairing(sys_, a) != rho_I_pairing(sys_, pd, a):
                    return False, count, f"{sys_.name} I={I} at {a.name()}"
    return True, count, ""


def check_rho(types=CHEVALLEY_TYPES) -> CheckResult:
    return _timed("rho", _rho, types)


def _chevalley(types):
    count = 0
    for sys_ in _systems(types):
        rep = verify_chevalley(structure_constants(sys_))
        count += rep.checks["jacobi"]
        if not rep.passed:
            return False, count, f"{sys_.name}: {rep.counterexample}"
    return True, count, ""


def check_chevalley(types=CHEVALLEY_TYPES) -> CheckResult:
    return _timed("chevalley", _chevalley, types)


# -- enveloping algebra checks ------------------------------------------------------------


def _contexts(types, primes, first_only: bool = False):
    """``(system, constants, p)`` for every good prime, or only the first one."""
    for sys_ in _systems(types):
        sc = structure_constants(sys_)
        good = [p for p in primes if is_good_prime(sys_.kind, sys_.rank, p)]
        for p in good[:1] if first_only else good:
            yield sys_, sc, p


def _lemma31(types, primes):
    count = 0
    for sys_, sc, p in _contexts(types, primes):
        alg = algebra_for(sc, Character.zero(field(p), sys_.rank))
        for a in sys_.simple_roots:
            for b in sys_.positive_roots:
                if b == a or alpha_string(sys_, a, b).isolated:
                    continue
                count += 1
                if not check_lemma31(alg, a, b):
                    return False, count, f"{sys_.name} p={p} alpha={a.name()} beta={b.name()}"
    return True, count, ""


def check_lemma31_suite(types=("A2", "A3", "B2", "B3", "C3", "G2"), primes=(3, 5, 7)) -> CheckResult:
    return _timed("lemma31", _lemma31, types, primes)


def _lemma32(types, primes, perms, seed):
    rng = random.Random(seed)
    count = 0
    for sys_, sc, p in _contexts(types, primes, first_only=True):
        chi = Character.zero(field(p), sys_.rank)
        for I in proper_subsets(sys_.rank):
            pd = parabolic_data(sys_, I)
            alg = algebra_for(sc, chi, pd)
            for _ in range(perms):
                perm = list(range(pd.k))
                rng.shuffle(perm)
                count += 1
                if reorder_constant(alg, pd, perm) == 0:
                    return False, count, f"{sys_.name} p={p} I={I} perm={perm}"
    return True, count, ""


def check_lemma32_suite(types=("A2", "B2", "C2", "A3", "B3", "C3", "G2"), primes=(3, 7),
                        perms: int = 20, seed: int = 7) -> CheckResult:
    return _timed("lemma32", _lemma32, types, primes, perms, seed)


def _lemma34(types, primes, trials, seed):
    rng = random.Random(seed)
    count = 0
    for sys_, sc, p in _contexts(types, primes, first_only=True):
        chi = Character.zero(field(p), sys_.rank)
        alg = algebra_for(sc, chi)
        roots = list(sys_.positive_roots)
        for _ in range(trials):
            order = roots[:]
            rng.shuffle(order)
            k = rng.randrange(len(order))
            h = order[k].height
            exps = [p - 1 if r.height >= h else rng.randrange(p) for r in order]
            count += 1
            if not check_lemma34(alg, order, exps, k):
                return False, count, f"{sys_.name} p={p} order={[r.name() for r in order]} k={k}"
    return True, count, ""


def check_lemma34_suite(types=("A2", "B2", "C2", "G2"), primes=(3, 7), trials: int = 10,
                        seed: int = 11) -> CheckResult:
    return _timed("lemma34", _lemma34, types, primes, trials, seed)


def _lemma35(types, primes):
    count = 0
    for sys_, sc, p in _contexts(types, primes, first_only=True):
        chi = Character.zero(field(p), sys_.rank)
        for I in proper_subsets(sys_.rank):
            if not I:
                continue
            pd = parabolic_data(sys_, I)
            count += 1
            if not check_lemma35(algebra_for(sc, chi, pd), pd):
                return False, count, f"{sys_.name} p={p} I={I}"
    return True, count, ""


def check_lemma35_suite(types=("A2", "B2", "C2", "A3", "B3", "C3", "G2"),
                        primes=(3, 7)) -> CheckResult:
    return _timed("lemma35", _lemma35, types, primes)


# -- module checks -------------------------------------------------------------------------


def _first_prime(kind, rank, primes):
    return [p for p in primes if is_good_prime(kind, rank, p)]


def _thm37(types, primes, oracle):
    count = 0
    for t in types:
        kind, rank = t[0], int(t[1:])
        for p in _first_prime(kind, rank, primes):
            sys_ = build_root_system(kind, rank)
            for I in proper_subsets(rank):
                ctx = ParabolicContext(sys_, p, I=I)
                rep = verify_theorem37(ctx, oracle=oracle)
                count += len(rep.rows)
                if not rep.passed:
                    return False, count, f"{ctx.describe()}: {rep.mismatches[:2]} ratios={rep.ratios}"
    return True, count, ""


def check_thm37(types=("A1", "A2"), primes=(3,), oracle: bool = True) -> CheckResult:
    return _timed("thm37", _thm37, types, primes, oracle)


def _lemma41(types, primes):
    count = 0
    for t in types:
        kind, rank = t[0], int(t[1:])
        sys_ = build_root_system(kind, rank)
        for p in _first_prime(kind, rank, primes):
            fld = field(p)
            for I in proper_subsets(rank):
                if not I:
                    continue
                pd = parabolic_data(sys_, I)
                for a in pd.phi_I_plus:
                    chi = Character(fld, (0,) * rank, [(a, 1)])
                    ctx = ParabolicContext(sys_, p, I=I, chi=chi)
                    ctx_s = ParabolicContext(sys_, p, I=I, chi=chi.semisimple_part)
                    for x in ctx.weights():
                        count += 1
                        if r_by_straightening(ctx, x) != r_by_straightening(ctx_s, x):
                            return False, count, f"{ctx.describe()} at {x}"
    return True, count, ""


def check_lemma41(types=("A2", "B2"), primes=(3,)) -> CheckResult:
    return _timed("lemma41", _lemma41, types, primes)


def _lemma42(types, primes):
    count = 0
    for t in types:
        kind, rank = t[0], int(t[1:])
        sys_ = build_root_system(kind, rank)
        for p in _first_prime(kind, rank, primes):
            fld = field(p)
            weights = list(itertools.product(range(p), repeat=rank))
            for I in proper_subsets(rank):
                pd = parabolic_data(sys_, I)
                count += len(weights)
                try:
                    lemma42_constant(sys_, pd, fld, weights)
                except AssertionError as exc:
                    return False, count, f"{sys_.name} p={p} I={I}: {exc}"
    return True, count, ""


def check_lemma42(types=("A1", "A2", "B2", "A3", "G2"), primes=(3, 5, 7)) -> CheckResult:
    return _timed("lemma42", _lemma42, types, primes)


def kw_character(sys_, pd, fld):
    """A semisimple character over ``fld`` meeting the Kac-Weisfeiler condition.

    Each ``chi(h_i)`` is either zero (for simple roots in ``I``) or a fixed
    ``c`` whose ``p``-th power lies in the image of ``x^p - x``, so that
    compatible weights exist.
    """
    p = fld.p
    image = {fld.sub(fld.pow(x, p), x) for x in fld.elements()}
    choices = [c for c in fld.elements() if c and fld.pow(c, p) in image]
    for c in choices:
        chi = Character(fld, tuple(0 if i in pd.I else c for i in range(1, sys_.rank + 1)))
        if kw_sufficient(sys_, pd, chi):
            return chi
    return None


def _thm45(types, p, e):
    count = 0
    fld = field(p, e)
    for t in types:
        kind, rank = t[0], int(t[1:])
        sys_ = build_root_system(kind, rank)
        for I in proper_subsets(rank):
            pd = parabolic_data(sys_, I)
            chi = kw_character(sys_, pd, fld)
            if chi is None:
                continue
            ctx = ParabolicContext(sys_, p, e, I, chi)
            rep = verify_theorem37(ctx)
            for row in rep.rows:
                count += 1
                if not row.formula_simple or row.oracle_simple is False:
                    return False, count, f"{ctx.describe()} at {row.x}"
            if not rep.passed:
                return False, count, f"{ctx.describe()}: {rep.mismatches[:2]}"
    return True, count, ""


def check_thm45(types=("A1", "A2"), p: int = 3, e: int = 2) -> CheckResult:
    return _timed("thm45", _thm45, types, p, e)


def _steinberg(types, primes, oracle_bound):
    count = 0
    for t in types:
        kind, rank = t[0], int(t[1:])
        sys_ = build_root_system(kind, rank)
        for p in _first_prime(kind, rank, primes):
            x = steinberg_weight(sys_, p)
            pd = parabolic_data(sys_, ())
            count += 1
            if not r_product(sys_, pd, field(p), x).simple:
                return False, count, f"{sys_.name} p={p}: formula says not simple"
            if p ** pd.k <= oracle_bound:
                ctx = ParabolicContext(sys_, p, size_bound=oracle_bound)
                rep = verify_theorem37(ctx, [x])
                if not rep.passed or not rep.rows[0].oracle_simple:
                    return False, count, f"{sys_.name} p={p}: oracle disagrees"
    return True, count, ""


def check_steinberg(types=("A1", "A2", "B2", "C2", "A3", "G2"), primes=(3, 5, 7),
                    oracle_bound: int = DEFAULT_SIZE_BOUND) -> CheckResult:
    return _timed("steinberg", _steinberg, types, primes, oracle_bound)


CHECKS = {
    "prop21": check_prop21,
    "rho": check_rho,
    "chevalley": check_chevalley,
    "lemma31": check_lemma31_suite,
    "lemma32": check_lemma32_suite,
    "lemma34": check_lemma34_suite,
    "lemma35": check_lemma35_suite,
    "thm37": check_thm37,
    "lemma41": check_lemma41,
    "lemma42": check_lemma42,
    "thm45": check_thm45,
    "steinberg": check_steinberg,
}
