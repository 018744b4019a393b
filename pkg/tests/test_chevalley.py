import copy
import itertools

import numpy as np
import pytest

from babyverma.chevalley import E, F, H, reduce_mod, structure_constants, verify_chevalley
from babyverma.rootsys import Root, build_root_system
from conftest import EUCLID

R = Root


def test_a2_simple_bracket():
    sc = structure_constants(build_root_system("A", 2))
    assert sc.bracket({E(R((1, 0))): 1}, {E(R((0, 1))): 1}) in ({E(R((1, 1))): 1},
                                                                {E(R((1, 1))): -1})


def test_b2_long_string_bracket():
    sys_ = build_root_system("B", 2)
    sc = structure_constants(sys_)
    a, b = R((0, 1)), R((1, 1))
    # r by brute force: b - a is a root, b - 2a is not
    roots = {(1, 0), (0, 1), (1, 1), (1, 2)}
    r = sum(1 for j in (1, 2) if tuple(np.subtract(b, np.multiply(j, a))) in roots)
    out = sc.bracket({E(a): 1}, {E(b): 1})
    assert set(out) == {E(R((1, 2)))} and abs(out[E(R((1, 2)))]) == r + 1 == 2


def euclid_pairing(kind, rank, root, i):
    """``<root, alpha_i^vee>`` from explicit vectors."""
    S = np.array(EUCLID[(kind, rank)])
    v, a = np.array(root) @ S, S[i - 1]
    return int(round(2 * (v @ a) / (a @ a)))


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_cartan_action(name):
    sys_ = build_root_system(name[0], int(name[1:]))
    sc = structure_constants(sys_)
    for a in sys_.positive_roots:
        for i in range(1, sys_.rank + 1):
            wt = euclid_pairing(name[0], int(name[1:]), a, i)
            assert sc.bracket({H(i): 1}, {E(a): 1}) == ({E(a): wt} if wt else {})
            assert sc.bracket({H(i): 1}, {F(a): 1}) == ({F(a): -wt} if wt else {})


def test_antisymmetry_and_p_power():
    sc = structure_constants(build_root_system("A", 2))
    for lab in sc.labels:
        assert sc.bracket({lab: 1}, {lab: 1}) == {}
    assert sc.p_power(H(1)) == {H(1): 1}
    assert sc.p_power(E(R((1, 0)))) == {} and sc.p_power(F(R((1, 1)))) == {}


def test_mixed_bracket_a2():
    sc = structure_constants(build_root_system("A", 2))
    out = sc.bracket({E(R((1, 0))): 1}, {F(R((1, 1))): 1})
    assert set(out) == {F(R((0, 1)))} and out[F(R((0, 1)))] != 0


def sl3_matrices():
    """The defining representation with e_{a1}=E12, e_{a2}=E23, e_{a1+a2}=E13."""
    def unit(i, j):
        m = np.zeros((3, 3), dtype=int)
        m[i, j] = 1
        return m
    return {(1, 0): unit(0, 1), (0, 1): unit(1, 2), (1, 1): unit(0, 2)}


def test_a2_magnitudes_match_matrix_realisation():
    sc = structure_constants(build_root_system("A", 2))
    mats = sl3_matrices()
    for a, b in itertools.permutations(mats, 2):
        comm = mats[a] @ mats[b] - mats[b] @ mats[a]
        got = sc.bracket({E(R(a)): 1}, {E(R(b)): 1})
        if not comm.any():
            assert got == {}
        else:
            s = tuple(np.add(a, b))
            # the matrix basis differs from the package basis by signs only
            assert np.abs(comm).sum() == abs(got[E(R(s))]) == 1


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "C2", "B3", "C3", "D4", "G2"])
def test_verify_passes(name):
    rep = verify_chevalley(structure_constants(build_root_system(name[0], int(name[1:]))))
    assert rep.passed, rep.counterexample
    assert rep.checks["jacobi"] > 0


def test_g2_has_constant_three():
    sc = structure_constants(build_root_system("G", 2))
    assert 3 in {abs(v) for v in sc.N.values()}


def test_coroot_brackets_match_rootsys():
    sys_ = build_root_system("B", 3)
    sc = structure_constants(sys_)
    for a in sys_.positive_roots:
        want = {H(i): k for i, k in enumerate(sys_.coroot_coeffs[a], start=1) if k}
        assert sc.bracket({E(a): 1}, {F(a): 1}) == want


def test_constants_nonzero_mod_good_primes():
    for name, p in [("B2", 3), ("G2", 5), ("G2", 7), ("A3", 3)]:
        sc = structure_constants(build_root_system(name[0], int(name[1:])))
        assert all(v % p for v in sc.N.values())


def test_corrupted_table_is_caught():
    sc = structure_constants(build_root_system("A", 2))
    bad = copy.deepcopy(sc)
    x, y = E(R((1, 0))), E(R((0, 1)))
    val = bad.table[(x, y)]
    bad.table[(x, y)] = {k: 2 * v for k, v in val.items()}
    bad.table[(y, x)] = {k: -2 * v for k, v in val.items()}
    rep = verify_chevalley(bad)
    assert not rep.passed
    assert "(" in rep.counterexample


def test_reduce_mod_and_csv():
    assert reduce_mod({H(1): 3, H(2): 4}, 3) == {H(2): 1}
    csv_text = structure_constants(build_root_system("A", 2)).to_csv()
    lines = csv_text.strip().splitlines()
    assert lines[0] == "alpha,beta,target,coefficient"
    assert any(line.startswith("a1,a2,a1+a2,") for line in lines)
