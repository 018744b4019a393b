import json

import pytest

from babyverma.rootsys import (ConfigurationError, Root, RootError, alpha_order, alpha_string,
                               build_root_system, extended_alpha_string, is_closed_subset,
                               parabolic_data, rho_I_pairing, rho_pairing, root_system_from_json)
from conftest import euclid_coroot, euclid_roots

R = Root


def test_g2_positive_roots():
    g2 = build_root_system("G", 2)
    assert set(g2.positive_roots) == {R((1, 0)), R((0, 1)), R((1, 1)), R((2, 1)),
                                      R((3, 1)), R((3, 2))}


def test_a1_and_b2_positive_roots():
    assert build_root_system("A", 1).positive_roots == (R((1,)),)
    assert set(build_root_system("B", 2).positive_roots) == {R((1, 0)), R((0, 1)), R((1, 1)),
                                                             R((1, 2))}


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "C2", "B3", "C3", "G2"])
def test_roots_and_coroots_match_euclidean_realisation(name):
    sys_ = build_root_system(name[0], int(name[1:]))
    kind, rank = name[0], int(name[1:])
    assert sorted(map(tuple, sys_.positive_roots)) == euclid_roots(kind, rank)
    for a in sys_.positive_roots:
        assert tuple(sys_.coroot_coeffs[a]) == euclid_coroot(kind, rank, a)


@pytest.mark.parametrize("name,count", [("A4", 10), ("B4", 16), ("C4", 16), ("D4", 12),
                                        ("F4", 24), ("G2", 6)])
def test_classical_counts(name, count):
    assert len(build_root_system(name[0], int(name[1:])).positive_roots) == count


def test_order_is_height_then_first_simple_first():
    a2 = build_root_system("A", 2)
    assert [r.name() for r in a2.positive_roots] == ["a1", "a2", "a1+a2"]


def test_unsupported_types():
    with pytest.raises(ConfigurationError):
        build_root_system("A", 5)
    with pytest.raises(ConfigurationError):
        build_root_system("G", 3)
    with pytest.raises(ConfigurationError):
        build_root_system("D", 3)
    assert build_root_system("A", 5, max_rank=5).rank == 5


def test_alpha_strings_g2():
    g2 = build_root_system("G", 2)
    s = alpha_string(g2, (1, 0), (3, 1))
    assert [r.name() for r in s.members] == ["3a1+a2", "2a1+a2", "a1+a2", "a2"]
    assert not s.isolated
    assert alpha_string(g2, (0, 1), (2, 1)).isolated


def test_alpha_string_b2_isolated_by_brute_force():
    b2 = build_root_system("B", 2)
    roots = {(1, 0), (0, 1), (1, 1), (1, 2)}
    beta, alpha = (1, 2), (1, 0)
    brute = [beta] + [tuple(b + j * a for b, a in zip(beta, alpha))
                      for j in (-2, -1, 1, 2)]
    assert [t for t in brute if t in roots] == [beta]
    assert alpha_string(b2, alpha, beta).isolated


def test_alpha_string_rebases_to_top():
    g2 = build_root_system("G", 2)
    assert alpha_string(g2, (1, 0), (1, 1)).base == R((3, 1))


def test_alpha_string_errors():
    a2 = build_root_system("A", 2)
    with pytest.raises(RootError):
        alpha_string(a2, (1, 0), (1, 0))
    with pytest.raises(RootError):
        alpha_string(a2, (1, 0), (2, 1))
    with pytest.raises(RootError):
        alpha_string(a2, (1, 1), (0, 1))


def test_extended_strings_examples():
    b2 = build_root_system("B", 2)
    assert [r.name() for r in extended_alpha_string(b2, (1, 0), (1, 1)).members] == \
        ["a1+2a2", "a1+a2", "a2"]
    a2 = build_root_system("A", 2)
    assert [r.name() for r in extended_alpha_string(a2, (1, 0), (1, 1)).members] == \
        ["a1+a2", "a2"]
    g2 = build_root_system("G", 2)
    ext = extended_alpha_string(g2, (0, 1), (1, 1))
    assert [r.name() for r in ext.members] == ["3a1+2a2", "3a1+a2", "2a1+a2", "a1+a2", "a1"]
    inner = extended_alpha_string(g2, (0, 1), (3, 2))
    assert set(inner.members) <= set(ext.members)
    with pytest.raises(RootError):
        extended_alpha_string(b2, (1, 0), (1, 2))


def test_extended_string_contains_plain_string_as_suffix():
    for name in ["A3", "B3", "C3", "D4", "G2"]:
        sys_ = build_root_system(name[0], int(name[1:]))
        for a in sys_.simple_roots:
            for b in sys_.positive_roots:
                if b == a or alpha_string(sys_, a, b).isolated:
                    continue
                plain = alpha_string(sys_, a, b).members
                ext = extended_alpha_string(sys_, a, b).members
                assert ext[len(ext) - len(plain):] == plain


def test_string_length_at_most_four():
    for name in ["A4", "B4", "C4", "D4", "F4", "G2"]:
        sys_ = build_root_system(name[0], int(name[1:]))
        for a in sys_.simple_roots:
            for b in sys_.positive_roots:
                if b != a:
                    assert len(alpha_string(sys_, a, b).members) <= 4


def test_parabolic_data_examples():
    a2 = build_root_system("A", 2)
    assert [r.name() for r in parabolic_data(a2, ()).complement] == ["a1", "a2", "a1+a2"]
    b2 = build_root_system("B", 2)
    pd = parabolic_data(b2, (1,))
    everything = {(1, 0), (0, 1), (1, 1), (1, 2)}
    levi = {r for r in everything if r[1] == 0}
    assert set(map(tuple, pd.complement)) == everything - levi
    assert [r.name() for r in pd.complement] == ["a2", "a1+a2", "a1+2a2"]
    assert (pd.t, pd.s, pd.k) == (4, 1, 3)
    g2 = build_root_system("G", 2)
    assert [r.name() for r in parabolic_data(g2, (2,)).complement] == \
        ["a1", "a1+a2", "2a1+a2", "3a1+a2", "3a1+2a2"]
    with pytest.raises(RootError):
        parabolic_data(a2, (1, 2))


def test_closed_subsets():
    a2 = build_root_system("A", 2)
    assert is_closed_subset(a2, [(1, 0)])
    assert not is_closed_subset(a2, [(1, 0), (0, 1)])


def test_alpha_orders():
    b2 = build_root_system("B", 2)
    order = alpha_order(b2, parabolic_data(b2, (2,)), (0, 1))
    assert [r.name() for r in order] == ["a1+2a2", "a1+a2", "a1"]
    a2 = build_root_system("A", 2)
    assert [r.name() for r in alpha_order(a2, parabolic_data(a2, (1,)), (1, 0))] == \
        ["a1+a2", "a2"]
    with pytest.raises(RootError):
        alpha_order(a2, parabolic_data(a2, (1,)), (0, 1))


def test_alpha_order_g2_matches_explicit_products():
    g2 = build_root_system("G", 2)
    order = alpha_order(g2, parabolic_data(g2, (1,)), (1, 0))
    assert [r.name() for r in order] == ["3a1+2a2", "3a1+a2", "2a1+a2", "a1+a2", "a2"]
    order = alpha_order(g2, parabolic_data(g2, (2,)), (0, 1))
    assert [r.name() for r in order] == ["3a1+2a2", "3a1+a2", "2a1+a2", "a1+a2", "a1"]


def test_alpha_order_without_strings_keeps_heights():
    a3 = build_root_system("A", 3)
    pd = parabolic_data(a3, (1,))
    order = alpha_order(a3, pd, (1, 0, 0))
    assert sorted(order) == sorted(pd.complement)


def test_rho_values():
    a2 = build_root_system("A", 2)
    assert rho_pairing(a2, (1, 0)) == 1
    assert rho_pairing(a2, (1, 1)) == 2
    b2 = build_root_system("B", 2)
    pd = parabolic_data(b2, (1,))
    # half of <a1, a2^vee>, computed from the Euclidean form
    assert rho_I_pairing(b2, pd, (0, 1)) == -1
    assert rho_I_pairing(b2, pd, (1, 0)) == rho_pairing(b2, (1, 0)) == 1


def test_json_round_trip():
    g2 = build_root_system("G", 2)
    doc = json.loads(g2.to_json())
    assert doc["kind"] == "G" and len(doc["positive_roots"]) == 6
    assert root_system_from_json(g2.to_json()) == g2


def test_root_names_parse():
    assert Root.parse("a1+2a2", 2) == R((1, 2))
    assert Root.parse("1,0,1", 3) == R((1, 0, 1))
    assert R((3, 2)).name() == "3a1+2a2"
