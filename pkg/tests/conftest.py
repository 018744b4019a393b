"""Shared fixtures and independent oracles for the tests.

The Euclidean oracle realises a root system by explicit simple-root
vectors and closes under reflections, so root lists and coroot expansions
can be checked without going through the package's Cartan-matrix code.
"""

import numpy as np
import pytest

from babyverma.chevalley import structure_constants
from babyverma.rootsys import build_root_system

EUCLID = {
    ("A", 1): [[1.0, -1.0]],
    ("A", 2): [[1.0, -1.0, 0.0], [0.0, 1.0, -1.0]],
    ("A", 3): [[1.0, -1.0, 0.0, 0.0], [0.0, 1.0, -1.0, 0.0], [0.0, 0.0, 1.0, -1.0]],
    # Bourbaki: B_n has the short root last, C_n the long root last
    ("B", 2): [[1.0, -1.0], [0.0, 1.0]],
    ("C", 2): [[1.0, -1.0], [0.0, 2.0]],
    ("B", 3): [[1.0, -1.0, 0.0], [0.0, 1.0, -1.0], [0.0, 0.0, 1.0]],
    ("C", 3): [[1.0, -1.0, 0.0], [0.0, 1.0, -1.0], [0.0, 0.0, 2.0]],
    # G2 with the first simple root short
    ("G", 2): [[0.0, 1.0, -1.0], [1.0, -2.0, 1.0]],
}


def euclid_roots(kind, rank):
    """Positive roots as coordinate tuples, by reflection closure."""
    S = np.array(EUCLID[(kind, rank)])
    roots = {tuple(row) for row in np.eye(rank, dtype=int)}
    frontier = list(roots)
    while frontier:
        new = []
        for r in frontier:
            v = np.array(r) @ S
            for i in range(rank):
                a = S[i]
                k = 2 * (v @ a) / (a @ a)
                w = np.array(r) - int(round(k)) * np.eye(rank, dtype=int)[i]
                t = tuple(int(c) for c in w)
                if any(t) and t not in roots and (all(c >= 0 for c in t) or all(c <= 0 for c in t)):
                    roots.add(t)
                    new.append(t)
        frontier = new
    return sorted(r for r in roots if all(c >= 0 for c in r))


def euclid_coroot(kind, rank, root):
    """Coefficients ``k`` with ``root^vee = sum k_i alpha_i^vee``."""
    S = np.array(EUCLID[(kind, rank)])
    v = np.array(root) @ S
    target = 2 * v / (v @ v)
    basis = np.array([2 * a / (a @ a) for a in S])
    k, *_ = np.linalg.lstsq(basis.T, target, rcond=None)
    return tuple(int(round(c)) for c in k)


@pytest.fixture(scope="session")
def systems():
    cache = {}

    def get(name):
        if name not in cache:
            sys_ = build_root_system(name[0], int(name[1:]))
            cache[name] = (sys_, structure_constants(sys_))
        return cache[name]

    return get
