"""Finite fields GF(p^e) and dense linear algebra over them.

Elements are encoded as integers ``0 <= a < q``: the base-``p`` digits of
``a`` are the coordinates of the element in the polynomial basis
``1, t, ..., t^(e-1)`` where ``t`` is a root of the field modulus.  Prime
field elements are therefore encoded by themselves, and ``GF(p, 2)``
contains ``GF(p, 1)`` verbatim.

Matrices are plain ``numpy`` integer arrays holding encoded elements.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

# Conway polynomials, coefficients listed from the constant term upwards.
CONWAY = {
    (2, 1): (1, 1), (3, 1): (1, 1), (5, 1): (3, 1), (7, 1): (4, 1),
    (2, 2): (1, 1, 1), (3, 2): (2, 2, 1), (5, 2): (2, 4, 1), (7, 2): (3, 6, 1),
}

_EXACT_FLOAT = 2 ** 52


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def _poly_mod(a, b, p):
    """Remainder of ``a`` by monic ``b`` over GF(p); coefficient lists, low first."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def is_irreducible(coeffs, p: int) -> bool:
    """Brute-force irreducibility test for a monic polynomial over GF(p)."""
    n = len(coeffs) - 1
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not _poly_mod(coeffs, tail + (1,), p):
                return False
    return True


def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree ``e``.

    Coefficients are compared from degree ``e-1`` down to the constant term.
    """
    for high_first in itertools.product(range(p), repeat=e):
        coeffs = tuple(reversed(high_first)) + (1,)
        if is_irreducible(coeffs, p):
            return coeffs
    raise ValueError(f"no irreducible polynomial of degree {e} over GF({p})")


class GF:
    """The field GF(p^e) with vectorised arithmetic on encoded integers."""

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.e = e
        self.q = p ** e
        if modulus is None:
            modulus = CONWAY.get((p, e)) or least_irreducible(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1 or not is_irreducible(modulus, p):
            raise ValueError(f"{modulus} is not a monic irreducible of degree {e}")
        self.modulus = modulus
        self._powers = np.array([p ** i for i in range(e)], dtype=np.int64)
        if e > 1:
            self._build_tables()

    # -- construction -----------------------------------------------------

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        coords = np.array([self.coords(a) for a in range(q)], dtype=np.int64)
        add = (coords[:, None, :] + coords[None, :, :]) % p
        self._add = add @ self._powers
        neg = (-coords) % p
        self._neg = neg @ self._powers
        # schoolbook product followed by reduction modulo the field modulus
        prod = np.zeros((q, q, 2 * e - 1), dtype=np.int64)
        for i in range(e):
            for j in range(e):
                prod[:, :, i + j] += coords[:, None, i] * coords[None, :, j]
        prod %= p
        for s in range(2 * e - 2, e - 1, -1):
            top = prod[:, :, s].copy()
            for i in range(e):
                prod[:, :, s - e + i] = (prod[:, :, s - e + i] - top * self.modulus[i]) % p
            prod[:, :, s] = 0
        self._mul = prod[:, :, :e] @ self._powers
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(self._mul[a] == 1)[0][0])
        self._inv = inv
        self._add_l = self._add.tolist()
        self._mul_l = self._mul.tolist()
        self._neg_l = self._neg.tolist()
        self._inv_l = inv.tolist()

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.e, self.modulus) == (
            other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __reduce__(self):
        return (GF, (self.p, self.e, self.modulus))

    # -- encoding -----------------------------------------------------------

    def coords(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_coords(self, coords) -> int:
        coords = list(coords)
        if len(coords) > self.e:
            raise ValueError(f"too many coordinates for {self}")
        return sum((int(c) % self.p) * self.p ** i for i, c in enumerate(coords))

    def from_int(self, k: int) -> int:
        return int(k) % self.p

    def elements(self) -> range:
        return range(self.q)

    def in_prime_field(self, a: int) -> bool:
        return 0 <= a < self.p

    def format(self, a: int) -> str:
        if self.e == 1 or a < self.p:
            return str(a)
        return ":".join(str(c) for c in self.coords(a))

    def parse(self, text: str) -> int:
        """Parse ``"k"`` (an integer) or ``"c0:c1:..."`` (coordinates)."""
        text = text.strip()
        if ":" in text:
            return self.from_coords(int(c) for c in text.split(":"))
        return self.from_int(int(text))

    # -- scalar arithmetic ----------------------------------------------------

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        return self._add_l[a][b]

    def neg(self, a):
        if self.e == 1:
            return -a % self.p
        return self._neg_l[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return a * b % self.p
        return self._mul_l[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv_l[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result, base = 1 % self.q, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    # -- array arithmetic -----------------------------------------------------

    def vadd(self, a, b):
        if self.e == 1:
            return (np.asarray(a) + b) % self.p
        return self._add[a, b]

    def vneg(self, a):
        if self.e == 1:
            return (-np.asarray(a)) % self.p
        return self._neg[a]

    def vsub(self, a, b):
        if self.e == 1:
            return (np.asarray(a) - b) % self.p
        return self._add[a, self._neg[b]]

    def vmul(self, a, b):
        if self.e == 1:
            return (np.asarray(a) * b) % self.p
        return self._mul[a, b]

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.e == 1:
            return np.array([pow(int(x), self.p - 2, self.p) for x in a.ravel()],
                            dtype=np.int64).reshape(a.shape)
        return self._inv[a]

    def to_planes(self, a) -> np.ndarray:
        """Split encoded elements into ``e`` coordinate planes over GF(p)."""
        a = np.asarray(a, dtype=np.int64)
        return np.stack([(a // self.p ** i) % self.p for i in range(self.e)])

    def from_planes(self, planes) -> np.ndarray:
        planes = np.asarray(planes, dtype=np.int64) % self.p
        return np.tensordot(self._powers, planes, axes=1)

    def _prime_matmul(self, a, b):
        inner = a.shape[-1]
        if inner * (self.p - 1) ** 2 < _EXACT_FLOAT:
            out = a.astype(np.float64) @ b.astype(np.float64)
            return np.rint(np.fmod(out, self.p)).astype(np.int64)
        return (a.astype(object) @ b.astype(object) % self.p).astype(np.int64)

    def matmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return self._prime_matmul(a, b)
        e, p = self.e, self.p
        ap, bp = self.to_planes(a), self.to_planes(b)
        parts = [None] * (2 * e - 1)
        for i in range(e):
            for j in range(e):
                term = self._prime_matmul(ap[i], bp[j])
                parts[i + j] = term if parts[i + j] is None else (parts[i + j] + term) % p
        for s in range(2 * e - 2, e - 1, -1):
            for i in range(e):
                if self.modulus[i]:
                    parts[s - e + i] = (parts[s - e + i] - self.modulus[i] * parts[s]) % p
        return self.from_planes(np.stack(parts[:e]))

    def matpow(self, a, n: int) -> np.ndarray:
        result = self.identity(a.shape[0])
        base = np.asarray(a, dtype=np.int64)
        while n:
            if n & 1:
                result = self.matmul(result, base)
            base = self.matmul(base, base)
            n >>= 1
        return result

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def zeros(self, *shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    # -- elimination ----------------------------------------------------------

    def rref(self, m, col_order=None):
        """Reduced row echelon form.

        Returns ``(rows, pivots)`` with the zero rows removed.  ``col_order``
        sets the order in which columns are tried as pivots; a column late in
        the order only becomes a pivot when forced.
        """
        m = np.array(m, dtype=np.int64, copy=True)
        if m.ndim != 2:
            raise ValueError("rref expects a matrix")
        nrows, ncols = m.shape
        cols = range(ncols) if col_order is None else col_order
        pivots = []
        r = 0
        for c in cols:
            if r == nrows:
                break
            nz = np.nonzero(m[r:, c])[0]
            if nz.size == 0:
                continue
            k = r + nz[0]
            if k != r:
                m[[r, k]] = m[[k, r]]
            m[r] = self.vmul(m[r], self.inv(int(m[r, c])))
            col = m[:, c].copy()
            col[r] = 0
            rows = np.nonzero(col)[0]
            if rows.size:
                m[rows] = self.vsub(m[rows], self.vmul(col[rows, None], m[r][None, :]))
            pivots.append(c)
            r += 1
        return m[:r], pivots

    def rank(self, m) -> int:
        return len(self.rref(m)[1])

    def nullspace(self, m) -> np.ndarray:
        """Basis (as rows) of ``{x : m @ x = 0}``."""
        m = np.asarray(m, dtype=np.int64)
        ncols = m.shape[1]
        rows, pivots = self.rref(m)
        free = [c for c in range(ncols) if c not in set(pivots)]
        basis = np.zeros((len(free), ncols), dtype=np.int64)
        for k, c in enumerate(free):
            basis[k, c] = 1
            if pivots:
                basis[k, pivots] = self.vneg(rows[:, c])
        return basis

    def inverse(self, m) -> np.ndarray:
        m = np.asarray(m, dtype=np.int64)
        n = m.shape[0]
        rows, pivots = self.rref(np.hstack([m, self.identity(n)]), col_order=range(n))
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise np.linalg.LinAlgError("singular matrix")
        return rows[:n, n:]


@lru_cache(maxsize=None)
def field(p: int, e: int = 1) -> GF:
    """Shared field instance for ``(p, e)`` with the default modulus."""
    return GF(p, e)
