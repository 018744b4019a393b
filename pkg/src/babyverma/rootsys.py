"""Root systems of the irreducible types and their string combinatorics.

Roots are integer vectors in the basis of simple roots.  Simple roots are
numbered from 1, as are the parabolic index sets ``I``.

Positive roots are kept in a fixed order: ascending height, ties broken so
that a larger coefficient on an earlier simple root comes first (so
``a1`` precedes ``a2`` and ``a1+a2`` precedes ``a2+a3``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

DEFAULT_MAX_RANK = 4


class ConfigurationError(ValueError):
    """An unsupported root system type or an invalid parameter choice."""


class RootError(ValueError):
    """A root-system operation was called outside its domain."""


class Root(tuple):
    """An integer coefficient vector over the simple roots.

    Arithmetic is vector arithmetic; ``+`` is not tuple concatenation.
    """

    __slots__ = ()

    def __new__(cls, coords):
        return super().__new__(cls, (int(c) for c in coords))

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def height(self) -> int:
        return sum(self)

    def is_positive(self) -> bool:
        return all(c >= 0 for c in self) and any(self)

    def __add__(self, other):
        return Root(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return Root(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Root(-a for a in self)

    def __mul__(self, k):
        return Root(k * a for a in self)

    __rmul__ = __mul__

    def __repr__(self):
        return f"Root({self.name()})"

    def name(self) -> str:
        """Human-readable form such as ``a1+2a2`` or ``-a1-a2``."""
        parts = []
        for i, c in enumerate(self, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}a{i}")
        if not parts:
            return "0"
        text = "".join(parts)
        return text[1:] if text[0] == "+" else text

    __str__ = name

    @classmethod
    def parse(cls, text: str, rank: int) -> "Root":
        """Inverse of :meth:`name`; also accepts ``1,0,2`` style coordinates."""
        text = text.replace(" ", "")
        if "a" not in text:
            coords = [int(c) for c in text.replace(";", ",").split(",")]
            if len(coords) != rank:
                raise RootError(f"root {text!r} needs {rank} coordinates")
            return cls(coords)
        coords = [0] * rank
        for token in text.replace("-", "+-").split("+"):
            if not token:
                continue
            coeff, _, index = token.partition("a")
            k = {"": 1, "-": -1}.get(coeff)
            k = int(coeff) if k is None else k
            i = int(index)
            if not 1 <= i <= rank:
                raise RootError(f"simple root index {i} out of range in {text!r}")
            coords[i - 1] += k
        return cls(coords)


def root_key(root) -> tuple:
    return (sum(root), tuple(-c for c in root))


def cartan_matrix(kind: str, rank: int) -> np.ndarray:
    """Cartan matrix with entry ``[i, j] = <alpha_j, alpha_i^vee>`` (Bourbaki labels)."""
    a = 2 * np.eye(rank, dtype=np.int64)
    for i in range(rank - 1):
        a[i, i + 1] = a[i + 1, i] = -1
    if kind == "A":
        pass
    elif kind == "B":
        a[rank - 1, rank - 2] = -2
    elif kind == "C":
        a[rank - 2, rank - 1] = -2
    elif kind == "D":
        a[rank - 2, rank - 1] = a[rank - 1, rank - 2] = 0
        a[rank - 3, rank - 1] = a[rank - 1, rank - 3] = -1
    elif kind == "E":
        # Bourbaki: chain 1-3-4-5-...; node 2 attached to node 4
        a = 2 * np.eye(rank, dtype=np.int64)
        chain = [0] + list(range(2, rank))
        for u, v in zip(chain, chain[1:]):
            a[u, v] = a[v, u] = -1
        a[1, 3] = a[3, 1] = -1
    elif kind == "F":
        a[2, 1] = -2
    elif kind == "G":
        a[0, 1] = -3
    else:
        raise ConfigurationError(f"unknown type {kind!r}")
    return a


_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4, "E": 6}
_FIXED_RANK = {"F": 4, "G": 2}

# primes that are not good for the type (hypothesis (H2)); type A additionally
# excludes p = 2
BAD_PRIMES = {
    "A": {2}, "B": {2}, "C": {2}, "D": {2},
    "E6": {2, 3}, "E7": {2, 3}, "E8": {2, 3, 5}, "F": {2, 3}, "G": {2, 3},
}


def check_type(kind: str, rank: int, max_rank: int = DEFAULT_MAX_RANK) -> None:
    kind = kind.upper()
    if kind in _FIXED_RANK:
        if rank != _FIXED_RANK[kind]:
            raise ConfigurationError(f"type {kind} only exists in rank {_FIXED_RANK[kind]}")
    elif kind in _MIN_RANK:
        if rank < _MIN_RANK[kind] or (kind == "E" and rank > 8):
            raise ConfigurationError(f"type {kind}{rank} is not an irreducible type")
    else:
        raise ConfigurationError(f"unknown type {kind!r}")
    if kind != "G" and rank > max_rank:
        raise ConfigurationError(f"rank {rank} exceeds the configured bound {max_rank}")


def check_good_prime(kind: str, rank: int, p: int) -> None:
    from .gf import is_prime

    if not is_prime(p):
        raise ConfigurationError(f"{p} is not prime")
    key = f"E{rank}" if kind == "E" else kind
    if p in BAD_PRIMES[key]:
        raise ConfigurationError(f"p = {p} is not a good prime for {kind}{rank}")


def is_good_prime(kind: str, rank: int, p: int) -> bool:
    try:
        check_good_prime(kind, rank, p)
    except ConfigurationError:
        return False
    return True


def parse_type(text: str) -> tuple[str, int]:
    text = text.strip().upper()
    if len(text) < 2 or not text[1:].isdigit():
        raise ConfigurationError(f"cannot parse type {text!r}; expected e.g. A2, B3, G2")
    return text[0], int(text[1:])


@dataclass(frozen=True, eq=False)
class RootSystem:
    kind: str
    rank: int
    cartan: np.ndarray = field(repr=False)
    positive_roots: tuple[Root, ...] = field(repr=False)
    coroot_coeffs: dict = field(repr=False)
    # squared lengths of the simple roots, shortest normalised to 1
    lengths: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {r: i for i, r in enumerate(self.positive_roots)})
        sym = np.array([[self.lengths[i] * self.cartan[i, j] for j in range(self.rank)]
                        for i in range(self.rank)], dtype=np.int64)
        object.__setattr__(self, "_sym2", sym)

    # the type determines everything else
    def __eq__(self, other):
        if not isinstance(other, RootSystem):
            return NotImplemented
        return (self.kind, self.rank) == (other.kind, other.rank)

    def __hash__(self):
        return hash((self.kind, self.rank))

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}"

    def __str__(self):
        return self.name

    def simple(self, i: int) -> Root:
        """The simple root ``alpha_i`` (1-based)."""
        if not 1 <= i <= self.rank:
            raise RootError(f"no simple root a{i} in {self.name}")
        return Root(int(j == i - 1) for j in range(self.rank))

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(self.simple(i) for i in range(1, self.rank + 1))

    @property
    def roots(self) -> tuple[Root, ...]:
        return self.positive_roots + tuple(-r for r in self.positive_roots)

    def index(self, root) -> int:
        return self._index[root]

    def is_positive_root(self, v) -> bool:
        return tuple(v) in self._index

    def is_root(self, v) -> bool:
        v = tuple(v)
        return v in self._index or tuple(-c for c in v) in self._index

    def simple_index(self, root) -> int:
        """1-based index of a simple root."""
        root = tuple(root)
        if sum(root) != 1 or min(root) < 0:
            raise RootError(f"{Root(root)} is not simple")
        return root.index(1) + 1

    @property
    def max_height(self) -> int:
        return max(r.height for r in self.positive_roots)

    def pairing(self, beta, i: int) -> int:
        """``beta(h_i) = <beta, alpha_i^vee>`` for a simple coroot (1-based)."""
        return int(sum(c * self.cartan[i - 1, j] for j, c in enumerate(beta)))

    def coroot_pairing(self, beta, alpha) -> int:
        """``beta(h_alpha)`` for ``alpha`` a positive root."""
        k = self.coroot_coeffs[tuple(alpha)]
        return sum(ki * self.pairing(beta, i) for i, ki in enumerate(k, start=1))

    def inner2(self, a, b) -> int:
        """Twice the invariant form, normalised so short simple roots have ``(a, a) = 1``."""
        return int(np.asarray(a) @ self._sym2 @ np.asarray(b))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "rank": self.rank,
            "cartan": self.cartan.tolist(),
            "positive_roots": [list(r) for r in self.positive_roots],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _symmetrizer(cartan: np.ndarray) -> tuple[int, ...]:
    """Integers ``d_i`` with ``d_i * A[i, j]`` symmetric; ``d_i`` proportional to squared lengths."""
    n = cartan.shape[0]
    d = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and cartan[i, j] != 0 and d[j] is None:
                d[j] = d[i] * int(cartan[i, j]) / int(cartan[j, i])
                stack.append(j)
    den = lcm(*(x.denominator for x in d))
    ints = [int(x * den) for x in d]
    m = min(ints)
    return tuple(x // m for x in ints)


def build_root_system(kind: str, rank: int, max_rank: int = DEFAULT_MAX_RANK) -> RootSystem:
    """Root system of type ``kind`` and rank ``rank`` (G2 with ``a1`` short)."""
    kind = kind.upper()
    check_type(kind, rank, max_rank)
    cartan = cartan_matrix(kind, rank)
    lengths = _symmetrizer(cartan)
    simple = [Root(int(j == i) for j in range(rank)) for i in range(rank)]
    found = set(simple)
    layer = list(simple)
    ordered = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(rank):
                if beta == simple[i]:
                    continue
                r = 0
                while tuple(beta - (r + 1) * simple[i]) in found:
                    r += 1
                q = r - sum(c * int(cartan[i, j]) for j, c in enumerate(beta))
                if q > 0:
                    new = beta + simple[i]
                    if new not in found:
                        nxt.add(new)
        found |= nxt
        layer = sorted(nxt, key=root_key)
        ordered.extend(layer)
    positive = tuple(sorted(ordered, key=root_key))
    coroots = {}
    for alpha in positive:
        norm2 = int(np.asarray(alpha) @ np.asarray(
            [[lengths[i] * cartan[i, j] for j in range(rank)] for i in range(rank)]) @ np.asarray(alpha))
        k = []
        for j, c in enumerate(alpha):
            num = 2 * c * lengths[j]
            if num % norm2:
                raise AssertionError(f"non-integral coroot for {alpha}")
            k.append(num // norm2)
        coroots[alpha] = tuple(k)
    return RootSystem(kind, rank, cartan, positive, coroots, lengths)


def root_system_from_json(text: str) -> RootSystem:
    data = json.loads(text)
    sys_ = build_root_system(data["kind"], data["rank"], max_rank=max(data["rank"], 8))
    if sys_.cartan.tolist() != data["cartan"] or [list(r) for r in sys_.positive_roots] != data["positive_roots"]:
        raise ConfigurationError("JSON root system does not match the rebuilt system")
    return sys_


# -- strings ------------------------------------------------------------------


@dataclass(frozen=True)
class AlphaString:
    alpha: Root
    base: Root
    members: tuple[Root, ...]

    @property
    def isolated(self) -> bool:
        return len(self.members) == 1


@dataclass(frozen=True)
class ExtendedAlphaString:
    alpha: Root
    base: Root
    members: tuple[Root, ...]
    # (l, m) with member = l*base + m*alpha, parallel to ``members``
    coefficients: tuple[tuple[int, int], ...]


def _check_string_args(sys_: RootSystem, alpha, beta) -> tuple[Root, Root]:
    alpha, beta = Root(alpha), Root(beta)
    sys_.simple_index(alpha)
    if not sys_.is_positive_root(beta):
        raise RootError(f"{beta} is not a positive root of {sys_.name}")
    if beta == alpha:
        raise RootError("the string through alpha itself is not defined")
    return alpha, beta


def string_top(sys_: RootSystem, alpha, beta) -> Root:
    alpha, beta = Root(alpha), Root(beta)
    while sys_.is_positive_root(beta + alpha):
        beta = beta + alpha
    return beta


def alpha_string(sys_: RootSystem, alpha, beta) -> AlphaString:
    """The alpha-string through ``beta``, listed from the top down."""
    alpha, beta = _check_string_args(sys_, alpha, beta)
    top = string_top(sys_, alpha, beta)
    members = []
    cur = top
    while sys_.is_positive_root(cur):
        members.append(cur)
        cur = cur - alpha
    return AlphaString(alpha, top, tuple(members))


def extended_alpha_string(sys_: RootSystem, alpha, beta) -> ExtendedAlphaString:
    """Positive roots of the form ``l*beta + m*alpha`` with ``l >= 1``, by enumeration.

    Ordered by decreasing ``l``, then decreasing ``m``.
    """
    plain = alpha_string(sys_, alpha, beta)
    if plain.isolated:
        raise RootError(f"the {plain.alpha}-string through {plain.base} is isolated")
    alpha, top = plain.alpha, plain.base
    hmax = sys_.max_height
    found = []
    for l in range(1, hmax + 1):
        lo = -l * top.height
        for m in range(lo, hmax + 1):
            cand = l * top + m * alpha
            if sys_.is_positive_root(cand):
                found.append((l, m, cand))
    found.sort(key=lambda t: (-t[0], -t[1]))
    return ExtendedAlphaString(alpha, top, tuple(c for _, _, c in found),
                               tuple((l, m) for l, m, _ in found))


# -- parabolic data -------------------------------------------------------------


@dataclass(frozen=True)
class ParabolicData:
    I: tuple[int, ...]
    phi_I_plus: tuple[Root, ...]
    complement: tuple[Root, ...]

    @property
    def t(self) -> int:
        return len(self.phi_I_plus) + len(self.complement)

    @property
    def s(self) -> int:
        return len(self.phi_I_plus)

    @property
    def k(self) -> int:
        return len(self.complement)

    def label(self) -> str:
        return "{" + ",".join(str(i) for i in self.I) + "}"


def parabolic_data(sys_: RootSystem, I=()) -> ParabolicData:
    I = tuple(sorted(set(int(i) for i in I)))
    for i in I:
        if not 1 <= i <= sys_.rank:
            raise RootError(f"simple root index {i} out of range for {sys_.name}")
    if len(I) == sys_.rank:
        raise RootError("I must be a proper subset of the simple roots")
    inside = [r for r in sys_.positive_roots
              if all(c == 0 or (j + 1) in I for j, c in enumerate(r))]
    outside = [r for r in sys_.positive_roots if r not in set(inside)]
    pd = ParabolicData(I, tuple(inside), tuple(sorted(outside, key=root_key)))
    if not is_closed_subset(sys_, pd.complement):
        raise AssertionError("complement of a parabolic root subsystem must be closed")
    return pd


def is_closed_subset(sys_: RootSystem, S) -> bool:
    S = set(tuple(r) for r in S)
    for a in S:
        for b in S:
            s = tuple(x + y for x, y in zip(a, b))
            if sys_.is_positive_root(s) and s not in S:
                return False
    return True


def alpha_order(sys_: RootSystem, pd: ParabolicData, alpha) -> list[Root]:
    """Order the complement so each extended alpha-string forms a contiguous block.

    Blocks come first, largest strings absorbing any string they contain,
    ordered by the position of their string top; roots covered by no block
    follow in ascending height.
    """
    alpha = Root(alpha)
    i = sys_.simple_index(alpha)
    if i not in pd.I:
        raise RootError(f"{alpha} is not in I = {pd.label()}")
    strings = {}
    for beta in pd.complement:
        plain = alpha_string(sys_, alpha, beta)
        if not plain.isolated and plain.base not in strings:
            strings[plain.base] = extended_alpha_string(sys_, alpha, plain.base)
    chosen = []
    covered: set = set()
    for ext in sorted(strings.values(), key=lambda s: (-len(s.members), root_key(s.base))):
        members = set(ext.members)
        if members <= covered:
            continue
        if members & covered:
            raise RootError(f"extended strings overlap without nesting at {ext.base}")
        chosen.append(ext)
        covered |= members
    chosen.sort(key=lambda s: root_key(s.base))
    order = [r for ext in chosen for r in ext.members]
    order += [r for r in pd.complement if r not in covered]
    return order


# -- rho -------------------------------------------------------------------------


def rho_pairing(sys_: RootSystem, alpha) -> int:
    """``rho(h_alpha)``: the sum of the coroot coefficients of ``alpha``."""
    alpha = tuple(alpha)
    if alpha not in sys_.coroot_coeffs:
        raise RootError(f"{Root(alpha)} is not a positive root")
    return sum(sys_.coroot_coeffs[alpha])


def rho_I_pairing(sys_: RootSystem, pd: ParabolicData, alpha) -> int:
    if not sys_.is_positive_root(alpha):
        raise RootError(f"{Root(alpha)} is not a positive root")
    total = sum(sys_.coroot_pairing(g, alpha) for g in pd.phi_I_plus)
    if total % 2:
        raise RootError(f"rho_I(h_alpha) is not integral for alpha = {Root(alpha)}")
    return total // 2
