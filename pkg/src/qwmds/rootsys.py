"""Simply-laced root systems and their Weyl groups.

Roots are integer vectors in the basis of simple roots.  Generators and
x-variables are indexed from 0 in code; display names are 1-based.
Dynkin labelings follow Bourbaki (A_r a path, D_r with nodes r-1 and r
attached to r-2, E_r with node 2 attached to node 4).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Sequence

RootVector = tuple  # tuple[int, ...], coordinates in the simple-root basis

DEFAULT_CAP = 10**6


class InvalidRootSystem(ValueError):
    pass


class EnumerationCapExceeded(RuntimeError):
    def __init__(self, order: int, cap: int):
        super().__init__(f"|W| = {order} exceeds the enumeration cap {cap}")
        self.order = order
        self.cap = cap


def _dynkin_edges(family: str, rank: int) -> list[tuple[int, int]]:
    if family == "A":
        if rank < 1:
            raise InvalidRootSystem("A_r needs r >= 1")
        return [(i, i + 1) for i in range(rank - 1)]
    if family == "D":
        if rank < 4:
            raise InvalidRootSystem("D_r needs r >= 4 (smaller ranks coincide with A types)")
        return [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    if family == "E":
        if rank not in (6, 7, 8):
            raise InvalidRootSystem("E_r exists only for r in {6, 7, 8}")
        # Bourbaki: 1-3-4-5-6(-7-8), 2-4 (1-based)
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, rank - 1)]
        return edges
    raise InvalidRootSystem(f"unknown or non-simply-laced family {family!r}")


def weyl_order(family: str, rank: int) -> int:
    if family == "A":
        return factorial(rank + 1)
    if family == "D":
        return 2 ** (rank - 1) * factorial(rank)
    if family == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[rank]
    raise InvalidRootSystem(family)


def height(alpha: Sequence[int]) -> int:
    return sum(alpha)


def support(alpha: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, k in enumerate(alpha) if k)


def dominates(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """alpha >= beta in the partial order (every coordinate of alpha - beta is >= 0)."""
    return all(a >= b for a, b in zip(alpha, beta))


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    adjacency: tuple[tuple[bool, ...], ...]
    positive_roots: tuple[RootVector, ...] = field(default=(), repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def simple_roots(self) -> tuple[RootVector, ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    def adjacent(self, i: int, j: int) -> bool:
        return self.adjacency[i][j]

    def neighbors(self, i: int) -> tuple[int, ...]:
        return tuple(j for j in range(self.rank) if self.adjacency[i][j])

    def cartan(self, i: int, j: int) -> int:
        if i == j:
            return 2
        return -1 if self.adjacency[i][j] else 0

    def reflect(self, i: int, alpha: Sequence[int]) -> RootVector:
        """sigma_i(alpha): only the i-th coordinate changes."""
        a = list(alpha)
        a[i] = -a[i] + sum(a[j] for j in self.neighbors(i))
        return tuple(a)

    def is_root(self, alpha: Sequence[int]) -> bool:
        alpha = tuple(alpha)
        return alpha in self._root_set

    @property
    def _root_set(self) -> frozenset:
        return frozenset(self.positive_roots) | frozenset(tuple(-k for k in a) for a in self.positive_roots)

    def is_positive(self, alpha: Sequence[int]) -> bool:
        return all(k >= 0 for k in alpha) and any(alpha)

    def weyl_order(self) -> int:
        return weyl_order(self.family, self.rank)

    @property
    def rho2(self) -> RootVector:
        return rho(self)

    # serialization ------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "adjacency": [[int(v) for v in row] for row in self.adjacency],
            "positive_roots": [list(a) for a in self.positive_roots],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RootSystem":
        edges = [(i, j) for i, row in enumerate(data["adjacency"]) for j, v in enumerate(row) if v and i < j]
        rs = from_edges(data["family"], int(data["rank"]), edges)
        if "positive_roots" in data and {tuple(a) for a in data["positive_roots"]} != set(rs.positive_roots):
            raise InvalidRootSystem("stored positive roots do not match the adjacency matrix")
        return rs

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _closure(rank: int, adjacency, limit: int) -> tuple[RootVector, ...]:
    nbrs = [tuple(j for j in range(rank) if adjacency[i][j]) for i in range(rank)]
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for a in frontier:
            for i in range(rank):
                b = list(a)
                b[i] = -b[i] + sum(b[j] for j in nbrs[i])
                b = tuple(b)
                if min(b) >= 0 and b not in seen:
                    seen.add(b)
                    nxt.append(b)
        if len(seen) > limit:
            # affine or hyperbolic diagrams have infinitely many roots
            raise InvalidRootSystem("root closure does not terminate; not a finite Dynkin diagram")
        frontier = nxt
    return tuple(sorted(seen, key=lambda a: (sum(a), tuple(-k for k in a))))


def from_edges(family: str, rank: int, edges: Iterable[tuple[int, int]]) -> RootSystem:
    """Root system with a caller-chosen labeling of the Dynkin diagram (0-based edges)."""
    adj = [[False] * rank for _ in range(rank)]
    for i, j in edges:
        if i == j:
            raise InvalidRootSystem("self-loop in Dynkin diagram")
        adj[i][j] = adj[j][i] = True
    adjacency = tuple(tuple(row) for row in adj)
    expected = {"A": rank * (rank + 1) // 2, "D": rank * (rank - 1), "E": {6: 36, 7: 63, 8: 120}.get(rank)}
    roots = _closure(rank, adjacency, max(v or 0 for v in expected.values()))
    if family not in expected or len(roots) != expected[family]:
        raise InvalidRootSystem(f"edges do not describe a Dynkin diagram of type {family}{rank}")
    return RootSystem(family, rank, adjacency, roots)


def build_root_system(family: str, rank: int) -> RootSystem:
    family = str(family).upper()
    return from_edges(family, int(rank), _dynkin_edges(family, int(rank)))


def rho(rs: RootSystem) -> RootVector:
    """2*rho (the sum of the positive roots), kept doubled so it stays integral."""
    return tuple(sum(a[i] for a in rs.positive_roots) for i in range(rs.rank))


# ---------------------------------------------------------------------------
# Weyl group elements


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element: one reduced word plus the images of the simple roots.

    The word ``(i1, ..., ik)`` stands for the product ``s_i1 s_i2 ... s_ik``,
    so ``w(alpha) = s_i1(s_i2(...s_ik(alpha)))``.
    """

    rs: RootSystem = field(repr=False, compare=False, hash=False)
    word: tuple[int, ...]
    root_action: tuple[RootVector, ...] = field(repr=False)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def sign(self) -> int:
        return -1 if len(self.word) % 2 else 1

    @property
    def key(self):
        return self.root_action

    def __call__(self, alpha: Sequence[int]) -> RootVector:
        return apply_w(self, alpha)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return element_from_word(self.rs, self.word + other.word)

    def inverse(self) -> "WeylElement":
        return element_from_word(self.rs, tuple(reversed(self.word)))

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.root_action == other.root_action

    def __hash__(self):
        return hash(self.root_action)

    def __str__(self):
        if not self.word:
            return "e"
        return "".join(f"s{i + 1}" for i in self.word)


def _act_word(rs: RootSystem, word: Sequence[int], alpha: Sequence[int]) -> RootVector:
    v = tuple(alpha)
    for i in reversed(word):
        v = rs.reflect(i, v)
    return v


def element_from_word(rs: RootSystem, word: Sequence[int]) -> WeylElement:
    """Element for an arbitrary (not necessarily reduced) word; the word is kept as given."""
    word = tuple(word)
    return WeylElement(rs, word, tuple(_act_word(rs, word, a) for a in rs.simple_roots))


def identity(rs: RootSystem) -> WeylElement:
    return element_from_word(rs, ())


def generator(rs: RootSystem, i: int) -> WeylElement:
    return element_from_word(rs, (i,))


def apply_w(w: WeylElement, alpha: Sequence[int]) -> RootVector:
    r = len(alpha)
    out = [0] * r
    for k, img in zip(alpha, w.root_action):
        if k:
            for j in range(r):
                out[j] += k * img[j]
    return tuple(out)


def enumerate_weyl(rs: RootSystem, cap: int = DEFAULT_CAP) -> list[WeylElement]:
    """All of W, breadth-first by length, each with a reduced word.

    Words grow on the right, so the parent of ``w = u s_i`` is ``u``.
    """
    order = rs.weyl_order()
    if order > cap:
        raise EnumerationCapExceeded(order, cap)
    start = identity(rs)
    seen = {start.root_action: start}
    out = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(rs.rank):
                # (w s_i)(alpha_j) = w(s_i alpha_j)
                imgs = tuple(apply_w(w, rs.reflect(i, a)) for a in rs.simple_roots)
                if imgs not in seen:
                    u = WeylElement(rs, w.word + (i,), imgs)
                    seen[imgs] = u
                    nxt.append(u)
        out.extend(nxt)
        frontier = nxt
    if len(out) != order:
        raise AssertionError(f"enumerated {len(out)} elements, expected {order}")
    return out


def longest_element(rs: RootSystem, cap: int = DEFAULT_CAP) -> WeylElement:
    return enumerate_weyl(rs, cap)[-1]


def phi_set(w: WeylElement, rs: RootSystem | None = None) -> frozenset[RootVector]:
    """Positive roots sent to negative roots by ``w``."""
    rs = rs or w.rs
    return frozenset(a for a in rs.positive_roots if not rs.is_positive(apply_w(w, a)))


def rho_minus_w_rho(w: WeylElement) -> RootVector:
    """rho - w(rho), integral by the sum-over-inversions identity."""
    r2 = rho(w.rs)
    d = [a - b for a, b in zip(r2, apply_w(w, r2))]
    if any(v % 2 for v in d):
        raise AssertionError("rho - w rho is not integral")
    return tuple(v // 2 for v in d)


def support_subgroup_check(w: WeylElement) -> bool:
    """Every generator in the reduced word lies in Supp(rho - w rho)."""
    return set(w.word) <= support(rho_minus_w_rho(w))
