"""Finite symmetric relations (graphs) and finite metric spaces.

A semi-uniform structure on a finite carrier is represented by its maximal
generating relation.  For a graph this is E together with the diagonal.  For
a finite metric space the filter generated by the sets d < r + eps stabilises
once eps is smaller than the gap to the next distance above r, so it is
represented by the single relation d <= r (closed threshold).  The open
threshold d < r is exposed as well.  Nothing is claimed about infinite
carriers.

The diagonal is always implicit: ``Graph`` never stores self-loops.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

from .algebra import ResourceLimitError

MAX_VERTICES = int(os.environ.get("VRK_MAX_VERTICES", 1_000_000))


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1, stored as neighbour sets."""

    n: int
    neighbors: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        if len(self.neighbors) != self.n:
            raise ValueError("neighbour table has wrong length")
        for v, nb in enumerate(self.neighbors):
            if v in nb:
                raise ValueError(f"stored self-loop at {v}")
            for w in nb:
                if not 0 <= w < self.n:
                    raise ValueError(f"neighbour {w} out of range")
                if v not in self.neighbors[w]:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")

    @classmethod
    def from_adjacency(cls, matrix: Sequence[Sequence[bool | int]]) -> "Graph":
        """Build from a square 0/1 matrix. Asymmetric input is rejected; the diagonal is ignored."""
        n = len(matrix)
        for i in range(n):
            if len(matrix[i]) != n:
                raise ValueError("adjacency matrix is not square")
            for j in range(i + 1, n):
                if bool(matrix[i][j]) != bool(matrix[j][i]):
                    raise ValueError(f"directed relation: ({i},{j}) and ({j},{i}) differ")
        nb = tuple(frozenset(j for j in range(n) if j != i and matrix[i][j]) for i in range(n))
        return cls(n, nb)

    def related(self, u: int, v: int) -> bool:
        """Membership in E together with the diagonal."""
        return u == v or v in self.neighbors[u]

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.neighbors[u]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.neighbors[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.neighbors) // 2

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def adjacency_matrix(self) -> list[list[int]]:
        return [[int(j in self.neighbors[i]) for j in range(self.n)] for i in range(self.n)]

    def masks(self) -> list[int]:
        """Neighbour sets as integer bitmasks."""
        out = []
        for nb in self.neighbors:
            m = 0
            for w in nb:
                m |= 1 << w
            out.append(m)
        return out

    def summary(self) -> dict:
        return {"vertices": self.n, "edges": self.num_edges}


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 1:
        raise ValueError("a graph needs at least one vertex")
    nb: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u != v:
            nb[u].add(v)
            nb[v].add(u)
    return Graph(n, tuple(frozenset(s) for s in nb))


def _check_product_size(a: int, b: int) -> int:
    n = a * b
    if n > MAX_VERTICES:
        raise ResourceLimitError(f"product has {n} vertices, cap is {MAX_VERTICES}")
    return n


def strong_product(g: Graph, h: Graph) -> Graph:
    """Strong product with vertex (v, v') at index v * h.n + v'.

    (v0,v0') ~ (v1,v1') iff both coordinates adjacent, or one coordinate
    fixed and the other adjacent.
    """
    n = _check_product_size(g.n, h.n)
    nb: list[frozenset[int]] = []
    for v in range(g.n):
        for vp in range(h.n):
            out = set()
            for w in g.neighbors[v]:
                for wp in h.neighbors[vp]:
                    out.add(w * h.n + wp)          # both move
                out.add(w * h.n + vp)              # second fixed
            for wp in h.neighbors[vp]:
                out.add(v * h.n + wp)              # first fixed
            nb.append(frozenset(out))
    return Graph(n, tuple(nb))


def product_relation(g: Graph, h: Graph) -> Graph:
    """Product of the maximal reflexive relations, (E + diag) x (E' + diag'), as a graph.

    Written independently of ``strong_product`` so the two can be compared.
    """
    n = _check_product_size(g.n, h.n)
    rel = [[False] * n for _ in range(n)]
    for a in range(n):
        v, vp = divmod(a, h.n)
        for b in range(n):
            w, wp = divmod(b, h.n)
            rel[a][b] = g.related(v, w) and h.related(vp, wp)
    return Graph.from_adjacency(rel)


def relation_equals(g: Graph, h: Graph) -> bool:
    if g.n != h.n:
        raise ValueError(f"vertex counts differ: {g.n} vs {h.n}")
    return g.neighbors == h.neighbors


# ---------------------------------------------------------------------------
# metric spaces


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Exact rational from ``p/q``, an integer or a finite decimal. Floats are rejected."""
    if isinstance(text, bool) or isinstance(text, float):
        raise TypeError("float input is not accepted; pass a decimal or p/q string")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text).strip()
    if not s or any(ch.isalpha() and ch not in "eE" for ch in s):
        raise ValueError(f"not an exact rational: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Points 0..n-1 with a symmetric matrix of exact nonnegative distances.

    The triangle inequality is deliberately not enforced.
    """

    n: int
    dist: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a metric space needs at least one point")
        d = tuple(tuple(parse_rational(x) for x in row) for row in self.dist)
        if len(d) != self.n or any(len(row) != self.n for row in d):
            raise ValueError("distance matrix must be n x n")
        for i in range(self.n):
            if d[i][i] != 0:
                raise ValueError(f"d({i},{i}) = {d[i][i]} is not zero")
            for j in range(i + 1, self.n):
                if d[i][j] != d[j][i]:
                    raise ValueError(f"asymmetric distance d({i},{j}) != d({j},{i})")
                if d[i][j] < 0:
                    raise ValueError(f"negative distance d({i},{j}) = {d[i][j]}")
        object.__setattr__(self, "dist", d)

    def distances(self) -> list[Fraction]:
        return sorted({self.dist[i][j] for i in range(self.n) for j in range(i + 1, self.n)})

    def diameter(self) -> Fraction:
        return max((x for row in self.dist for x in row), default=Fraction(0))

    def summary(self) -> dict:
        return {"points": self.n, "diameter": str(self.diameter())}


@dataclass(frozen=True)
class Threshold:
    """Scale r with mode ``closed`` (d <= r) or ``open`` (d < r)."""

    value: Fraction
    mode: str = "closed"

    def __post_init__(self):
        object.__setattr__(self, "value", parse_rational(self.value))
        if self.value < 0:
            raise ValueError("threshold must be nonnegative")
        if self.mode not in ("closed", "open"):
            raise ValueError(f"mode must be 'closed' or 'open', got {self.mode!r}")

    def admits(self, d: Fraction) -> bool:
        return d <= self.value if self.mode == "closed" else d < self.value

    def __str__(self) -> str:
        return f"{'<=' if self.mode == 'closed' else '<'}{self.value}"


def relation_from_metric(m: FiniteMetricSpace, t: Threshold) -> Graph:
    nb = [frozenset(j for j in range(m.n) if j != i and t.admits(m.dist[i][j])) for i in range(m.n)]
    return Graph(m.n, tuple(nb))


def max_metric_product(a: FiniteMetricSpace, b: FiniteMetricSpace) -> FiniteMetricSpace:
    """Product with the maximum metric; point (x, y) has index x * b.n + y."""
    n = _check_product_size(a.n, b.n)
    rows = []
    for x1 in range(a.n):
        for y1 in range(b.n):
            rows.append(tuple(max(a.dist[x1][x2], b.dist[y1][y2])
                              for x2 in range(a.n) for y2 in range(b.n)))
    return FiniteMetricSpace(n, tuple(rows))


# ---------------------------------------------------------------------------
# cliques and tuple counting


def iter_cliques(g: Graph, max_size: int) -> Iterator[tuple[int, ...]]:
    """Nonempty cliques of size <= max_size, by size then lexicographically."""
    masks = g.masks()
    upper = [masks[v] >> (v + 1) << (v + 1) for v in range(g.n)]
    level = [((v,), upper[v]) for v in range(g.n)]
    size = 1
    while level and size <= max_size:
        nxt = []
        for s, cand in level:
            yield s
            if size < max_size:
                c = cand
                while c:
                    low = c & -c
                    w = low.bit_length() - 1
                    nxt.append((s + (w,), cand & upper[w]))
                    c ^= low
        level = nxt
        size += 1


def surjections(m: int, s: int) -> int:
    """Number of surjections from an m-set onto an s-set."""
    return sum((-1) ** i * comb(s, i) * (s - i) ** m for i in range(s + 1))


def tuple_count(g: Graph, k: int) -> int:
    """Number of (k+1)-tuples, repeats allowed, whose entries are pairwise related.

    Each such tuple has a clique as its set of values, and a clique of size s
    carries exactly surj(k+1, s) tuples.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    return sum(surjections(k + 1, len(c)) for c in iter_cliques(g, k + 1))

