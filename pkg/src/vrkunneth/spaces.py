"""Generators and loaders for example spaces and test corpora."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Sequence

from .algebra import Z, ZERO, AbelianGroup
from .relations import FiniteMetricSpace, Graph, make_graph, parse_rational

# Ten triangles of the 6-vertex real projective plane.  Checked against its
# homology in ``rp2_flag`` rather than trusted.
RP2_TRIANGLES = (
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
)


def complete(n: int) -> Graph:
    return make_graph(n, combinations(range(n), 2))


def edgeless(n: int) -> Graph:
    return make_graph(n, ())


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs n >= 3")
    return make_graph(n, ((i, (i + 1) % n) for i in range(n)))


def power_cycle(n: int, k: int) -> Graph:
    """i ~ j iff their circular distance is at most k."""
    if not (1 <= k and 2 * k < n):
        raise ValueError(f"power_cycle needs 1 <= k < n/2, got n={n}, k={k}")
    return make_graph(n, ((i, (i + s) % n) for i in range(n) for s in range(1, k + 1)))


def circle_metric(n: int) -> FiniteMetricSpace:
    """n equally spaced points on a circle of circumference 1, geodesic distance."""
    if n < 1:
        raise ValueError("need at least one point")
    rows = tuple(tuple(Fraction(min(abs(i - j), n - abs(i - j)), n) for j in range(n))
                 for i in range(n))
    return FiniteMetricSpace(n, rows)


def barycentric_flag(simplices: Sequence[Sequence[int]]) -> Graph:
    """Comparability graph of the nonempty faces; its clique complex is the subdivision.

    Faces are numbered by size, then lexicographically.
    """
    faces = set()
    for s in simplices:
        t = tuple(sorted(s))
        if not t:
            raise ValueError("empty simplex in input")
        if len(set(t)) != len(t):
            raise ValueError(f"repeated vertex in simplex {tuple(s)}")
        for r in range(1, len(t) + 1):
            faces.update(combinations(t, r))
    order = sorted(faces, key=lambda f: (len(f), f))
    idx = {f: i for i, f in enumerate(order)}
    edges = []
    for f in order:
        for r in range(1, len(f)):
            for sub in combinations(f, r):
                edges.append((idx[sub], idx[f]))
    return make_graph(len(order), edges)


def erdos_renyi(n: int, p: Fraction | str | int, seed: int) -> Graph:
    """G(n, p): each pair i < j, in lexicographic order, is kept when
    ``random.Random(seed).random() < p``."""
    p = parse_rational(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p]
    return make_graph(n, edges)


@lru_cache(maxsize=None)
def rp2_flag() -> Graph:
    """Barycentric subdivision of the 6-vertex RP^2 as a flag graph (31 vertices)."""
    from .flag import build_flag_complex, chain_complex, homology_at

    g = barycentric_flag(RP2_TRIANGLES)
    k = build_flag_complex(g, 3)
    c = chain_complex(k)
    found = (k.f_vector[:3], k.euler_characteristic(),
             homology_at(c, 0), homology_at(c, 1), homology_at(c, 2))
    expected = ((31, 90, 60), 1, Z, AbelianGroup(0, (2,)), ZERO)
    if found != expected or k.truncated:
        raise RuntimeError(f"RP^2 fixture failed its self-check: {found}")
    return g


# ---------------------------------------------------------------------------
# file formats


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


class ParseError(ValueError):
    def __init__(self, path, line, msg):
        super().__init__(f"{path}:{line}: {msg}")
        self.line = line


def load_edge_list(path: str | Path) -> Graph:
    """First line ``n``, then ``u v`` per line (0-indexed); ``#`` starts a comment."""
    lines = list(_content_lines(Path(path).read_text()))
    if not lines:
        raise ParseError(path, 0, "empty file")
    no, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError(path, no, f"expected vertex count, got {head!r}") from None
    edges = []
    for no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(path, no, f"expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(path, no, f"non-integer vertex in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(path, no, f"vertex out of range 0..{n - 1}")
        edges.append((u, v))
    try:
        return make_graph(n, edges)
    except ValueError as exc:
        raise ParseError(path, no, str(exc)) from None


def load_distance_matrix(path: str | Path) -> FiniteMetricSpace:
    """First line ``n``, then n rows of n exact decimals or ``p/q`` rationals."""
    lines = list(_content_lines(Path(path).read_text()))
    if not lines:
        raise ParseError(path, 0, "empty file")
    no, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError(path, no, f"expected point count, got {head!r}") from None
    if len(lines) - 1 != n:
        raise ParseError(path, lines[-1][0], f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for no, line in lines[1:]:
        parts = line.split()
        if len(parts) != n:
            raise ParseError(path, no, f"expected {n} entries, found {len(parts)}")
        try:
            rows.append(tuple(parse_rational(x) for x in parts))
        except ValueError as exc:
            raise ParseError(path, no, str(exc)) from None
    try:
        return FiniteMetricSpace(n, tuple(rows))
    except ValueError as exc:
        raise ParseError(path, 0, str(exc)) from None


def write_edge_list(g: Graph, fh) -> None:
    fh.write(f"{g.n}\n")
    for u, v in g.edges:
        fh.write(f"{u} {v}\n")


# ---------------------------------------------------------------------------
# recipes


@dataclass(frozen=True)
class SpaceRecipe:
    """Tagged description of a generator call.

    kind is one of cycle, complete, power_cycle, circle, rp2, erdos_renyi,
    edges (file), distances (file).  ``circle`` and ``distances`` produce
    metric spaces; everything else produces graphs.
    """

    kind: str
    args: tuple = ()

    METRIC_KINDS = ("circle", "distances")

    @property
    def is_metric(self) -> bool:
        return self.kind in self.METRIC_KINDS

    def describe(self) -> str:
        return f"{self.kind}({', '.join(map(str, self.args))})" if self.args else self.kind

    def build(self):
        k, a = self.kind, self.args
        if k == "cycle":
            return cycle(int(a[0]))
        if k == "complete":
            return complete(int(a[0]))
        if k == "power_cycle":
            return power_cycle(int(a[0]), int(a[1]))
        if k == "rp2":
            return rp2_flag()
        if k == "erdos_renyi":
            return erdos_renyi(int(a[0]), a[1], int(a[2]))
        if k == "edges":
            return load_edge_list(a[0])
        if k == "circle":
            return circle_metric(int(a[0]))
        if k == "distances":
            return load_distance_matrix(a[0])
        raise ValueError(f"unknown space recipe {k!r}")
