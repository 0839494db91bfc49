"""Clique (flag) complexes and integral chain complexes.

Homology is taken on the unordered clique complex.  Ordered tuples with
repeated vertices are never materialised; the ordered and unordered chain
complexes are chain equivalent, so nothing is lost at the level of homology.
Each simplex is oriented by its increasing vertex order.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, TextIO

from .algebra import (
    AbelianGroup,
    Coefficients,
    NotComputedError,
    ResourceLimitError,
    SparseIntMatrix,
    ZERO,
    ZZ,
    rank_mod_p,
    smith_normal_form,
)
from .relations import Graph

MAX_SIMPLICES = int(os.environ.get("VRK_MAX_SIMPLICES", 2_000_000))
MAX_ENTRIES = int(os.environ.get("VRK_MAX_ENTRIES", 20_000_000))


@dataclass(frozen=True)
class FlagComplex:
    """Cliques of a graph through dimension ``max_dim``.

    ``truncated`` is True when cliques of dimension ``max_dim + 1`` exist,
    i.e. the stored simplices are a proper skeleton of the clique complex.
    """

    n: int
    max_dim: int
    simplices: tuple[tuple[tuple[int, ...], ...], ...]
    truncated: bool
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.simplices)

    def index(self, q: int) -> dict[tuple[int, ...], int]:
        if q not in self._index:
            self._index[q] = {s: i for i, s in enumerate(self.simplices[q])}
        return self._index[q]

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * c for q, c in enumerate(self.f_vector))


def build_flag_complex(g: Graph, max_dim: int, max_simplices: int | None = None,
                       on_limit: str = "raise") -> FlagComplex:
    """Enumerate cliques with at most ``max_dim + 1`` vertices.

    Each simplex is extended by a larger vertex adjacent to all its members,
    so every level comes out in lexicographic order.  When ``max_simplices``
    is exceeded, ``on_limit="truncate"`` returns the largest skeleton that
    fits (marked truncated); otherwise ResourceLimitError is raised.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    if on_limit not in ("raise", "truncate"):
        raise ValueError("on_limit must be 'raise' or 'truncate'")
    cap = MAX_SIMPLICES if max_simplices is None else max_simplices
    masks = g.masks()
    upper = [masks[v] >> (v + 1) << (v + 1) for v in range(g.n)]

    level = [((v,), upper[v]) for v in range(g.n)]
    total = g.n
    if total > cap:
        raise ResourceLimitError(f"{total} vertices exceed max_simplices={cap}")
    levels = [tuple(s for s, _ in level)]
    truncated = False
    for q in range(1, max_dim + 2):
        nxt = []
        for s, cand in level:
            c = cand
            while c:
                low = c & -c
                w = low.bit_length() - 1
                nxt.append((s + (w,), cand & upper[w]))
                c ^= low
                if q > max_dim:
                    break
            if q > max_dim and nxt:
                break
        if q > max_dim:
            truncated = bool(nxt)
            break
        total += len(nxt)
        if total > cap:
            if on_limit == "raise":
                raise ResourceLimitError(
                    f"flag complex exceeds max_simplices={cap} in dimension {q}")
            return FlagComplex(g.n, q - 1, tuple(levels), True)
        if not nxt:
            levels.extend(() for _ in range(q, max_dim + 1))
            break
        levels.append(tuple(s for s, _ in nxt))
        level = nxt
    return FlagComplex(g.n, max_dim, tuple(levels), truncated)


def boundary_matrix(k: FlagComplex, q: int) -> SparseIntMatrix:
    """Matrix of the simplicial boundary from dimension q to q - 1."""
    if not 1 <= q <= k.max_dim:
        raise ValueError(f"boundary degree {q} outside 1..{k.max_dim}")
    faces = k.index(q - 1)
    entries = []
    for j, s in enumerate(k.simplices[q]):
        for i in range(q + 1):
            entries.append((faces[s[:i] + s[i + 1:]], j, -1 if i % 2 else 1))
    return SparseIntMatrix(len(k.simplices[q - 1]), len(k.simplices[q]), tuple(entries))


class ChainComplex:
    """Free chain complex C_0 <- C_1 <- ... <- C_top over Z.

    ``boundaries[q]`` maps degree q to degree q - 1 (``boundaries[0]`` is the
    zero map out of C_0).  If ``complete`` is True every group above ``top``
    is zero; otherwise the complex is a truncation and homology at ``top`` is
    not determined.  Smith forms and ranks are memoised per instance.
    """

    def __init__(self, dims: Iterable[int], boundaries: Iterable[SparseIntMatrix],
                 complete: bool = True, label: str = ""):
        self.dims = tuple(dims)
        bds = list(boundaries)
        if not self.dims:
            raise ValueError("a chain complex needs at least degree 0")
        if len(bds) == len(self.dims) - 1:
            bds = [SparseIntMatrix.zero(0, self.dims[0])] + bds
        if len(bds) != len(self.dims):
            raise ValueError("need one boundary per degree")
        for q in range(1, len(self.dims)):
            if bds[q].shape != (self.dims[q - 1], self.dims[q]):
                raise ValueError(f"boundary {q} has shape {bds[q].shape}, "
                                 f"expected {(self.dims[q - 1], self.dims[q])}")
        self.boundaries = tuple(bds)
        self.complete = complete
        self.label = label
        self._snf: dict[int, object] = {}
        self._rank: dict[tuple[int, int], int] = {}

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def __repr__(self):
        return f"ChainComplex(dims={self.dims}, complete={self.complete})"

    def boundary(self, q: int) -> SparseIntMatrix:
        if 1 <= q <= self.top:
            return self.boundaries[q]
        rows = self.dim(q - 1)
        return SparseIntMatrix.zero(rows, self.dim(q))

    def dim(self, q: int) -> int:
        if q < 0:
            return 0
        if q <= self.top:
            return self.dims[q]
        if self.complete:
            return 0
        raise NotComputedError(f"degree {q} lies beyond the truncation at {self.top}")

    def determined(self, q: int) -> bool:
        """Whether homology and cohomology in degree q are fixed by the stored data."""
        return q < self.top or self.complete

    def check_d_squared(self) -> list[int]:
        """Degrees q where boundary(q) @ boundary(q + 1) is nonzero."""
        bad = []
        for q in range(1, self.top):
            if not (self.boundaries[q] @ self.boundaries[q + 1]).is_zero():
                bad.append(q)
        return bad

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * d for q, d in enumerate(self.dims))

    def with_sign_flipped(self, q: int, entry: int) -> "ChainComplex":
        bds = list(self.boundaries)
        bds[q] = bds[q].with_entry_negated(entry)
        return ChainComplex(self.dims, bds, self.complete, self.label + f"[flip {q}:{entry}]")

    # -- cached linear algebra -------------------------------------------

    def smith(self, q: int, max_entries: int | None = None):
        if q not in self._snf:
            self._snf[q] = smith_normal_form(self.boundary(q), max_entries=max_entries)
        return self._snf[q]

    def boundary_rank(self, q: int, coeff: Coefficients = ZZ,
                      max_entries: int | None = None) -> int:
        if q <= 0 or q > self.top:
            return 0
        if coeff.kind == "Fp":
            key = (q, coeff.p)
            if key not in self._rank:
                self._rank[key] = rank_mod_p(self.boundary(q), coeff.p, max_entries)
            return self._rank[key]
        return self.smith(q, max_entries).rank


def chain_complex(k: FlagComplex, label: str = "") -> ChainComplex:
    bds = [boundary_matrix(k, q) for q in range(1, k.max_dim + 1)]
    return ChainComplex(k.f_vector, bds, complete=not k.truncated, label=label)


def point_complex() -> ChainComplex:
    return ChainComplex((1,), (), complete=True, label="point")


def _check_degree(c: ChainComplex, q: int):
    if q < 0:
        return False
    if not c.determined(q):
        raise NotComputedError(
            f"degree {q} not computed: complex truncated at dimension {c.top}")
    return q <= c.top


def homology_at(c: ChainComplex, q: int, coeff: Coefficients = ZZ,
                max_entries: int | None = None) -> AbelianGroup:
    """H_q(C; coeff).

    Beyond the top of a complete complex the group is zero by construction;
    at or beyond the top of a truncated complex NotComputedError is raised.
    """
    if not _check_degree(c, q):
        return ZERO
    r_in = c.boundary_rank(q, coeff, max_entries)
    r_out = c.boundary_rank(q + 1, coeff, max_entries)
    rank = c.dims[q] - r_in - r_out
    if coeff.kind != "Z":
        return AbelianGroup(rank)
    torsion = c.smith(q + 1, max_entries).torsion if q + 1 <= c.top else ()
    return AbelianGroup(rank, torsion)


def cohomology_at(c: ChainComplex, q: int, coeff: Coefficients = ZZ,
                  max_entries: int | None = None) -> AbelianGroup:
    """H^q(C; coeff), homology of the transposed boundary maps.

    Torsion in degree q comes from the Smith form of the incoming coboundary,
    which is the transpose of boundary(q).
    """
    if not _check_degree(c, q):
        return ZERO
    r_in = c.boundary_rank(q, coeff, max_entries)
    r_out = c.boundary_rank(q + 1, coeff, max_entries)
    rank = c.dims[q] - r_in - r_out
    if coeff.kind != "Z":
        return AbelianGroup(rank)
    torsion = c.smith(q, max_entries).torsion if q >= 1 else ()
    return AbelianGroup(rank, torsion)


# ---------------------------------------------------------------------------
# tensor products


def _support_top(c: ChainComplex) -> int:
    """Highest degree that may be nonzero (trailing zero groups dropped if complete)."""
    if not c.complete:
        return c.top
    top = c.top
    while top > 0 and c.dims[top] == 0:
        top -= 1
    return top


def _tensor_top(a: ChainComplex, b: ChainComplex, max_deg: int) -> tuple[int, bool]:
    ta, tb = _support_top(a), _support_top(b)

    def known(n):
        for i in range(n + 1):
            j = n - i
            if (i > ta and a.complete) or (j > tb and b.complete):
                continue
            if i > ta or j > tb:
                return False
        return True

    top = -1
    while top < max_deg and known(top + 1):
        top += 1
    complete = a.complete and b.complete and ta + tb <= top
    if complete:
        top = ta + tb
    return top, complete


def tensor_chain_complex(a: ChainComplex, b: ChainComplex, max_deg: int,
                         max_entries: int | None = None) -> ChainComplex:
    """Tensor product complex, truncated at ``max_deg``.

    Degree n has basis pairs (x, y), x in degree i of a and y in degree
    n - i of b, ordered by i, then x, then y.  The differential is
    d(x (x) y) = dx (x) y + (-1)^i x (x) dy.
    """
    if max_deg < 0:
        raise ValueError("max_deg must be >= 0")
    cap = MAX_ENTRIES if max_entries is None else max_entries
    top, complete = _tensor_top(a, b, max_deg)
    if top < 0:
        raise NotComputedError("factors do not determine degree 0 of the tensor product")

    def blocks(n):
        out, off = {}, 0
        for i in range(n + 1):
            j = n - i
            if i > a.top or j > b.top:
                continue
            out[i] = off
            off += a.dims[i] * b.dims[j]
        return out, off

    layout = [blocks(n) for n in range(top + 1)]
    dims = [size for _, size in layout]
    a_cols = [None] + [a.boundaries[i].columns() for i in range(1, a.top + 1)]
    b_cols = [None] + [b.boundaries[j].columns() for j in range(1, b.top + 1)]

    bds = []
    nnz = 0
    for n in range(1, top + 1):
        src, _ = layout[n]
        dst, _ = layout[n - 1]
        entries = []
        for i, off in src.items():
            j = n - i
            nb = b.dims[j]
            sign = -1 if i % 2 else 1
            for x in range(a.dims[i]):
                for y in range(nb):
                    col = off + x * nb + y
                    if i >= 1:
                        base = dst[i - 1]
                        for xr, v in a_cols[i][x].items():
                            entries.append((base + xr * nb + y, col, v))
                    if j >= 1:
                        base = dst[i]
                        nbr = b.dims[j - 1]
                        for yr, v in b_cols[j][y].items():
                            entries.append((base + x * nbr + yr, col, sign * v))
        nnz += len(entries)
        if nnz > cap:
            raise ResourceLimitError(f"tensor complex exceeds max_entries={cap}")
        bds.append(SparseIntMatrix(dims[n - 1], dims[n], tuple(entries)))
    label = f"({a.label})(x)({b.label})" if a.label or b.label else ""
    return ChainComplex(dims, bds, complete=complete, label=label)


# ---------------------------------------------------------------------------
# text export


def write_complex(k: FlagComplex, fh: TextIO) -> None:
    """One ``dim q count`` header per degree, then one simplex per line."""
    fh.write(f"# flag complex n={k.n} max_dim={k.max_dim} truncated={int(k.truncated)}\n")
    for q, level in enumerate(k.simplices):
        fh.write(f"dim {q} {len(level)}\n")
        for s in level:
            fh.write(" ".join(map(str, s)) + "\n")


def write_matrix(m: SparseIntMatrix, fh: TextIO) -> None:
    fh.write(f"{m.rows} {m.cols} {m.nnz}\n")
    for r, c, v in m.entries:
        fh.write(f"{r} {c} {v}\n")


def read_matrix(fh: TextIO) -> SparseIntMatrix:
    lines = [ln.split("#", 1)[0].strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    rows, cols, nnz = map(int, lines[0].split())
    ents = tuple(tuple(map(int, ln.split())) for ln in lines[1:])
    if len(ents) != nnz:
        raise ValueError(f"expected {nnz} triplets, found {len(ents)}")
    return SparseIntMatrix(rows, cols, ents)
