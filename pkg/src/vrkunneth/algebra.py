"""Exact integer and finite-field linear algebra for chain complexes.

Finitely generated abelian groups are kept in invariant-factor form, so two
groups are isomorphic exactly when their canonical representations are equal.
Homology over a field is reported with the field dimension in ``rank`` and an
empty torsion list.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence


class ResourceLimitError(RuntimeError):
    """A configured size cap (simplices, matrix entries, vertices) was exceeded."""


class NotComputedError(ValueError):
    """Requested degree lies beyond what a truncated complex determines."""


def invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Canonical invariant factors of a direct sum of cyclic groups Z/d.

    Orders equal to 1 are dropped; 0 is not allowed (free summands are
    counted separately).
    """
    xs = [abs(int(d)) for d in orders]
    if any(d == 0 for d in xs):
        raise ValueError("zero order is a free summand, not torsion")
    xs = sorted(d for d in xs if d != 1)
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            g = gcd(xs[i], xs[j])
            xs[i], xs[j] = g, xs[i] * xs[j] // g
    return tuple(d for d in xs if d != 1)


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """Z^rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k and d_i >= 2."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        t = tuple(self.torsion)
        object.__setattr__(self, "torsion", t)
        for d in t:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(t, t[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken: {a} does not divide {b}")

    @classmethod
    def from_orders(cls, rank: int = 0, orders: Iterable[int] = ()) -> "AbelianGroup":
        return cls(rank, invariant_factors(orders))

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        """Z/n, with n = 0 meaning Z."""
        return cls(1) if n == 0 else cls.from_orders(0, [n])

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def order(self) -> int | None:
        if self.rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> "AbelianGroup":
        return cls.from_orders(int(data.get("rank", 0)), data.get("torsion", ()))

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


ZERO = AbelianGroup()
Z = AbelianGroup(1)


def direct_sum(groups: Iterable[AbelianGroup]) -> AbelianGroup:
    rank = 0
    orders: list[int] = []
    for g in groups:
        rank += g.rank
        orders.extend(g.torsion)
    return AbelianGroup.from_orders(rank, orders)


def tensor_groups(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    orders = list(b.torsion) * a.rank + list(a.torsion) * b.rank
    orders += [gcd(m, n) for m in a.torsion for n in b.torsion]
    return AbelianGroup.from_orders(a.rank * b.rank, orders)


def tor_groups(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    return AbelianGroup.from_orders(0, [gcd(m, n) for m in a.torsion for n in b.torsion])


def groups_isomorphic(a: AbelianGroup, b: AbelianGroup) -> bool:
    return a.rank == b.rank and a.torsion == b.torsion


# ---------------------------------------------------------------------------
# coefficients


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Coefficients:
    """One of Z, Q or F_p."""

    kind: str = "Z"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown coefficient kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"F_p needs a prime p, got {self.p}")
        elif self.p is not None:
            raise ValueError("p only applies to F_p")

    @classmethod
    def parse(cls, text: str) -> "Coefficients":
        """Accepts ``z``, ``q``, ``fp:P``, ``fP`` or ``fpP`` (case-insensitive)."""
        s = text.strip().lower()
        if s == "z":
            return cls("Z")
        if s == "q":
            return cls("Q")
        m = re.fullmatch(r"f(?:p)?:?(\d+)", s)
        if m:
            return cls("Fp", int(m.group(1)))
        raise ValueError(f"cannot parse coefficients {text!r}")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def modulus(self) -> int | None:
        return self.p if self.kind == "Fp" else None

    def __str__(self) -> str:
        return f"F{self.p}" if self.kind == "Fp" else self.kind


ZZ = Coefficients("Z")
QQ = Coefficients("Q")


def GF(p: int) -> Coefficients:
    return Coefficients("Fp", p)


# ---------------------------------------------------------------------------
# sparse matrices


@dataclass(frozen=True)
class SparseIntMatrix:
    """Exact integer matrix stored as sorted (row, col, value) triplets."""

    rows: int
    cols: int
    entries: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        ents = tuple(sorted((int(r), int(c), int(v)) for r, c, v in self.entries))
        seen = set()
        for r, c, v in ents:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if v == 0:
                raise ValueError("stored zero entry")
            if (r, c) in seen:
                raise ValueError(f"duplicate entry ({r}, {c})")
            seen.add((r, c))
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "SparseIntMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        ents = [(i, j, v) for i, row in enumerate(rows) for j, v in enumerate(row) if v]
        return cls(nr, nc, tuple(ents))

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[dict[int, int]]) -> "SparseIntMatrix":
        ents = [(r, j, v) for j, col in enumerate(columns) for r, v in col.items() if v]
        return cls(rows, len(columns), tuple(ents))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseIntMatrix":
        return cls(rows, cols, ())

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls(n, n, tuple((i, i, 1) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.cols, self.rows, tuple((c, r, v) for r, c, v in self.entries))

    def columns(self) -> list[dict[int, int]]:
        cols: list[dict[int, int]] = [{} for _ in range(self.cols)]
        for r, c, v in self.entries:
            cols[c][r] = v
        return cols

    def row_dicts(self) -> dict[int, dict[int, int]]:
        rows: dict[int, dict[int, int]] = {}
        for r, c, v in self.entries:
            rows.setdefault(r, {})[c] = v
        return rows

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        right = other.row_dicts()
        acc: dict[tuple[int, int], int] = {}
        for r, k, v in self.entries:
            for c, w in right.get(k, {}).items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseIntMatrix(self.rows, other.cols, tuple((r, c, v) for (r, c), v in acc.items() if v))

    def with_entry_negated(self, index: int) -> "SparseIntMatrix":
        """Copy with the sign of the ``index``-th stored entry flipped (fault injection)."""
        ents = list(self.entries)
        r, c, v = ents[index]
        ents[index] = (r, c, -v)
        return SparseIntMatrix(self.rows, self.cols, tuple(ents))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """Nonzero diagonal of the Smith form; optionally U, V with D = U M V."""

    shape: tuple[int, int]
    diag: tuple[int, ...]
    U: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)
    V: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return len(self.diag)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diag if d > 1)

    def diagonal_matrix(self) -> list[list[int]]:
        m, n = self.shape
        out = [[0] * n for _ in range(m)]
        for i, d in enumerate(self.diag):
            out[i][i] = d
        return out


def _min_abs_entry(A, t, rows, cols):
    best = None
    for i in range(t, rows):
        row = A[i]
        for j in range(t, cols):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best
    return best


def _dense_smith(M: list[list[int]], nrows: int, ncols: int):
    """Textbook SNF with transform tracking; meant for small matrices."""
    A = [list(r) for r in M]
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    diag = []
    t = 0
    while t < min(nrows, ncols):
        found = _min_abs_entry(A, t, nrows, ncols)
        if found is None:
            break
        _, i, j = found
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, ncols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                # move the smallest leftover in the pivot cross onto the diagonal
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, nrows) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, ncols) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        diag.append(A[t][t])
        t += 1
    return diag, U, V


def _inverse_mod(a: int, p: int) -> int:
    return pow(a, -1, p)


def _sparse_eliminate(m: SparseIntMatrix, modulus: int | None = None,
                      max_entries: int | None = None) -> list[int]:
    """Pivot values (absolute) found by sparse elimination.

    Over F_p every pivot is reported as 1 and the list length is the rank.
    Over Z the multiset of pivots is equivalent to the Smith diagonal after
    gcd/lcm normalisation.  Unit pivots are taken first, choosing sparse
    columns and the shortest unit row, which keeps fill small on boundary
    matrices whose entries start at +-1.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for r, c, v in m.entries:
        if modulus is not None:
            v %= modulus
            if not v:
                continue
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)

    nnz = sum(len(r) for r in rows.values())
    pivots: list[int] = []

    def is_unit(v):
        return modulus is not None or v == 1 or v == -1

    def inv(v):
        return _inverse_mod(v, modulus) if modulus is not None else v

    def pivot_unit(r, c):
        nonlocal nnz
        prow = rows.pop(r)
        u_inv = inv(prow[c])
        for k in list(cols[c]):
            if k == r:
                continue
            krow = rows[k]
            f = krow[c] * u_inv
            for j, v in prow.items():
                old = krow.get(j)
                new = (0 if old is None else old) - f * v
                if modulus is not None:
                    new %= modulus
                if new:
                    if old is None:
                        cols.setdefault(j, set()).add(k)
                        nnz += 1
                    krow[j] = new
                elif old is not None:
                    del krow[j]
                    cols[j].discard(k)
                    nnz -= 1
            if not krow:
                del rows[k]
        for j in prow:
            s = cols.get(j)
            if s is not None:
                s.discard(r)
                if not s:
                    del cols[j]
        nnz -= len(prow)
        cols.pop(c, None)
        if max_entries is not None and nnz > max_entries:
            raise ResourceLimitError(f"elimination fill {nnz} exceeds max_entries={max_entries}")

    progress = True
    while progress and cols:
        progress = False
        heap = [(len(s), c) for c, s in cols.items()]
        heapq.heapify(heap)
        while heap:
            cnt, c = heapq.heappop(heap)
            s = cols.get(c)
            if not s:
                continue
            if len(s) != cnt:
                heapq.heappush(heap, (len(s), c))
                continue
            best = None
            for r in s:
                if is_unit(rows[r][c]) and (best is None or len(rows[r]) < len(rows[best])):
                    best = r
            if best is None:
                continue
            pivot_unit(best, c)
            pivots.append(1)
            progress = True

    if modulus is not None or not cols:
        return pivots

    # Remaining entries are all non-units: general Euclidean reduction.
    while cols:
        _, _, r, c = min((abs(v), len(rows[r]) + len(cols[j]), r, j)
                         for r, row in rows.items() for j, v in row.items())
        while True:
            p = rows[r][c]
            moved = False
            for k in list(cols[c]):
                if k == r:
                    continue
                krow = rows[k]
                q = krow[c] // p
                for j, v in rows[r].items():
                    new = krow.get(j, 0) - q * v
                    if new:
                        if j not in krow:
                            cols.setdefault(j, set()).add(k)
                        krow[j] = new
                    elif j in krow:
                        del krow[j]
                        cols[j].discard(k)
                if not krow:
                    del rows[k]
            left = [(abs(rows[k][c]), k) for k in cols[c] if k != r]
            if left:
                r = min(left)[1]
                continue
            prow = rows[r]
            for j in list(prow):
                if j == c:
                    continue
                new = prow[j] - (prow[j] // p) * p
                if new:
                    prow[j] = new
                else:
                    del prow[j]
                    cols[j].discard(r)
                    if not cols[j]:
                        del cols[j]
            left = [(abs(v), j) for j, v in prow.items() if j != c]
            if left:
                c = min(left)[1]
                moved = True
            if not moved:
                break
        pivots.append(abs(rows[r][c]))
        del rows[r]
        del cols[c]
    return pivots


def smith_normal_form(m: SparseIntMatrix, transforms: bool = False,
                      max_entries: int | None = None) -> SmithForm:
    """Smith normal form over Z.

    With ``transforms=True`` a dense algorithm also returns unimodular U, V
    such that U @ M @ V equals the diagonal form; use it only for small inputs.
    """
    if transforms:
        diag, U, V = _dense_smith(m.to_dense(), m.rows, m.cols)
        return SmithForm(m.shape, tuple(diag), tuple(map(tuple, U)), tuple(map(tuple, V)))
    pivots = _sparse_eliminate(m, None, max_entries)
    rest = invariant_factors(pivots)
    diag = (1,) * (len(pivots) - len(rest)) + rest
    return SmithForm(m.shape, diag)


def rank_mod_p(m: SparseIntMatrix, p: int, max_entries: int | None = None) -> int:
    return len(_sparse_eliminate(m, p, max_entries))

