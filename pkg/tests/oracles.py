"""Independent reference computations used by the tests.

Everything here is deliberately naive (dense, brute force, minors) and shares
no code with the package's elimination or clique enumeration.
"""

from fractions import Fraction
from itertools import combinations, product
from math import gcd


def brute_tuple_count(g, k):
    total = 0
    for t in product(range(g.n), repeat=k + 1):
        if all(a == b or g.adjacent(a, b) for a, b in combinations(t, 2)):
            total += 1
    return total


def brute_cliques(g, max_size):
    out = []
    for s in range(1, max_size + 1):
        for c in combinations(range(g.n), s):
            if all(g.adjacent(a, b) for a, b in combinations(c, 2)):
                out.append(c)
    return out


def strong_product_edges(g, h):
    """Edge set of G strong-times H from the three adjacency clauses, on vertex pairs."""
    edges = set()
    verts = [(v, vp) for v in range(g.n) for vp in range(h.n)]
    for (v0, w0), (v1, w1) in combinations(verts, 2):
        e, ep = g.adjacent(v0, v1), h.adjacent(w0, w1)
        if (e and ep) or (v0 == v1 and ep) or (e and w0 == w1):
            edges.add(frozenset({(v0, w0), (v1, w1)}))
    return edges


def as_pair_edges(graph, h_n):
    return {frozenset({divmod(u, h_n), divmod(v, h_n)}) for u, v in graph.edges}


def rank_fraction(rows):
    A = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(rank + 1, len(A)):
            if A[i][c]:
                f = A[i][c] / A[rank][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


def rank_mod(rows, p):
    A = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c] * inv % p
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


def _det(M):
    A = [[Fraction(x) for x in r] for r in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / A[c][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return int(det)


def invariant_factors_by_minors(rows):
    """Nonzero Smith diagonal from determinantal divisors d_k = gcd of k x k minors."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, _det([[rows[r][c] for c in cs] for r in rs]))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def dense_homology(dims, boundaries, q):
    """(rank, torsion) of H_q from dense boundary matrices via minors; small inputs only.

    ``boundaries[q]`` is a dense dims[q-1] x dims[q] list of rows (or None).
    """
    def mat(i):
        if i < 1 or i >= len(dims) or not dims[i] or not dims[i - 1]:
            return None
        return boundaries[i]

    r_in = rank_fraction(mat(q)) if mat(q) else 0
    out = mat(q + 1)
    r_out = rank_fraction(out) if out else 0
    tors = [d for d in invariant_factors_by_minors(out)] if out else []
    return dims[q] - r_in - r_out, sorted(d for d in tors if d > 1)
