"""Kunneth predictions and degree-by-degree verification.

The Kunneth sequences split, so the middle term is isomorphic to the direct
sum of the outer terms.  The verifier therefore compares isomorphism classes:
the group computed on the product against

    (+)_{i+j=q} A_i (x) B_j  (+)  (+)_{i+j=q-1} Tor(A_i, B_j)     (homology)
    (+)_{i+j=q} A^i (x) B^j  (+)  (+)_{i+j=q+1} Tor(A^i, B^j)     (cohomology)

Maps in the sequence are never built, so naturality is not checked.  A degree
beyond the dimension cap is reported as "not computed" and never counts as a
match.  Over Q or F_p every Tor term vanishes and the formula is a plain
isomorphism of vector spaces.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .algebra import (
    ZERO,
    Z,
    AbelianGroup,
    Coefficients,
    NotComputedError,
    ResourceLimitError,
    ZZ,
    direct_sum,
    groups_isomorphic,
    tensor_groups,
    tor_groups,
)
from .flag import (
    ChainComplex,
    build_flag_complex,
    chain_complex,
    cohomology_at,
    homology_at,
    tensor_chain_complex,
)
from .relations import Graph, strong_product


@dataclass(frozen=True)
class GradedGroups:
    """Groups indexed by degree.

    Degrees in ``groups`` are known; degrees above ``known_through`` are
    unknown, unless ``known_through`` is None, in which case every missing
    degree is zero.
    """

    groups: Mapping[int, AbelianGroup]
    known_through: int | None = None

    @classmethod
    def from_list(cls, groups, complete: bool = True) -> "GradedGroups":
        g = dict(enumerate(groups))
        return cls(g, None if complete else len(g) - 1)

    def __getitem__(self, q: int) -> AbelianGroup:
        if q < 0:
            return ZERO
        if self.known_through is not None and q > self.known_through:
            raise NotComputedError(f"degree {q} unknown (known through {self.known_through})")
        return self.groups.get(q, ZERO)

    def support_top(self) -> int:
        return max((q for q, g in self.groups.items() if not g.is_zero()), default=0)

    def as_list(self, upto: int) -> list[AbelianGroup]:
        return [self[q] for q in range(upto + 1)]


POINT = GradedGroups({0: Z})


def graded_homology(c: ChainComplex, coeff: Coefficients = ZZ, max_q: int | None = None,
                    cohomology: bool = False) -> GradedGroups:
    """All determined degrees of (co)homology, up to ``max_q`` if given."""
    fn = cohomology_at if cohomology else homology_at
    upper = c.top if max_q is None else max_q
    groups = {}
    last = -1
    for q in range(upper + 1):
        if not c.determined(q):
            break
        groups[q] = fn(c, q, coeff)
        last = q
    if c.complete and last >= c.top:
        return GradedGroups(groups, None)
    return GradedGroups(groups, last)


def _predict(hx: GradedGroups, hy: GradedGroups, q: int, tor_degree: int):
    tensor = direct_sum(tensor_groups(hx[i], hy[q - i]) for i in range(q + 1))
    tor = direct_sum(tor_groups(hx[i], hy[tor_degree - i]) for i in range(tor_degree + 1))
    return tensor, tor, direct_sum([tensor, tor])


def predict_homology(hx: GradedGroups, hy: GradedGroups, q: int):
    """(tensor part, Tor part, total) for H_q of the product; Tor at q - 1."""
    if q < 0:
        return ZERO, ZERO, ZERO
    return _predict(hx, hy, q, q - 1)


def predict_cohomology(hx: GradedGroups, hy: GradedGroups, q: int):
    """(tensor part, Tor part, total) for H^q of the product; Tor at q + 1."""
    if q < 0:
        return ZERO, ZERO, ZERO
    return _predict(hx, hy, q, q + 1)


# ---------------------------------------------------------------------------
# reports


@dataclass
class DegreeResult:
    q: int
    status: str                       # "computed", "not computed" or "invalid"
    computed: AbelianGroup | None = None
    predicted: AbelianGroup | None = None
    tensor_part: AbelianGroup | None = None
    tor_part: AbelianGroup | None = None
    match: bool | None = None
    seconds: float = 0.0
    note: str = ""

    def to_json(self, timings: bool = True) -> dict:
        out = {"q": self.q, "status": self.status}
        if self.computed is not None:
            out["rank"] = self.computed.rank
            out["torsion"] = list(self.computed.torsion)
        out["predicted"] = self.predicted.to_json() if self.predicted is not None else None
        out["tensor_part"] = self.tensor_part.to_json() if self.tensor_part is not None else None
        out["tor_part"] = self.tor_part.to_json() if self.tor_part is not None else None
        out["match"] = self.match
        if self.note:
            out["note"] = self.note
        if timings:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass
class KunnethReport:
    kind: str                         # "graph", "algebraic", "graph-cohomology"
    coefficients: Coefficients
    max_q: int
    factors: list[dict]
    product: dict
    degrees: list[DegreeResult]
    prediction_source: str = "computed"
    resource_limited: bool = False
    timings: dict = field(default_factory=dict)

    @property
    def computed_degrees(self) -> list[DegreeResult]:
        return [d for d in self.degrees if d.status == "computed"]

    @property
    def all_match(self) -> bool:
        """True when every computed degree matches its prediction and none is invalid."""
        return not self.mismatches and all(d.match for d in self.computed_degrees)

    @property
    def mismatches(self) -> list[int]:
        return [d.q for d in self.degrees if d.match is False]

    @property
    def complete(self) -> bool:
        return all(d.status != "not computed" for d in self.degrees)

    def computed_groups(self) -> list[AbelianGroup | None]:
        return [d.computed for d in self.degrees]

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "kind": self.kind,
            "coefficients": str(self.coefficients),
            "max_q": self.max_q,
            "prediction_source": self.prediction_source,
            "factors": self.factors,
            "product": self.product,
            "resource_limited": self.resource_limited,
            "all_match": self.all_match,
            "degrees": [d.to_json(timings) for d in self.degrees],
        }
        if timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out

    def dumps(self, timings: bool = True) -> str:
        return json.dumps(self.to_json(timings), indent=2)


def _compare(product: ChainComplex, q: int, predictor, hx, hy, coeff, cohomology,
             bad_d2: list[int], max_entries) -> DegreeResult:
    fn = cohomology_at if cohomology else homology_at
    res = DegreeResult(q, "not computed")
    try:
        res.tensor_part, res.tor_part, res.predicted = predictor(hx, hy, q)
    except NotComputedError as exc:
        res.note = f"prediction unavailable: {exc}"
    if not product.determined(q):
        return res
    if q in bad_d2:
        # no homology to speak of: the boundary maps do not form a complex here
        res.status = "invalid"
        res.match = False
        res.note = "boundary maps do not compose to zero at this degree"
        return res
    t0 = time.perf_counter()
    try:
        res.computed = fn(product, q, coeff, max_entries)
    except ResourceLimitError as exc:
        res.note = str(exc)
        return res
    res.seconds = time.perf_counter() - t0
    res.status = "computed"
    if res.predicted is not None:
        res.match = groups_isomorphic(res.computed, res.predicted)
    return res


def _factor_summary(g: Graph, name: str, k) -> dict:
    return {"name": name, "vertices": g.n, "edges": g.num_edges, "f_vector": list(k.f_vector)}


def _factor_groups(g: Graph, cap: int, coeff, cohomology, max_simplices):
    k = build_flag_complex(g, cap, max_simplices, on_limit="truncate")
    c = chain_complex(k)
    return k, graded_homology(c, coeff, cap, cohomology)


def _verify_graph(g: Graph, h: Graph, max_q: int, coeff: Coefficients, cohomology: bool,
                  names, hx, hy, max_simplices, max_entries, mutate) -> KunnethReport:
    timings = {}
    t0 = time.perf_counter()
    source = "external" if hx is not None and hy is not None else "computed"
    factor_cap = max_q + 2
    kg, gx = _factor_groups(g, factor_cap, coeff, cohomology, max_simplices)
    kh, gy = _factor_groups(h, factor_cap, coeff, cohomology, max_simplices)
    hx = gx if hx is None else hx
    hy = gy if hy is None else hy
    timings["factors"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    prod = strong_product(g, h)
    kp = build_flag_complex(prod, max_q + 1, max_simplices, on_limit="truncate")
    cp = chain_complex(kp, label="product")
    if mutate is not None:
        cp = mutate(cp)
    timings["product_complex"] = time.perf_counter() - t0
    bad = cp.check_d_squared()

    predictor = predict_cohomology if cohomology else predict_homology
    degrees = [_compare(cp, q, predictor, hx, hy, coeff, cohomology, bad, max_entries)
               for q in range(max_q + 1)]
    timings["degrees"] = sum(d.seconds for d in degrees)
    limited = kp.max_dim < max_q + 1 or any(d.status == "not computed" for d in degrees)
    return KunnethReport(
        kind="graph-cohomology" if cohomology else "graph",
        coefficients=coeff,
        max_q=max_q,
        factors=[_factor_summary(g, names[0], kg), _factor_summary(h, names[1], kh)],
        product={"vertices": prod.n, "edges": prod.num_edges, "f_vector": list(kp.f_vector),
                 "dimension_cap": kp.max_dim, "truncated": kp.truncated},
        degrees=degrees,
        prediction_source=source,
        resource_limited=limited,
        timings=timings,
    )


def verify_graph_product(g: Graph, h: Graph, max_q: int, coeff: Coefficients = ZZ, *,
                         names=("G", "H"), hx: GradedGroups | None = None,
                         hy: GradedGroups | None = None, max_simplices: int | None = None,
                         max_entries: int | None = None,
                         mutate: Callable[[ChainComplex], ChainComplex] | None = None,
                         ) -> KunnethReport:
    """Homology of the clique complex of G strong-times H against the Kunneth prediction.

    The product complex is built through dimension max_q + 1.  If it does not
    fit the simplex cap, the highest degrees come back "not computed" and the
    report is flagged ``resource_limited``.  ``mutate`` is applied to the
    product chain complex before homology is taken (fault injection).
    """
    return _verify_graph(g, h, max_q, coeff, False, names, hx, hy, max_simplices,
                         max_entries, mutate)


def verify_cohomology_product(g: Graph, h: Graph, max_q: int, coeff: Coefficients = ZZ, *,
                              names=("G", "H"), hx: GradedGroups | None = None,
                              hy: GradedGroups | None = None,
                              max_simplices: int | None = None,
                              max_entries: int | None = None,
                              mutate: Callable[[ChainComplex], ChainComplex] | None = None,
                              ) -> KunnethReport:
    return _verify_graph(g, h, max_q, coeff, True, names, hx, hy, max_simplices,
                         max_entries, mutate)


def verify_algebraic(a: ChainComplex, b: ChainComplex, max_q: int, coeff: Coefficients = ZZ,
                     *, names=("A", "B"), max_entries: int | None = None,
                     mutate: Callable[[ChainComplex], ChainComplex] | None = None,
                     ) -> KunnethReport:
    """Homology of the tensor product complex against the prediction from H(a), H(b)."""
    timings = {}
    t0 = time.perf_counter()
    hx = graded_homology(a, coeff)
    hy = graded_homology(b, coeff)
    timings["factors"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    limited = False
    try:
        t = tensor_chain_complex(a, b, max_q + 1, max_entries)
    except ResourceLimitError:
        limited = True
        t = None
    if t is not None and mutate is not None:
        t = mutate(t)
    timings["product_complex"] = time.perf_counter() - t0
    bad = t.check_d_squared() if t is not None else []

    degrees = []
    for q in range(max_q + 1):
        if t is None:
            tp, tr, tot = predict_homology(hx, hy, q)
            degrees.append(DegreeResult(q, "not computed", None, tot, tp, tr,
                                        note="tensor complex exceeded max_entries"))
            continue
        degrees.append(_compare(t, q, predict_homology, hx, hy, coeff, False, bad, max_entries))
    timings["degrees"] = sum(d.seconds for d in degrees)
    limited = limited or any(d.status == "not computed" for d in degrees)
    return KunnethReport(
        kind="algebraic",
        coefficients=coeff,
        max_q=max_q,
        factors=[{"name": names[0], "dims": list(a.dims)}, {"name": names[1], "dims": list(b.dims)}],
        product={"dims": list(t.dims) if t is not None else None,
                 "complete": t.complete if t is not None else None},
        degrees=degrees,
        resource_limited=limited,
        timings=timings,
    )


# ---------------------------------------------------------------------------
# closed forms


def torus_closed_form(l: int, l_prime: int, q: int) -> AbelianGroup:
    """H^q of S^(2l+1) x S^(2l'+1), the Vietoris-Rips cohomology of the
    circle product at scales in the l and l' windows."""
    if l < 0 or l_prime < 0:
        raise ValueError("l and l' must be nonnegative")
    a, b = 2 * l + 1, 2 * l_prime + 1
    if l == l_prime:
        if q in (0, 2 * a):
            return Z
        if q == a:
            return AbelianGroup(2)
        return ZERO
    return Z if q in (0, a, b, a + b) else ZERO


def sphere_groups(dim: int) -> GradedGroups:
    """Integral (co)homology of the sphere S^dim."""
    if dim == 0:
        return GradedGroups({0: AbelianGroup(2)})
    return GradedGroups({0: Z, dim: Z})
