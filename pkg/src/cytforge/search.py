"""Bounded exhaustive search over integral curvature pairs with verdict
filters, deterministic across runs and across degrees of parallelism.

Enumeration is by lexicographic order of the pair of coefficient vectors.
For filters containing the torsion Calabi-Yau condition the inner loop is
solver-aware: along a ray R the condition forces

    2 Q(w1,R) w1 + 2 Q(w2,R) w2  =  s * Q(R,R) * c1,   s > 0,

so for fixed w1 the admissible w2 are finitely many explicit integer vectors
(one per value of Q(w2,R)) plus the trace-free ones when w1 is proportional
to c1.  Every candidate is then re-verified through the full certificate
path, so emitted records never rest on the shortcut.  Work is partitioned by
the leading coefficient of w1 and merged in order, which keeps parallel runs
bit-identical to serial ones.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from multiprocessing import Pool, cpu_count
from typing import Callable, Iterable, Optional

from .catalog import CatalogRecord, VerdictFlags
from .cone import is_kahler
from .cyt import (
    BundleSpec,
    ansatz_curvatures,
    balanced_check,
    solve_scale,
    solve_symmetric_ansatz,
    verify_cyt,
)
from .errors import BoundTooLarge, NotPositiveRay
from .scalars import format_scalar
from .skt import verify_skt
from .surfaces import (
    REGIME_ON_CUBIC,
    CohClass,
    SurfaceModel,
    intersect,
    mod2_membership,
    pairing_row,
)
from .topology import UNCLASSIFIED, topology_certificate

VALID_FILTERS = ("cyt", "skt", "balanced", "topology", "spin")

_BRUTE_PAIR_CAP = 2_000_000


@dataclass(frozen=True)
class SearchQuery:
    model: SurfaceModel
    coeff_bound: int
    filters: frozenset[str]
    ray: Optional[CohClass] = None
    limit: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.model, SurfaceModel):
            raise ValueError("search needs a full lattice model")
        if self.coeff_bound < 1:
            raise ValueError("coeff_bound must be positive")
        bad = self.filters - set(VALID_FILTERS)
        if bad:
            raise ValueError(f"unknown filters: {sorted(bad)}")
        if self.model.rank > 6 and self.coeff_bound > 6:
            raise BoundTooLarge("coeff_bound <= 6 required for models of rank > 6")


@dataclass
class SearchStats:
    bound: int
    chunks: int
    pairs_evaluated: int
    records_emitted: int
    exhausted: bool = True


def resolve_threads(requested: Optional[int] = None) -> int:
    cap = os.environ.get("CYT_FORGE_THREADS")
    n = requested if requested is not None else min(4, cpu_count())
    if cap is not None:
        n = min(n, max(1, int(cap)))
    return max(1, n)


# -- canonical form ------------------------------------------------------


def _is_blowup_basis(model: SurfaceModel) -> bool:
    labels = model.basis_labels
    return labels[0] == "H" and all(lab.startswith("E") for lab in labels[1:])


def canonical_form(model: SurfaceModel, w1: CohClass, w2: CohClass) -> str:
    """Deduplication key, invariant under simultaneous permutation of the
    exceptional coordinates and swapping the pair order."""
    a = tuple(w1.as_int_vector())
    b = tuple(w2.as_int_vector())

    def canon(x: tuple, y: tuple) -> tuple:
        if _is_blowup_basis(model) and model.rank > 1:
            cols = sorted(zip(x[1:], y[1:]))
            x = (x[0],) + tuple(c[0] for c in cols)
            y = (y[0],) + tuple(c[1] for c in cols)
        return x + y

    best = min(canon(a, b), canon(b, a))
    half = len(best) // 2
    return ",".join(map(str, best[:half])) + "|" + ",".join(map(str, best[half:]))


# -- candidate generation ------------------------------------------------


def _all_vectors(rank: int, bound: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(-bound, bound + 1), repeat=rank)


def _vectors_with_lead(lead: int, rank: int, bound: int) -> Iterable[tuple[int, ...]]:
    for rest in itertools.product(range(-bound, bound + 1), repeat=rank - 1):
        yield (lead,) + rest


def _rational_ratio(x: tuple, y: tuple) -> Optional[Fraction]:
    """x = t*y over the integers, t a nonzero rational; None if not parallel."""
    ratio: Optional[Fraction] = None
    for a, b in zip(x, y):
        if b == 0:
            if a != 0:
                return None
            continue
        t = Fraction(a, b)
        if ratio is None:
            ratio = t
        elif t != ratio:
            return None
    return ratio if ratio not in (None, 0) else None


class _RayData:
    """Integer data for solver-aware candidate generation along one ray."""

    def __init__(self, model: SurfaceModel, ray: CohClass, bound: int):
        vec = ray.coeffs
        dens = [c.denominator if isinstance(c, Fraction) else 1 for c in vec]
        lcm = 1
        for d in dens:
            lcm = lcm * d // gcd(lcm, d)
        ints = [int(c * lcm) for c in vec]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        self.ray_int = [v // g for v in ints] if g else ints
        self.w = pairing_row(model, CohClass.of(self.ray_int))  # Q(., R) functional
        self.r = sum(a * b for a, b in zip(self.ray_int, self.w))  # Q(R,R)
        self.c1 = model.c1.as_int_vector()
        self.d_pair = sum(a * b for a, b in zip(self.c1, self.w))  # Q(c1,R)
        self.bound = bound
        self.q2_bound = bound * sum(abs(x) for x in self.w)
        self.perp: Optional[list[tuple[int, ...]]] = None  # lazy: {v : Q(v,R)=0}
        # q2*d_pair must divide (q1^2+q2^2)*c1_j - q1*d_pair*w1_j for every j,
        # so d_pair | (q1^2+q2^2)*c1_0: bucket q2 by q2^2 mod d_pair and skip
        # whole buckets per q1 residue
        self.q2_by_residue: dict[int, list[int]] = {}
        if self.d_pair > 0:
            for q2 in range(-self.q2_bound, self.q2_bound + 1):
                if q2:
                    self.q2_by_residue.setdefault(q2 * q2 % self.d_pair, []).append(q2)

    def usable(self) -> bool:
        return self.r > 0 and self.d_pair > 0

    def perp_vectors(self, rank: int) -> list[tuple[int, ...]]:
        if self.perp is None:
            w = self.w
            self.perp = [
                v
                for v in _all_vectors(rank, self.bound)
                if sum(a * b for a, b in zip(v, w)) == 0
            ]
        return self.perp

    def candidates_for(self, w1: tuple[int, ...]) -> list[tuple[int, ...]]:
        """All w2 in the box that put (w1, w2) on the solvable locus."""
        out: list[tuple[int, ...]] = []
        w, c1, dp, bound = self.w, self.c1, self.d_pair, self.bound
        q1 = sum(a * b for a, b in zip(w1, w))
        rank = len(w1)
        q1sq = q1 * q1
        q1dp = q1 * dp
        c0 = c1[0]
        scaled = [q1dp * x for x in w1]
        # generic branch: Q(w2,R) = q2 != 0 determines w2
        for residue, q2s in self.q2_by_residue.items():
            if (q1sq + residue) * c0 % dp:
                continue
            for q2 in q2s:
                den = q2 * dp
                lam = q1sq + q2 * q2
                vec = []
                ok = True
                for j in range(rank):
                    num = lam * c1[j] - scaled[j]
                    x, rem = divmod(num, den)
                    if rem or x < -bound or x > bound:
                        ok = False
                        break
                    vec.append(x)
                if ok:
                    out.append(tuple(vec))
        # parallel branch: w1 proportional to c1 frees w2 to the trace-free locus
        if q1 != 0 and _rational_ratio(w1, tuple(c1)) is not None:
            out.extend(self.perp_vectors(rank))
        return out


# -- per-pair evaluation -------------------------------------------------


def _evaluate_pair(
    query: SearchQuery,
    rays: list[tuple[str, CohClass]],
    ray_cone_ok: dict[str, bool],
    ansatz_pair: Optional[tuple[CohClass, CohClass]],
    w1: CohClass,
    w2: CohClass,
    key: str,
) -> Optional[CatalogRecord]:
    model = query.model
    filters = query.filters
    bundle = BundleSpec(model, (w1, w2))
    flags = {}

    if "skt" in filters:
        report = verify_skt(bundle)
        if not report.verdict:
            return None
        flags["skt"] = True

    if "spin" in filters:
        if not mod2_membership(model, model.c1, (w1, w2)):
            return None
        flags["spin"] = True

    kahler: Optional[CohClass] = None
    if "cyt" in filters:
        route = None
        for route_name, ray in rays:
            # cone membership is invariant under the positive solved scale,
            # so the per-ray verdict stands in for is_kahler(s * ray)
            if not ray_cone_ok[route_name]:
                continue
            try:
                s = solve_scale(bundle, ray)
            except NotPositiveRay:
                continue
            if s is None:
                continue
            kahler, route = s * ray, route_name
            flags["scale"] = format_scalar(s)
            break
        if (
            kahler is None
            and ansatz_pair is not None
            and (w1, w2) in (ansatz_pair, (ansatz_pair[1], ansatz_pair[0]))
        ):
            sol = solve_symmetric_ansatz(model.rank - 1)
            if sol is not None and verify_cyt(bundle, sol.kahler_class).verdict:
                kahler, route = sol.kahler_class, "ansatz"
        if kahler is None:
            return None
        flags["cyt"] = True
        flags["cyt_route"] = route

    if "balanced" in filters:
        f = kahler
        if f is None:
            f = query.ray if query.ray is not None else model.c1
            if intersect(model, f, f) == 0:
                return None
        if not balanced_check(bundle, f):
            return None
        flags["balanced"] = True

    if "topology" in filters:
        cert = topology_certificate(bundle)
        if cert.diffeo_label == UNCLASSIFIED:
            return None
        flags["topology_label"] = cert.diffeo_label

    if flags.get("cyt"):
        # the record must stand on the full certificate, not the shortcut
        assert verify_cyt(bundle, kahler).verdict

    return CatalogRecord(
        model=model.name,
        omega1=tuple(w1.as_int_vector()),
        omega2=tuple(w2.as_int_vector()),
        kahler=tuple(kahler.serialize()) if kahler is not None else None,
        flags=VerdictFlags(
            cyt=flags.get("cyt"),
            skt=flags.get("skt"),
            balanced=flags.get("balanced"),
            spin=flags.get("spin"),
            topology_label=flags.get("topology_label"),
            cyt_route=flags.get("cyt_route"),
            scale=flags.get("scale"),
        ),
        canonical_key=key,
    )


def _chunk_worker(args) -> tuple[list[CatalogRecord], int]:
    query, lead = args
    model = query.model
    rank = model.rank
    bound = query.coeff_bound

    rays: list[tuple[str, CohClass]] = []
    ray_datas: list[_RayData] = []
    ray_cone_ok: dict[str, bool] = {}
    if "cyt" in query.filters:
        seen_rays = []
        if query.ray is not None:
            rays.append(("ray", query.ray))
            seen_rays.append(query.ray)
        if model.c1 not in seen_rays and not model.c1.is_zero():
            rays.append(("anticanonical_ray", model.c1))
        for name, ray in rays:
            ray_cone_ok[name] = is_kahler(model, ray).verdict
            data = _RayData(model, ray, bound)
            if data.usable():
                ray_datas.append(data)

    ansatz_pair: Optional[tuple[CohClass, CohClass]] = None
    if (
        "cyt" in query.filters
        and model.curve_regime == REGIME_ON_CUBIC
        and rank - 1 >= 9
    ):
        pair = ansatz_curvatures(rank - 1)
        if all(abs(c) <= bound for w in pair for c in w.as_int_vector()):
            ansatz_pair = pair

    skt_buckets: Optional[dict[int, list[tuple[int, ...]]]] = None
    sq_cache: dict[tuple[int, ...], int] = {}
    if "cyt" not in query.filters and "skt" in query.filters:
        skt_buckets = {}
        for v in _all_vectors(rank, bound):
            cls = CohClass.of(v)
            q = int(intersect(model, cls, cls))
            sq_cache[v] = q
            skt_buckets.setdefault(q, []).append(v)

    records: list[CatalogRecord] = []
    evaluated = 0
    passed_keys: set[str] = set()
    # the filters are invariant under the dedup symmetries (exceptional-curve
    # permutations fix the form, c1 and the default ray; the pair swap enters
    # both conditions symmetrically), so once a pair passes, its whole orbit
    # can be skipped without changing the emitted representative set.  A
    # user-supplied ray can break the permutation symmetry, so dedup is only
    # keyed on passes when no such ray is present.
    early_dedup = query.ray is None
    for v1 in _vectors_with_lead(lead, rank, bound):
        w1 = CohClass.of(v1)
        if ray_datas or ansatz_pair is not None:
            cand: set[tuple[int, ...]] = set()
            for data in ray_datas:
                cand.update(data.candidates_for(v1))
            if ansatz_pair is not None:
                a1 = tuple(ansatz_pair[0].as_int_vector())
                a2 = tuple(ansatz_pair[1].as_int_vector())
                if v1 == a1:
                    cand.add(a2)
                elif v1 == a2:
                    cand.add(a1)
            candidates = sorted(cand)
        elif skt_buckets is not None:
            q1 = sq_cache[v1]
            candidates = skt_buckets.get(-q1, [])
        else:
            candidates = _all_vectors(rank, bound)

        for v2 in candidates:
            evaluated += 1
            key = canonical_form(model, w1, CohClass.of(v2))
            if early_dedup and key in passed_keys:
                continue
            rec = _evaluate_pair(
                query, rays, ray_cone_ok, ansatz_pair, w1, CohClass.of(v2), key
            )
            if rec is not None:
                passed_keys.add(key)
                records.append(rec)
    return records, evaluated


def search(
    query: SearchQuery,
    threads: Optional[int] = None,
    progress: Optional[Callable[[str], None]] = None,
) -> tuple[list[CatalogRecord], SearchStats]:
    """Run the query; returns deduplicated records in lexicographic pair
    order plus run statistics.  Deterministic for any thread count."""
    model = query.model
    bound = query.coeff_bound
    rank = model.rank
    if "cyt" not in query.filters and "skt" not in query.filters:
        total_pairs = (2 * bound + 1) ** (2 * rank)
        if total_pairs > _BRUTE_PAIR_CAP:
            raise BoundTooLarge(
                f"{total_pairs} unfiltered pairs exceed the enumeration cap; "
                "add a cyt or skt filter or shrink the bound"
            )

    leads = list(range(-bound, bound + 1))
    nthreads = resolve_threads(threads)
    tasks = [(query, lead) for lead in leads]
    if nthreads <= 1 or len(leads) <= 1:
        results = []
        for t in tasks:
            results.append(_chunk_worker(t))
            if progress:
                progress(f"chunk {len(results)}/{len(leads)} done")
    else:
        with Pool(processes=min(nthreads, len(leads))) as pool:
            results = pool.map(_chunk_worker, tasks)
        if progress:
            progress(f"{len(leads)} chunks done on {min(nthreads, len(leads))} workers")

    merged: list[CatalogRecord] = []
    seen: set[str] = set()
    evaluated = 0
    for records, count in results:
        evaluated += count
        for rec in records:
            if rec.canonical_key in seen:
                continue
            seen.add(rec.canonical_key)
            merged.append(rec)
            if query.limit is not None and len(merged) >= query.limit:
                break
        if query.limit is not None and len(merged) >= query.limit:
            break
    stats = SearchStats(
        bound=bound,
        chunks=len(leads),
        pairs_evaluated=evaluated,
        records_emitted=len(merged),
        exhausted=query.limit is None or len(merged) < query.limit,
    )
    return merged, stats
