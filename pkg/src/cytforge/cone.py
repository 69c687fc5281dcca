"""Kaehler-cone membership via the Nakai-Moishezon-style conditions: positive
self-intersection, positivity against every irreducible curve of negative
self-intersection, and positivity against an ample witness.  Every inequality
is decided by exact sign computation and recorded in a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Optional

from .errors import MissingAmpleWitness, MissingCurveData, RankMismatch
from .scalars import Scalar, exact_div, exact_sign, is_rational
from .surfaces import (
    REGIME_ENUMERATE,
    REGIME_EXPLICIT,
    REGIME_NONE,
    REGIME_ON_CUBIC,
    REGIME_RULINGS,
    CohClass,
    SurfaceModel,
    intersect,
)


@dataclass(frozen=True)
class CurveCheck:
    curve: CohClass
    value: Scalar
    sign: int


@dataclass(frozen=True)
class ConeCertificate:
    self_intersection: Scalar
    self_sign: int
    curve_checks: tuple[CurveCheck, ...]
    ample_witness: Optional[CohClass]
    ample_value: Optional[Scalar]
    ample_sign: Optional[int]
    witness_source: str  # "user" | "model"
    anticanonical_ray: bool  # F proportional to -K: Einstein-positivity route also applies
    verdict: bool


def _neg1_classes(k: int, degree_bound: int) -> tuple[tuple[int, ...], ...]:
    """All integral aH - sum(b_i E_i), 0 <= a <= degree_bound, with
    self-intersection -1 and anti-canonical degree 1, by pruned search."""
    found: list[tuple[int, ...]] = []
    for a in range(0, degree_bound + 1):
        target_sum = 3 * a - 1  # sum of b_i
        target_sq = a * a + 1  # sum of b_i^2
        bs: list[int] = []

        def descend(i: int, rem_sum: int, rem_sq: int):
            if i == k:
                if rem_sum == 0 and rem_sq == 0:
                    found.append((a, *bs))
                return
            slots = k - i
            # Cauchy-Schwarz feasibility on the remaining slots
            if rem_sq < 0 or rem_sum * rem_sum > slots * rem_sq:
                return
            top = isqrt(rem_sq)
            for b in range(-top, top + 1):
                bs.append(b)
                descend(i + 1, rem_sum - b, rem_sq - b * b)
                bs.pop()

        descend(0, target_sum, target_sq)
    return tuple(sorted(found))


@lru_cache(maxsize=None)
def _curves_for(model: SurfaceModel) -> tuple[CohClass, ...]:
    regime = model.curve_regime
    if regime in (REGIME_NONE, REGIME_RULINGS):
        return ()
    if regime == REGIME_EXPLICIT:
        if model.curves is None:
            raise MissingCurveData(f"{model.name} has no negative-curve list")
        return model.curves
    k = model.rank - 1
    if regime == REGIME_ON_CUBIC:
        curves = [
            CohClass.of([0] + [1 if i == j else 0 for j in range(k)])
            for i in range(k)
        ]
        for i in range(k):
            for j in range(i + 1, k):
                curves.append(
                    CohClass.of([1] + [-1 if t in (i, j) else 0 for t in range(k)])
                )
        if k >= 10:
            curves.append(model.c1)  # proper transform of the cubic, class -K
        return tuple(curves)
    if regime == REGIME_ENUMERATE:
        vecs = _neg1_classes(k, degree_bound=6)
        return tuple(CohClass.of([a] + [-b for b in bs]) for a, *bs in vecs)
    raise MissingCurveData(f"unknown curve regime {regime!r}")


def negative_curves(model: SurfaceModel) -> list[CohClass]:
    """Irreducible curves of negative self-intersection on the model.

    Empty for the plane and the quadric (whose cone is carried by the two
    rulings, checked separately); exhaustive (-1)-class enumeration for
    general-position blow-ups; the explicit exceptional/conic/cubic families
    for points on a cubic.
    """
    return list(_curves_for(model))


def positively_proportional(x: CohClass, y: CohClass) -> bool:
    """x = t*y for some rational t > 0."""
    if x.rank != y.rank or y.is_zero():
        return False
    ratio = None
    for a, b in zip(x.coeffs, y.coeffs):
        if b == 0:
            if a != 0:
                return False
            continue
        t = exact_div(a, b)
        if ratio is None:
            ratio = t
        elif t != ratio:
            return False
    return ratio is not None and is_rational(ratio) and exact_sign(ratio) > 0


def is_kahler(
    model: SurfaceModel, f: CohClass, witness: Optional[CohClass] = None
) -> ConeCertificate:
    """Certified cone membership for the class f."""
    if f.rank != model.rank:
        raise RankMismatch(f"rank {f.rank} class on a rank-{model.rank} model")
    self_int = intersect(model, f, f)
    self_sign = exact_sign(self_int)

    if model.curve_regime == REGIME_RULINGS:
        curves = [CohClass.of([1, 0]), CohClass.of([0, 1])]
    else:
        curves = list(_curves_for(model))
    checks = []
    for curve in curves:
        value = intersect(model, f, curve)
        checks.append(CurveCheck(curve, value, exact_sign(value)))

    if witness is not None:
        source = "user"
    else:
        witness = model.ample_witness
        source = "model"
        if witness is None:
            raise MissingAmpleWitness(f"{model.name} carries no ample witness")
    ample_value = intersect(model, f, witness)
    ample_sign = exact_sign(ample_value)

    verdict = (
        self_sign > 0
        and all(c.sign > 0 for c in checks)
        and ample_sign > 0
    )
    return ConeCertificate(
        self_intersection=self_int,
        self_sign=self_sign,
        curve_checks=tuple(checks),
        ample_witness=witness,
        ample_value=ample_value,
        ample_sign=ample_sign,
        witness_source=source,
        anticanonical_ray=(
            model.curve_regime == REGIME_ENUMERATE
            and positively_proportional(f, model.c1)
        ),
        verdict=verdict,
    )
