"""Torsion Calabi-Yau condition for 2-torus bundles over surfaces, at the
level of cohomology classes.

For a Kaehler class F on a surface base, the trace of a harmonic (1,1)-class
w is the constant 2 Q(w,F)/Q(F,F).  The bundle with curvature (w_1, ..., w_2k)
carries the sought structure when the defect class

    c_1(X) - sum_l trace(w_l) * w_l

vanishes and F lies in the Kaehler cone.  Three solution routes are provided:
scale-solving along a ray, the Einstein/primitive route, and the symmetric
ansatz on blow-ups at k >= 9 points of a cubic, whose scale equation

    (3k - 28) n^2 + (112 - 4k) n - (20k + 64) = 0

is solved exactly in Q or Q(sqrt(d)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cone import ConeCertificate, is_kahler, positively_proportional
from .errors import InvalidBundle, NotPositiveRay, NullClass
from .scalars import Scalar, exact_div, exact_sign, is_rational, solve_quadratic
from .surfaces import (
    CohClass,
    Model,
    PairingFunctionalModel,
    SurfaceModel,
    blowup_cp2,
    intersect,
    solve_integer_linear,
)

BASE_COMPLEX_DIMENSION = 2  # all built-in bases are surfaces


@dataclass(frozen=True)
class BundleSpec:
    """A principal 2k-torus bundle: base model plus ordered integral curvature
    classes.  Zero classes are permitted; the count must be even."""

    base: Model
    curvatures: tuple[CohClass, ...]

    def __post_init__(self):
        if len(self.curvatures) == 0 or len(self.curvatures) % 2 != 0:
            raise InvalidBundle(f"{len(self.curvatures)} curvature classes; need an even count")
        for w in self.curvatures:
            if w.rank != self.base.rank:
                raise InvalidBundle("curvature class rank does not match the base")
            if not w.is_integral():
                raise InvalidBundle("curvature classes must be integral")

    @property
    def fiber_rank(self) -> int:
        return len(self.curvatures)


def lambda_trace(model: Model, omega: CohClass, f: CohClass) -> Scalar:
    """Trace of omega against the Kaehler class f: 2 Q(omega,f) / Q(f,f)."""
    ff = intersect(model, f, f)
    if ff == 0:
        raise NullClass("Q(F,F) = 0")
    return exact_div(BASE_COMPLEX_DIMENSION * intersect(model, omega, f), ff)


def lambda_trace_general(n: int, omega_top: Scalar, f_top: Scalar) -> Scalar:
    """Trace hook for complex base dimension n, from externally supplied top
    intersection numbers [omega][F]^(n-1) and [F]^n."""
    if f_top == 0:
        raise NullClass("[F]^n = 0")
    return exact_div(n * omega_top, f_top)


def cyt_defect(bundle: BundleSpec, f: CohClass) -> CohClass:
    """c1(X) minus the traced curvature sum; zero iff the bundle with this
    Kaehler class satisfies the torsion Calabi-Yau condition in cohomology."""
    defect = bundle.base.c1
    for w in bundle.curvatures:
        lam = lambda_trace(bundle.base, w, f)
        if lam != 0:
            defect = defect - lam * w
    return defect


@dataclass(frozen=True)
class RicciPolynomial:
    """Ricci class of the canonical connection family, affine in the family
    parameter t: constant_class + t * linear_class."""

    constant_class: CohClass
    linear_class: CohClass

    def evaluate(self, t) -> CohClass:
        if t == 0:
            return self.constant_class
        return self.constant_class + t * self.linear_class

    def is_identically_zero(self) -> bool:
        return self.constant_class.is_zero() and self.linear_class.is_zero()


def canonical_ricci_class(bundle: BundleSpec, f: CohClass) -> RicciPolynomial:
    """The family t -> c1 + (t-1)/2 * sum(trace_l w_l); t = 1 recovers the
    Chern Ricci class c1, t = -1 the torsion-connection class c1 - sum."""
    traced = CohClass.zero(bundle.base.rank)
    for w in bundle.curvatures:
        lam = lambda_trace(bundle.base, w, f)
        if lam != 0:
            traced = traced + lam * w
    half = Fraction(1, 2)
    return RicciPolynomial(
        constant_class=bundle.base.c1 - half * traced,
        linear_class=half * traced,
    )


@dataclass(frozen=True)
class CytCertificate:
    kahler_class: CohClass
    lambdas: tuple[Scalar, ...]
    defect: CohClass
    defect_zero: bool
    curvatures_integral: bool
    cone: Optional[ConeCertificate]
    solved_scale: Optional[Scalar]  # flagged when the defect vanishes at another scale
    reason: Optional[str]
    verdict: bool


def verify_cyt(bundle: BundleSpec, f: CohClass) -> CytCertificate:
    """Full certificate: defect vanishing, cone membership, integrality.
    Failures are verdicts, not errors."""
    base = bundle.base
    if intersect(base, f, f) == 0:
        return CytCertificate(
            kahler_class=f,
            lambdas=(),
            defect=base.c1,
            defect_zero=False,
            curvatures_integral=all(w.is_integral() for w in bundle.curvatures),
            cone=None,
            solved_scale=None,
            reason="null_class",
            verdict=False,
        )
    lambdas = tuple(lambda_trace(base, w, f) for w in bundle.curvatures)
    defect = base.c1
    for lam, w in zip(lambdas, bundle.curvatures):
        if lam != 0:
            defect = defect - lam * w
    defect_zero = defect.is_zero()
    integral = all(w.is_integral() for w in bundle.curvatures)
    cone = is_kahler(base, f) if isinstance(base, SurfaceModel) else None
    verdict = defect_zero and integral and cone is not None and cone.verdict

    solved_scale = None
    if not defect_zero and isinstance(base, SurfaceModel):
        # flag when the given class solves the condition only after rescaling
        try:
            solved_scale = solve_scale(bundle, f)
        except (NotPositiveRay, NullClass):
            solved_scale = None

    reason = None
    if not verdict:
        if not defect_zero:
            reason = "defect_nonzero"
        elif not integral:
            reason = "curvature_not_integral"
        elif cone is None:
            reason = "no_cone_data"
        else:
            reason = "not_kahler"
    return CytCertificate(
        kahler_class=f,
        lambdas=lambdas,
        defect=defect,
        defect_zero=defect_zero,
        curvatures_integral=integral,
        cone=cone,
        solved_scale=solved_scale,
        reason=reason,
        verdict=verdict,
    )


def solve_scale(bundle: BundleSpec, ray: CohClass) -> Optional[Scalar]:
    """The unique s > 0 with vanishing defect at s * ray, when the traced
    curvature sum along the ray is a nonzero rational multiple of c1; None
    otherwise (including c1 = 0 with a nonzero sum)."""
    base = bundle.base
    rr = intersect(base, ray, ray)
    if exact_sign(rr) <= 0:
        raise NotPositiveRay("ray needs positive self-intersection")
    traced = CohClass.zero(base.rank)
    for w in bundle.curvatures:
        lam = lambda_trace(base, w, ray)
        if lam != 0:
            traced = traced + lam * w
    if traced.is_zero():
        return None
    # traced = s * c1 componentwise, s rational and positive
    c1 = base.c1
    s: Optional[Scalar] = None
    for t, c in zip(traced.coeffs, c1.coeffs):
        if c == 0:
            if t != 0:
                return None
            continue
        ratio = exact_div(t, c)
        if s is None:
            s = ratio
        elif ratio != s:
            return None
    if s is None or not is_rational(s) or exact_sign(s) <= 0:
        return None
    return s


@dataclass(frozen=True)
class AnsatzSolution:
    """Symmetric-ansatz solution on the blow-up at k >= 9 points of a cubic:
    Kaehler class n H - sum(n_l E_l) with the first four multiplicities equal
    to (n+2)/4 and the rest to (2n-6)/(k-4)."""

    k: int
    n: Scalar
    n_first4: Scalar
    n_rest: Scalar
    kahler_class: CohClass
    omega1: CohClass
    omega2: CohClass
    cone: ConeCertificate


def ansatz_curvatures(k: int) -> tuple[CohClass, CohClass]:
    """The curvature pair 4H - 2(E1+..+E4) - (E5+..+Ek), -H + E1+..+E4."""
    w1 = CohClass.of([4] + [-2] * 4 + [-1] * (k - 4))
    w2 = CohClass.of([-1] + [1] * 4 + [0] * (k - 4))
    return w1, w2


def solve_symmetric_ansatz(k: int) -> Optional[AnsatzSolution]:
    """Solve the ansatz for k >= 9; None when no root gives a cone class with
    n > 3.  The smallest qualifying root is chosen."""
    if k < 9:
        return None
    base = blowup_cp2(k, "on_cubic")
    w1, w2 = ansatz_curvatures(k)
    roots = solve_quadratic(3 * k - 28, 112 - 4 * k, -(20 * k + 64))
    for n in roots:  # ascending, so the first qualifying root is the smallest
        if exact_sign(n - 3) != 1:
            continue
        n_first4 = exact_div(n + 2, 4)
        n_rest = exact_div(2 * n - 6, k - 4)
        f = CohClass((n,) + (-n_first4,) * 4 + (-n_rest,) * (k - 4))
        cone_cert = is_kahler(base, f)
        if not cone_cert.verdict:
            continue
        # the defining pairings must hold exactly
        assert intersect(base, f, f) == 4
        assert intersect(base, w1, f) == 2
        assert intersect(base, w2, f) == 2
        return AnsatzSolution(
            k=k,
            n=n,
            n_first4=n_first4,
            n_rest=n_rest,
            kahler_class=f,
            omega1=w1,
            omega2=w2,
            cone=cone_cert,
        )
    return None


def c1_bundle_triviality(bundle: BundleSpec) -> bool:
    """True iff c1 of the base lies in the Z-span of the curvature classes,
    i.e. the total space has trivial first Chern class."""
    base = bundle.base
    cols = [w.as_int_vector() for w in bundle.curvatures]
    mat = [[col[i] for col in cols] for i in range(base.rank)]
    return solve_integer_linear(mat, base.c1.as_int_vector()) is not None


def balanced_check(bundle: BundleSpec, f: CohClass) -> bool:
    """True iff every curvature class has vanishing trace against f.  On a
    pairing-functional model this reads the declared products directly."""
    base = bundle.base
    if isinstance(base, PairingFunctionalModel):
        return all(intersect(base, w, f) == 0 for w in bundle.curvatures)
    return all(lambda_trace(base, w, f) == 0 for w in bundle.curvatures)


def primitive_route_check(bundle: BundleSpec, f: CohClass) -> bool:
    """The Einstein-base route: first curvature a positive rational multiple
    of f, all later ones trace-free, and c1 a positive rational multiple of f
    (the cohomological stand-in for positive Einstein normalization)."""
    base = bundle.base
    ff = intersect(base, f, f)
    if ff == 0:
        raise NullClass("Q(F,F) = 0")
    w1 = bundle.curvatures[0]
    if not positively_proportional(w1, f):
        return False
    for w in bundle.curvatures[1:]:
        if lambda_trace(base, w, f) != 0:
            return False
    return positively_proportional(base.c1, f)
