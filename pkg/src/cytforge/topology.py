"""Topology of the total space of a 2-torus bundle: pairing witnesses, the
second-page and third-page rank tables of the fibration's spectral sequence,
Betti numbers, spin checks, and the diffeomorphism-type label for simply
connected spin total spaces with torsion-free cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cyt import BundleSpec, c1_bundle_triviality
from .errors import HypothesesNotMet, WrongFiberRank
from .intlinalg import IntegerSolver
from .surfaces import (
    CohClass,
    SurfaceModel,
    basis_extension_check,
    mod2_membership,
    pairing_row,
)

UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class SpectralTables:
    """Rank tables, rows q = 0, 1, 2 and columns p = 0..4.  The sequence
    degenerates at the third page; Betti numbers are the anti-diagonal sums."""

    e2: tuple[tuple[int, ...], ...]
    e3: tuple[tuple[int, ...], ...]
    betti: tuple[int, ...]


@dataclass(frozen=True)
class TopologyCertificate:
    basis_extension: bool
    alpha: Optional[CohClass]
    beta: Optional[CohClass]
    pairing_snf: tuple[int, ...]
    simply_connected_surrogate: bool
    spin_integral: bool
    spin_mod2: bool
    diffeo_label: str
    tables: Optional[SpectralTables]


def _pairing_matrix(bundle: BundleSpec) -> list[list[int]]:
    if len(bundle.curvatures) != 2:
        raise WrongFiberRank(f"{len(bundle.curvatures)} curvature classes; need exactly 2")
    return [pairing_row(bundle.base, w) for w in bundle.curvatures]


def _witnesses_from(solver: IntegerSolver) -> Optional[tuple[CohClass, CohClass]]:
    alpha = None
    for t in ([1, 0], [-1, 0]):
        x = solver.solve(t)
        if x is not None:
            alpha = CohClass.of(x)
            break
    if alpha is None:
        return None
    for t in ([0, 1], [0, -1]):
        x = solver.solve(t)
        if x is not None:
            return alpha, CohClass.of(x)
    return None


def find_alpha_beta(bundle: BundleSpec) -> Optional[tuple[CohClass, CohClass]]:
    """Integral classes with Q(w1,a) = +-1, Q(w2,a) = 0, Q(w2,b) = +-1,
    Q(w1,b) = 0, trying the +1 sign first.  None iff the pairing map does not
    hit a unimodular pair, i.e. is not onto Z^2."""
    return _witnesses_from(IntegerSolver(_pairing_matrix(bundle)))


def _tables_for_rank(b: int) -> SpectralTables:
    e2 = (
        (1, 0, b, 0, 1),
        (2, 0, 2 * b, 0, 2),
        (1, 0, b, 0, 1),
    )
    e3 = (
        (1, 0, b - 2, 0, 0),
        (0, 0, 2 * b - 2, 0, 0),
        (0, 0, b - 2, 0, 1),
    )
    betti = tuple(
        sum(e3[q][p] for q in range(3) for p in range(5) if p + q == total)
        for total in range(7)
    )
    return SpectralTables(e2=e2, e3=e3, betti=betti)


def spectral_tables(bundle: BundleSpec) -> SpectralTables:
    """Rank tables under the hypotheses: pairing witnesses exist and the two
    curvature classes extend to a lattice basis."""
    if find_alpha_beta(bundle) is None:
        raise HypothesesNotMet("alpha_beta", "no unimodular pairing witnesses")
    if not basis_extension_check(bundle.base, bundle.curvatures):
        raise HypothesesNotMet("basis_extension", "curvatures do not extend to a basis")
    return _tables_for_rank(bundle.base.rank)


def diffeo_label_for(b2_of_total: int) -> str:
    m = b2_of_total
    if m == 0:
        return "S³×S³"
    return f"{m}(S²×S⁴) # {m + 1}(S³×S³)"


def topology_certificate(bundle: BundleSpec) -> TopologyCertificate:
    """Assemble the full topology verdict.  The diffeomorphism label is
    emitted only when every prerequisite holds: basis extension, pairing
    witnesses, the surjectivity surrogate for simple connectivity, and the
    mod-2 spin check; otherwise the label is "unclassified".

    The simple-connectivity surrogate (pairing matrix of SNF diag(1,1)) stands
    in for the sphere-representative argument, which is not decidable from
    lattice data; it agrees with it on every built-in example.
    """
    base = bundle.base
    if not isinstance(base, SurfaceModel):
        raise HypothesesNotMet(
            "full_lattice_model",
            f"{base.name} declares pairings only; its witnesses are assumed, not computed",
        )
    if not base.simply_connected:
        raise HypothesesNotMet("simply_connected_base", f"{base.name} is not simply connected")
    solver = IntegerSolver(_pairing_matrix(bundle))
    pair_snf = solver.diagonal
    surrogate = tuple(pair_snf) == (1, 1)

    witnesses = _witnesses_from(solver)
    alpha, beta = witnesses if witnesses else (None, None)
    extension = basis_extension_check(base, bundle.curvatures)
    spin_integral = c1_bundle_triviality(bundle)
    spin_mod2 = mod2_membership(base, base.c1, bundle.curvatures)

    tables = None
    if witnesses and extension:
        tables = _tables_for_rank(base.rank)

    if witnesses and extension and surrogate and spin_mod2:
        label = diffeo_label_for(base.rank - 2)
    else:
        label = UNCLASSIFIED
    return TopologyCertificate(
        basis_extension=extension,
        alpha=alpha,
        beta=beta,
        pairing_snf=pair_snf,
        simply_connected_surrogate=surrogate,
        spin_integral=spin_integral,
        spin_mod2=spin_mod2,
        diffeo_label=label,
        tables=tables,
    )
