"""cytforge: exact-arithmetic certification of torsion Calabi-Yau, strong-KT
and balanced structures on principal 2-torus bundles over rational surfaces,
with cone checking, total-space topology, and catalogued search."""

from .catalog import CatalogRecord, VerdictFlags, append_records, load_catalog
from .certificates import Certificate, build_certificate
from .cone import ConeCertificate, is_kahler, negative_curves
from .cyt import (
    AnsatzSolution,
    BundleSpec,
    CytCertificate,
    RicciPolynomial,
    balanced_check,
    c1_bundle_triviality,
    canonical_ricci_class,
    cyt_defect,
    lambda_trace,
    lambda_trace_general,
    primitive_route_check,
    solve_scale,
    solve_symmetric_ansatz,
    verify_cyt,
)
from .errors import CytForgeError
from .reproduce import reproduce_paper
from .scalars import (
    QuadraticNumber,
    Rational,
    Scalar,
    exact_sign,
    format_scalar,
    parse_scalar,
    quadratic,
    solve_quadratic,
)
from .search import SearchQuery, canonical_form, search
from .skt import SktReport, hodge_obstruction, verify_skt
from .surfaces import (
    CohClass,
    PairingFunctionalModel,
    SurfaceModel,
    basis_extension_check,
    blowup_cp2,
    builtin_model,
    custom_model,
    divisibility_index,
    format_class,
    intersect,
    kummer_model,
    load_model,
    mod2_membership,
    parse_class,
    projective_plane,
    quadric,
    snf,
    solve_integer_linear,
)
from .topology import (
    SpectralTables,
    TopologyCertificate,
    find_alpha_beta,
    spectral_tables,
    topology_certificate,
)

__version__ = "0.1.0"
