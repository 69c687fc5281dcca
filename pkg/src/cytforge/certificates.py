"""Machine-readable certificates: every inequality and identity a verdict
rests on, serialized with exact scalar text, digestible and round-trippable.

The digest covers the canonical JSON of everything except the timestamp, so
re-running the echoed command reproduces the certificate byte for byte up to
that field.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from .cone import ConeCertificate
from .cyt import CytCertificate, RicciPolynomial
from .scalars import format_scalar
from .skt import SktReport
from .surfaces import CohClass, Model, model_to_dict
from .topology import SpectralTables, TopologyCertificate

TOOL_VERSION = "0.1.0"

NORMALIZATION_NOTE = (
    "Ricci classes are identified with the anti-canonical class of the base, "
    "so the trace condition fixes the overall scale of the fiber class; "
    "solvers treat that scale as an unknown, and a class failing only by "
    "scale is flagged via solved_scale rather than silently rescaled."
)

SKT_NOTE = (
    "necessary lattice condition verified; the metric construction making it "
    "sufficient is assumed"
)


def _json_canonical(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def digest_of(doc: dict) -> str:
    trimmed = {k: v for k, v in doc.items() if k != "timestamp"}
    return hashlib.sha256(_json_canonical(trimmed).encode("utf-8")).hexdigest()


def class_doc(c: Optional[CohClass]) -> Optional[list[str]]:
    return c.serialize() if c is not None else None


def cone_doc(cert: Optional[ConeCertificate]) -> Optional[dict]:
    if cert is None:
        return None
    return {
        "self_intersection": format_scalar(cert.self_intersection),
        "self_sign": cert.self_sign,
        "curve_checks": [
            {"curve": class_doc(c.curve), "value": format_scalar(c.value), "sign": c.sign}
            for c in cert.curve_checks
        ],
        "ample_witness": class_doc(cert.ample_witness),
        "ample_value": format_scalar(cert.ample_value) if cert.ample_value is not None else None,
        "ample_sign": cert.ample_sign,
        "witness_source": cert.witness_source,
        "anticanonical_ray": cert.anticanonical_ray,
        "verdict": cert.verdict,
    }


def cyt_doc(cert: CytCertificate) -> dict:
    return {
        "kahler_class": class_doc(cert.kahler_class),
        "lambdas": [format_scalar(x) for x in cert.lambdas],
        "defect": class_doc(cert.defect),
        "defect_zero": cert.defect_zero,
        "curvatures_integral": cert.curvatures_integral,
        "cone": cone_doc(cert.cone),
        "solved_scale": format_scalar(cert.solved_scale) if cert.solved_scale is not None else None,
        "reason": cert.reason,
        "verdict": cert.verdict,
    }


def skt_doc(report: SktReport) -> dict:
    doc = {
        "per_class_squares": [format_scalar(q) for q in report.per_class_squares],
        "total": format_scalar(report.total),
        "verdict": report.verdict,
        "note": SKT_NOTE,
    }
    if report.hodge is not None:
        doc["hodge"] = [
            {
                "omega": class_doc(row.omega),
                "trace_coefficient": format_scalar(row.trace_coefficient),
                "primitive_part": class_doc(row.primitive_part),
                "primitive_square": format_scalar(row.primitive_square),
            }
            for row in report.hodge
        ]
        doc["all_primitive_obstruction"] = report.all_primitive_obstruction
    return doc


def tables_doc(tables: Optional[SpectralTables]) -> Optional[dict]:
    if tables is None:
        return None
    return {
        "e2": [list(row) for row in tables.e2],
        "e3": [list(row) for row in tables.e3],
        "betti": list(tables.betti),
    }


def topology_doc(cert: TopologyCertificate) -> dict:
    return {
        "basis_extension": cert.basis_extension,
        "alpha": class_doc(cert.alpha),
        "beta": class_doc(cert.beta),
        "pairing_snf": list(cert.pairing_snf),
        "simply_connected_surrogate": cert.simply_connected_surrogate,
        "spin_integral": cert.spin_integral,
        "spin_mod2": cert.spin_mod2,
        "diffeo_label": cert.diffeo_label,
        "tables": tables_doc(cert.tables),
    }


def ricci_doc(poly: RicciPolynomial) -> dict:
    return {
        "constant_class": class_doc(poly.constant_class),
        "linear_class": class_doc(poly.linear_class),
    }


@dataclass
class Certificate:
    """Top-level record a CLI run emits."""

    command: list[str]
    model: Optional[dict]
    inputs: dict
    results: dict
    verdict: bool
    tool_version: str = TOOL_VERSION
    normalization_note: str = NORMALIZATION_NOTE
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def to_doc(self) -> dict:
        doc = {
            "command": self.command,
            "tool_version": self.tool_version,
            "model": self.model,
            "model_digest": digest_of(self.model) if self.model else None,
            "inputs": self.inputs,
            "results": self.results,
            "verdict": self.verdict,
            "normalization_note": self.normalization_note,
            "timestamp": self.timestamp,
        }
        doc["digest"] = digest_of({k: v for k, v in doc.items() if k != "digest"})
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_doc(), sort_keys=True, indent=2) + "\n"

    @staticmethod
    def from_doc(doc: dict) -> "Certificate":
        return Certificate(
            command=doc["command"],
            model=doc["model"],
            inputs=doc["inputs"],
            results=doc["results"],
            verdict=doc["verdict"],
            tool_version=doc["tool_version"],
            normalization_note=doc["normalization_note"],
            timestamp=doc["timestamp"],
        )

    @staticmethod
    def from_json(text: str) -> "Certificate":
        return Certificate.from_doc(json.loads(text))


def build_certificate(
    command: list[str],
    model: Optional[Model],
    inputs: dict,
    results: dict,
    verdict: bool,
) -> Certificate:
    return Certificate(
        command=list(command),
        model=model_to_dict(model) if model is not None else None,
        inputs=inputs,
        results=results,
        verdict=verdict,
    )
