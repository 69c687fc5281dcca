import json

from cytforge.certificates import Certificate, build_certificate, digest_of
from cytforge.cyt import BundleSpec, verify_cyt
from cytforge.certificates import cyt_doc
from cytforge.surfaces import blowup_cp2, parse_class


def sample_certificate():
    m = blowup_cp2(2)
    bundle = BundleSpec(m, (parse_class(m, "3H-E1-E2"), parse_class(m, "H-2E1-E2")))
    cert = verify_cyt(bundle, 2 * m.c1)
    return build_certificate(
        command=["verify", "--model", "blowup_cp2(2)"],
        model=m,
        inputs={"omegas": [w.serialize() for w in bundle.curvatures]},
        results={"cyt": cyt_doc(cert)},
        verdict=cert.verdict,
    )


def test_json_round_trip():
    cert = sample_certificate()
    text = cert.to_json()
    parsed = Certificate.from_json(text)
    assert parsed == cert
    assert parsed.to_json() == text


def test_digest_excludes_timestamp():
    a = sample_certificate()
    b = sample_certificate()
    b.timestamp = "2099-01-01T00:00:00+00:00"
    assert a.to_doc()["digest"] == b.to_doc()["digest"]
    assert a.timestamp != b.timestamp


def test_digest_tracks_content():
    a = sample_certificate()
    b = sample_certificate()
    b.inputs = dict(b.inputs, extra=1)
    assert a.to_doc()["digest"] != b.to_doc()["digest"]


def test_model_digest_stable():
    a = sample_certificate().to_doc()
    b = sample_certificate().to_doc()
    assert a["model_digest"] == b["model_digest"]
    assert digest_of(a["model"]) == a["model_digest"]


def test_doc_is_json_clean():
    doc = sample_certificate().to_doc()
    json.dumps(doc)  # every value must be JSON-native
    assert doc["normalization_note"]
    assert doc["results"]["cyt"]["lambdas"] == ["1/1", "0/1"]
