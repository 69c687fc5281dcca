import pytest

from cytforge.errors import MismatchAgainstExpected
from cytforge.reproduce import compute, diff_against, load_golden, reproduce_paper

ALL_TARGETS = (
    [("4.1", None), ("4.2", None), ("5", None), ("6.1", None), ("maxroot", None)]
    + [("4.3", k) for k in range(3, 9)]
    + [("4.4", k) for k in range(9, 13)]
)


@pytest.mark.parametrize("section,k", ALL_TARGETS)
def test_reproduction_matches_frozen_values(section, k):
    result = reproduce_paper(section, k)
    assert result["diffs"] == []


def test_every_expected_key_is_produced():
    for section, k in ALL_TARGETS:
        golden = load_golden(section, k)
        computed = compute(section, k)
        missing = set(golden["expected"]) - set(computed)
        assert not missing, (section, k, missing)


def test_diff_reports_mismatch():
    diffs = diff_against({"a": 1, "b": "x"}, {"a": 1, "b": "y"})
    assert diffs == ["b: expected 'x', got 'y'"]
    diffs = diff_against({"gone": 1}, {})
    assert diffs == ["gone: missing from run"]


def test_strict_mode_raises(monkeypatch):
    import cytforge.reproduce as reproduce_mod

    real = reproduce_mod.load_golden

    def tampered(section, k=None):
        doc = real(section, k)
        doc["expected"] = dict(doc["expected"], skt_total="99/1")
        return doc

    monkeypatch.setattr(reproduce_mod, "load_golden", tampered)
    with pytest.raises(MismatchAgainstExpected) as err:
        reproduce_mod.reproduce_paper("5")
    assert "skt_total" in str(err.value)
    result = reproduce_mod.reproduce_paper("5", strict=False)
    assert result["diffs"]


def test_unknown_section_and_missing_k():
    with pytest.raises(ValueError):
        compute("9.9")
    with pytest.raises(ValueError):
        compute("4.3")
    with pytest.raises(FileNotFoundError):
        load_golden("4.3", 99)
