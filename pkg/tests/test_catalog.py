import random

from cytforge.catalog import CatalogRecord, VerdictFlags, append_records, load_catalog


def random_record(rng):
    rank = rng.randint(2, 5)
    return CatalogRecord(
        model=rng.choice(["quadric", "blowup_cp2(2,general)"]),
        omega1=tuple(rng.randint(-5, 5) for _ in range(rank)),
        omega2=tuple(rng.randint(-5, 5) for _ in range(rank)),
        kahler=tuple(f"{rng.randint(-9, 9)}/1" for _ in range(rank)) if rng.random() < 0.5 else None,
        flags=VerdictFlags(
            cyt=rng.choice([True, None]),
            skt=rng.choice([True, False, None]),
            topology_label=rng.choice(["S³×S³", None]),
            scale=rng.choice(["2/1", "1/2", None]),
        ),
        canonical_key=f"key{rng.randint(0, 10 ** 6)}",
    )


def test_round_trip_hundred_records(tmp_path):
    rng = random.Random(4)
    records = [random_record(rng) for _ in range(100)]
    path = tmp_path / "catalog.jsonl"
    append_records(str(path), records)
    loaded, errors = load_catalog(str(path))
    assert errors == []
    assert [r.to_line() for r in loaded] == [r.to_line() for r in records]


def test_append_preserves_digests(tmp_path):
    rng = random.Random(8)
    first = [random_record(rng) for _ in range(10)]
    second = [random_record(rng) for _ in range(10)]
    path = tmp_path / "catalog.jsonl"
    append_records(str(path), first)
    digests_before = [r.digest for r in load_catalog(str(path))[0]]
    append_records(str(path), second)
    loaded, errors = load_catalog(str(path))
    assert errors == []
    assert [r.digest for r in loaded[:10]] == digests_before
    assert len(loaded) == 20


def test_corrupt_line_reported_and_rest_loads(tmp_path):
    rng = random.Random(15)
    records = [random_record(rng) for _ in range(100)]
    path = tmp_path / "catalog.jsonl"
    append_records(str(path), records)
    lines = path.read_text().splitlines()
    lines[49] = '{"definitely": "not a record"'
    path.write_text("\n".join(lines) + "\n")
    loaded, errors = load_catalog(str(path))
    assert len(loaded) == 99
    assert len(errors) == 1
    assert errors[0].line_number == 50
    assert "50" in str(errors[0])


def test_digest_tamper_detected(tmp_path):
    rng = random.Random(16)
    rec = random_record(rng)
    line = rec.to_line().replace('"model":"quadric"', '"model":"other"')
    path = tmp_path / "catalog.jsonl"
    path.write_text(line + "\n")
    loaded, errors = load_catalog(str(path))
    if rec.model == "quadric":
        assert errors and errors[0].line_number == 1
    else:
        assert loaded  # replacement was a no-op
