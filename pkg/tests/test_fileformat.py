import json

import pytest

from persplit.corpus import GeneratorProfile, quadric_cone, random_instance
from persplit.errors import ParseError
from persplit.fileformat import (FORMAT_NAME, FORMAT_VERSION, instance_hash,
                                 load, make_report, parse, parse_instance,
                                 save, serialize, serialize_instance)
from persplit.graded import GradedMap
from persplit.linalg import Matrix


FULL_PROFILE = GeneratorProfile(with_hodge=True, with_pairing=True)


def test_serialized_header_and_determinism():
    inst = quadric_cone(1).instance
    text = serialize(inst)
    doc = json.loads(text)
    assert doc["format"] == FORMAT_NAME and doc["version"] == FORMAT_VERSION
    assert serialize(inst) == text  # byte-identical on repeat
    assert text.endswith("\n")
    assert instance_hash(inst).startswith("sha256:")


def test_round_trip_quadric_cone():
    inst = quadric_cone(2).instance
    again = parse(serialize(inst))
    assert again.center == inst.center
    assert again.space == inst.space
    assert again.space.labels == inst.space.labels
    assert again.filtration == inst.filtration
    assert again.eta == inst.eta
    assert again.hodge == inst.hodge
    assert again.pairing == inst.pairing
    assert serialize(again) == serialize(inst)


def test_round_trip_seeded_instances_bit_exact():
    for seed in range(40):
        inst = random_instance(seed, FULL_PROFILE).instance
        assert serialize(parse(serialize(inst))) == serialize(inst)


def test_round_trip_groups():
    inst = quadric_cone(1).instance
    swap = Matrix.from_rows([[1, 0, 0], [0, 0, 1], [0, 1, 0]], 3)
    gens = (GradedMap(0, {2: swap, 4: swap}, inst.space),)
    from persplit.instance import PerverseLefschetzInstance
    dressed = PerverseLefschetzInstance(
        center=inst.center, space=inst.space, filtration=inst.filtration,
        eta=inst.eta, groups={"ruling-swap": gens})
    again = parse(serialize(dressed))
    assert set(again.groups) == {"ruling-swap"}
    assert again.groups["ruling-swap"][0].block(2) == swap


def test_save_and_load(tmp_path):
    inst = quadric_cone(3).instance
    path = tmp_path / "instance.json"
    save(inst, path)
    assert load(path).eta == inst.eta


def test_parse_rejects_wrong_format_and_version():
    doc = serialize_instance(quadric_cone(1).instance)
    bad = dict(doc, format="something-else")
    with pytest.raises(ParseError) as exc:
        parse_instance(bad)
    assert exc.value.pointer == "/format"
    bad = dict(doc, version=99)
    with pytest.raises(ParseError) as exc:
        parse_instance(bad)
    assert exc.value.pointer == "/version"


def test_parse_error_pointers_locate_bad_entries():
    doc = serialize_instance(quadric_cone(1).instance)
    doc["eta"][0]["matrix"][0][0] = "1/0"
    with pytest.raises(ParseError) as exc:
        parse_instance(doc)
    assert exc.value.pointer == "/eta/0/matrix/0/0"


def test_parse_rejects_duplicate_and_unknown_degrees():
    doc = serialize_instance(quadric_cone(1).instance)
    doc["degrees"].append({"d": 2, "dim": 3})
    with pytest.raises(ParseError) as exc:
        parse_instance(doc)
    assert exc.value.pointer == "/degrees/4/d"
    doc = serialize_instance(quadric_cone(1).instance)
    doc["filtration"][0]["d"] = 8
    with pytest.raises(ParseError) as exc:
        parse_instance(doc)
    assert exc.value.pointer.startswith("/filtration/0")


def test_parse_rejects_pairing_center_mismatch():
    doc = serialize_instance(quadric_cone(1).instance)
    doc["pairing"]["n"] = 2
    with pytest.raises(ParseError) as exc:
        parse_instance(doc)
    assert exc.value.pointer == "/pairing/n"


def test_parse_rejects_invalid_json():
    with pytest.raises(ParseError, match="not valid JSON"):
        parse("{not json")


def test_hodge_requires_pieces_in_every_degree():
    doc = serialize_instance(quadric_cone(1).instance)
    doc["hodge"] = [rec for rec in doc["hodge"] if rec["d"] != 6]
    with pytest.raises(ParseError) as exc:
        parse_instance(doc)
    assert exc.value.pointer == "/hodge"


def test_make_report_structure():
    inst = quadric_cone(1).instance
    report = make_report("verify", inst,
                         [("hl", "pass", ""), ("hodge", "skipped", "no flag")],
                         seed=7)
    assert report["passed"] is True
    assert report["instance_hash"] == instance_hash(inst)
    assert report["seed"] == 7
    assert report["checks"][1] == {"name": "hodge", "verdict": "skipped",
                                   "detail": "no flag"}
    failing = make_report("verify", inst, [("hl", "fail", "witness")])
    assert failing["passed"] is False
