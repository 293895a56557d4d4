import json

import numpy as np
import pytest

from umeb import BipartiteDims, DocumentError, available_constructions, io

from conftest import rectangular_dims


def all_sets():
    for dims in rectangular_dims(6):
        for option in available_constructions(dims):
            yield option.build(dims)


@pytest.mark.parametrize("state_set", list(all_sets()), ids=lambda s: f"{s.dims}-{s.provenance}-{s.m_param}")
def test_round_trip_is_byte_identical(state_set):
    text = io.dumps(state_set)
    parsed = io.loads(text)
    assert io.dumps(parsed) == text
    np.testing.assert_array_equal(parsed.matrix(), state_set.matrix())
    assert parsed.labels == state_set.labels
    assert parsed.provenance == state_set.provenance and parsed.m_param == state_set.m_param


def test_document_layout(prop2_2x4):
    doc = json.loads(io.dumps(prop2_2x4))
    assert doc["schema_version"] == "1"
    assert (doc["d"], doc["d_prime"], doc["m"], doc["provenance"]) == (2, 4, 3, "prop2")
    assert len(doc["states"]) == 6
    assert all(len(s["amplitudes"]) == 8 for s in doc["states"])
    assert doc["states"][4]["label"] == "phi(i=0,j=2)"


def test_imported_round_trip(three_bell, tmp_path):
    path = tmp_path / "bell.json"
    io.dump(three_bell, path)
    parsed = io.load(path)
    assert [str(l) for l in parsed.labels] == ["bell0", "bell1", "bell2"]
    assert parsed.dims == BipartiteDims(2, 2)


def _doc(prop1_2x5):
    return json.loads(io.dumps(prop1_2x5))


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda d: d["states"][2]["amplitudes"].__setitem__(0, [1.0, 0.0]), r"states\[2\]: state is not normalized"),
        (lambda d: d["states"][1]["amplitudes"].pop(), r"states\[1\]\.amplitudes: expected 10"),
        (lambda d: d.pop("d_prime"), "missing field 'd_prime'"),
        (lambda d: d.__setitem__("schema_version", "2"), "unsupported version"),
        (lambda d: d.__setitem__("d", "2"), r"document\.d: expected int"),
        (lambda d: d["states"][0]["amplitudes"].__setitem__(3, [1.0]), r"states\[0\]\.amplitudes\[3\]"),
        (lambda d: d.__setitem__("provenance", "magic"), "provenance"),
        (lambda d: d["states"].pop(), "q\\*d\\^2"),
        (lambda d: d.__setitem__("d", 6), "d <= d_prime"),
    ],
)
def test_malformed_documents(prop1_2x5, mutate, message):
    doc = _doc(prop1_2x5)
    mutate(doc)
    with pytest.raises(DocumentError, match=message):
        io.loads(json.dumps(doc))


def test_invalid_json_reports_line():
    with pytest.raises(DocumentError, match="line 2"):
        io.loads('{\n  "d": ,\n}')


def test_missing_file(tmp_path):
    with pytest.raises(DocumentError, match="cannot read"):
        io.load(tmp_path / "nope.json")
