import csv
import io
import json
import math

import jsonschema
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from stconvex.report import csv_text, dumps, loads, validate, write_atomic

floats = st.floats(allow_nan=True, allow_infinity=True, width=64)
json_values = st.recursive(
    st.none() | st.booleans() | st.integers(-10**12, 10**12) | floats | st.text(max_size=8),
    lambda inner: st.lists(inner, max_size=4) | st.dictionaries(st.text(max_size=6), inner, max_size=4),
    max_leaves=12,
)


def same(a, b):
    if isinstance(a, float) and math.isnan(a):
        return isinstance(b, float) and math.isnan(b)
    if isinstance(a, list):
        return isinstance(b, list) and len(a) == len(b) and all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, dict):
        return isinstance(b, dict) and a.keys() == b.keys() and all(same(a[k], b[k]) for k in a)
    return type(a) is type(b) and a == b


@settings(max_examples=200, deadline=None)
@given(json_values)
def test_round_trip_lossless(value):
    # the three non-finite spellings are reserved strings
    assume(not _has_reserved(value))
    assert same(loads(dumps(value)), value)


def _has_reserved(v):
    if isinstance(v, str):
        return v in ("NaN", "Infinity", "-Infinity")
    if isinstance(v, list):
        return any(_has_reserved(x) for x in v)
    if isinstance(v, dict):
        return any(_has_reserved(x) for x in v.values())
    return False


@settings(max_examples=300, deadline=None)
@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_bits_survive(x):
    assert loads(dumps(x)) == x


def test_complex_and_numpy_values():
    import numpy as np

    text = dumps({"z": 1 + 2j, "a": np.float64(0.1), "b": np.bool_(True), "n": np.int64(3)})
    assert json.loads(text) == {"z": [1.0, 2.0], "a": 0.1, "b": True, "n": 3}
    assert "0.10000000000000001" in text


def minimal_report(**over):
    r = {
        "schema_version": 1,
        "command": {"name": "identity", "args": {}},
        "exit_code": 0,
        "status": "ok",
        "results": {"direction": "forward", "mu": 1.0, "max_residual": 0.0, "tolerance": 1e-9, "holds": True},
        "reliability": {"max_tail_bound": 0.0, "threshold": 1e-7, "reliable": True},
        "errors": [],
        "timing": {"elapsed_s": 0.1},
    }
    r.update(over)
    return r


def test_schema_rejects_unknown_fields():
    validate(minimal_report())
    with pytest.raises(jsonschema.ValidationError):
        validate(minimal_report(extra=1))
    bad = minimal_report()
    bad["results"]["surprise"] = 1
    with pytest.raises(jsonschema.ValidationError):
        validate(bad)
    with pytest.raises(jsonschema.ValidationError):
        validate(minimal_report(schema_version=2))


def test_csv_quoting_and_line_endings():
    text = csv_text(["a", "b"], [[1.5, 'say "hi", then'], [float("nan"), ""]])
    assert text.endswith("\r\n") and text.count("\r\n") == 3
    rows = list(csv.reader(io.StringIO(text, newline="")))
    assert rows[1] == ["1.5", 'say "hi", then'] and rows[2] == ["NaN", ""]


def test_write_atomic(tmp_path):
    path = tmp_path / "out.json"
    write_atomic(str(path), "first")
    write_atomic(str(path), "second")
    assert path.read_text() == "second"
    assert [p.name for p in tmp_path.iterdir()] == ["out.json"]
