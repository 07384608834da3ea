"""JSON and CSV report emission.

Floats are written with 17 significant digits, so every value read back is
bit-identical to the one written. Non-finite floats become the strings
``"NaN"``, ``"Infinity"`` and ``"-Infinity"``; :func:`loads` maps them back.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile

import jsonschema

SCHEMA_VERSION = 1

_NONFINITE = {"NaN": math.nan, "Infinity": math.inf, "-Infinity": -math.inf}

_num = {"type": ["number", "string"]}
_opt_num = {"type": ["number", "string", "null"]}
_cplx = {"type": "array", "items": _num, "minItems": 2, "maxItems": 2}
_strict = {"additionalProperties": False}

VERDICT_SCHEMA = {
    "type": "object",
    **_strict,
    "required": [
        "theorem", "hyp_sup", "hyp_bound", "hyp_holds", "hyp_undefined", "concl_sup",
        "concl_bound", "concl_holds", "consistent", "witness_hyp", "witness_concl",
        "reliability", "reliable", "n", "w_vanish", "points",
    ],
    "properties": {
        "theorem": {"type": "integer"},
        "hyp_sup": _num,
        "hyp_bound": _num,
        "hyp_holds": {"type": "boolean"},
        "hyp_undefined": {"type": "array", "items": _cplx},
        "concl_sup": _num,
        "concl_bound": _num,
        "concl_holds": {"type": "boolean"},
        "consistent": {"type": "boolean"},
        "witness_hyp": _cplx,
        "witness_concl": _cplx,
        "reliability": _num,
        "reliable": {"type": "boolean"},
        "n": {"type": "integer"},
        "w_vanish": {"type": "integer"},
        "points": {"type": "integer"},
    },
}

JACK_SCHEMA = {
    "type": "object",
    **_strict,
    "required": ["r", "z0", "wmax", "quotient", "k_est", "imag_residual", "order_ok",
                 "vanish", "flat", "degenerate"],
    "properties": {
        "r": _num, "z0": _cplx, "wmax": _num, "quotient": _cplx, "k_est": _num,
        "imag_residual": _num, "order_ok": {"type": "boolean"}, "vanish": {"type": "integer"},
        "flat": {"type": "boolean"}, "degenerate": {"type": "boolean"},
    },
}

_COUNTS = {"type": "object", "additionalProperties": {"type": "integer"}}

RESULTS_SCHEMAS = {
    "check": {
        "type": "object", **_strict,
        "required": ["verdict", "starlike_margin"],
        "properties": {"verdict": VERDICT_SCHEMA, "starlike_margin": _opt_num},
    },
    "sweep": {
        "type": "object", **_strict,
        "required": ["rows", "counts"],
        "properties": {"rows": {"type": "integer"}, "counts": _COUNTS},
    },
    "jack": {
        "type": "object", **_strict,
        "required": ["reports", "all_real", "all_order_ok"],
        "properties": {
            "reports": {"type": "array", "items": JACK_SCHEMA},
            "all_real": {"type": "boolean"},
            "all_order_ok": {"type": "boolean"},
        },
    },
    "identity": {
        "type": "object", **_strict,
        "required": ["direction", "mu", "max_residual", "tolerance", "holds"],
        "properties": {
            "direction": {"type": "string"}, "mu": _num, "max_residual": _num,
            "tolerance": _num, "holds": {"type": "boolean"},
        },
    },
    "campaign": {
        "type": "object", **_strict,
        "required": ["counts", "rejected_g", "failures"],
        "properties": {
            "counts": _COUNTS,
            "rejected_g": {"type": "integer"},
            "failures": {"type": "array", "items": {"type": "integer"}},
        },
    },
}

REPORT_SCHEMA = {
    "type": "object",
    **_strict,
    "required": ["schema_version", "command", "exit_code", "status", "results",
                 "reliability", "errors", "timing"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {
            "type": "object", **_strict, "required": ["name", "args"],
            "properties": {"name": {"enum": sorted(RESULTS_SCHEMAS)}, "args": {"type": "object"}},
        },
        "exit_code": {"enum": [0, 1, 2, 3]},
        "status": {"type": "string"},
        "results": {"type": ["object", "null"]},
        "reliability": {
            "type": "object", **_strict,
            "required": ["max_tail_bound", "threshold", "reliable"],
            "properties": {"max_tail_bound": _opt_num,
                           "threshold": _num, "reliable": {"type": "boolean"}},
        },
        "errors": {"type": "array", "items": {"type": "string"}},
        "timing": {
            "type": "object", **_strict, "required": ["elapsed_s"],
            "properties": {"elapsed_s": _num},
        },
    },
}


def validate(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` unless ``report`` matches the schema."""
    jsonschema.validate(report, REPORT_SCHEMA)
    results = report.get("results")
    if results is not None:
        jsonschema.validate(results, RESULTS_SCHEMAS[report["command"]["name"]])


def _float(x: float) -> str:
    if math.isnan(x):
        return '"NaN"'
    if math.isinf(x):
        return '"Infinity"' if x > 0 else '"-Infinity"'
    text = format(x, ".17g")
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def _encode(obj, out: list, indent: int, level: int):
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_float(obj))
    elif isinstance(obj, complex):
        _encode([obj.real, obj.imag], out, indent, level)
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            out.append(("," if i else "") + pad + json.dumps(str(k), ensure_ascii=False) + ": ")
            _encode(v, out, indent, level + 1)
        out.append(end + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[")
        for i, v in enumerate(obj):
            out.append(("," if i else "") + pad)
            _encode(v, out, indent, level + 1)
        out.append(end + "]")
    elif hasattr(obj, "item"):
        _encode(obj.item(), out, indent, level)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    out: list[str] = []
    _encode(obj, out, indent, 0)
    return "".join(out) + "\n"


def _restore(obj):
    if isinstance(obj, str) and obj in _NONFINITE:
        return _NONFINITE[obj]
    if isinstance(obj, list):
        return [_restore(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _restore(v) for k, v in obj.items()}
    return obj


def loads(text: str):
    return _restore(json.loads(text))


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)  # excel dialect: CRLF rows, quotes only when needed
    writer.writerow(header)
    for row in rows:
        writer.writerow([_float(v).strip('"') if isinstance(v, float) else v for v in row])
    return buf.getvalue()
