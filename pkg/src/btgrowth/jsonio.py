"""JSON encodings of field elements, valuations, matrices, generator files
and reports."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .bt_tree import Vertex
from .matgroup import GeneratorSet, GroupWord, Mat2
from .valued_field import (QQ, DegreeAtInfinity, Field, FunctionField, PAdic, PolyAdic, RatFunc,
                           Valuation, val)

SCHEMA = "1"


class InputError(ValueError):
    """Malformed or inconsistent user input."""


# ---------------------------------------------------------------------------
# decoding

def parse_field(obj) -> Field:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError(f'field must be {{"kind": ...}}, got {obj!r}')
    kind = obj["kind"]
    if kind in ("rational", "Q"):
        return QQ
    if kind in ("function", "Fp(t)"):
        try:
            return FunctionField(int(obj["p"]))
        except (KeyError, ValueError) as exc:
            raise InputError(f"bad function field {obj!r}: {exc}") from exc
    raise InputError(f"unknown field kind {kind!r}")


def parse_element(obj, field: Field):
    if field == QQ:
        if isinstance(obj, bool) or not isinstance(obj, (int, str)):
            raise InputError(f'rational must be a string like "a/b" or an integer, got {obj!r}')
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {obj!r}") from exc
    if isinstance(obj, int) and not isinstance(obj, bool):
        return field(obj)
    if not isinstance(obj, dict) or "num" not in obj:
        raise InputError(f'function-field element must be {{"num": [...], "den": [...], "p": p}}, got {obj!r}')
    p = int(obj.get("p", field.p))
    if p != field.p:
        raise InputError(f"element over F_{p} in a file over F_{field.p}")
    try:
        return RatFunc([int(c) for c in obj["num"]], [int(c) for c in obj.get("den", [1])], p)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad function-field element {obj!r}: {exc}") from exc


def parse_matrix(obj, field: Field) -> Mat2:
    if (not isinstance(obj, list) or len(obj) != 2
            or not all(isinstance(r, list) and len(r) == 2 for r in obj)):
        raise InputError(f"matrix must be [[a, b], [c, d]], got {obj!r}")
    try:
        return Mat2(*(parse_element(x, field) for row in obj for x in row))
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc


def infer_field(obj) -> Field:
    """Field of a bare matrix: function field if any entry is an object."""
    for row in obj if isinstance(obj, list) else []:
        for x in row if isinstance(row, list) else []:
            if isinstance(x, dict) and "p" in x:
                return FunctionField(int(x["p"]))
    return QQ


def parse_valuation(obj) -> Valuation:
    if isinstance(obj, int) and not isinstance(obj, bool):
        obj = {"kind": "p-adic", "p": obj}
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError(f"bad valuation {obj!r}")
    try:
        kind = obj["kind"]
        if kind == "p-adic":
            return PAdic(int(obj["p"]))
        if kind == "poly":
            return PolyAdic(int(obj["p"]), tuple(int(c) for c in obj["pi"]))
        if kind == "infinity":
            return DegreeAtInfinity(int(obj["p"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"bad valuation {obj!r}: {exc}") from exc
    raise InputError(f"unknown valuation kind {kind!r}")


def loads_located(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def parse_generator_file(obj) -> GeneratorSet:
    if not isinstance(obj, dict):
        raise InputError("generator file must be a JSON object")
    if str(obj.get("schema", SCHEMA)) != SCHEMA:
        raise InputError(f"unsupported schema {obj.get('schema')!r}")
    for key in ("field", "generators"):
        if key not in obj:
            raise InputError(f"generator file lacks {key!r}")
    field = parse_field(obj["field"])
    mats = [parse_matrix(m, field) for m in obj["generators"]]
    try:
        return GeneratorSet(mats, obj.get("names"))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def load_generator_file(path) -> GeneratorSet:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_generator_file(loads_located(text, str(path)))


# ---------------------------------------------------------------------------
# encoding

def element_to_json(x):
    if isinstance(x, Fraction):
        return str(x)
    return {"num": list(x.num), "den": list(x.den), "p": x.p}


def field_to_json(field: Field) -> dict:
    if field == QQ:
        return {"kind": "rational"}
    return {"kind": "function", "p": field.p}


def matrix_to_json(m: Mat2) -> list:
    return [[element_to_json(x) for x in row] for row in m.rows()]


def valuation_to_json(v: Valuation) -> dict:
    if isinstance(v, PAdic):
        return {"kind": "p-adic", "p": v.p}
    if isinstance(v, PolyAdic):
        return {"kind": "poly", "pi": list(v.pi), "p": v.p}
    return {"kind": "infinity", "p": v.p}


def valint_to_json(x):
    return "inf" if x == float("inf") else x


def vertex_to_json(x: Vertex) -> dict:
    if isinstance(x.v, PAdic):
        b = x.b
        k = max(0, -val(b, x.v)) if b else 0
        c = b * x.v.p ** k
        rendered = f"{c}/{x.v.p}^{k}" if k else str(c)
        return {"a": x.a, "b": rendered}
    return {"a": x.a, "b": element_to_json(x.b)}


def generator_file_to_json(S: GeneratorSet) -> dict:
    return {"schema": SCHEMA, "field": field_to_json(S.field), "names": list(S.names),
            "generators": [matrix_to_json(m) for m in S.matrices]}


def word_to_json(S: GeneratorSet, w: GroupWord) -> dict:
    return {"word": S.render(w), "letters": [list(x) for x in w.letters], "length": len(w)}


def certificate_to_json(c) -> dict:
    out = {"kind": c.kind, "depth": c.depth, "words_checked": c.words_checked,
           "separation": c.separation, "signs": list(c.signs),
           "translation_lengths": list(c.translation_lengths)}
    if c.bridge_ends is not None:
        out["bridge"] = [vertex_to_json(x) for x in c.bridge_ends]
    if c.rejected_signs:
        out["rejected_signs"] = [{"signs": list(s), "collision": list(hit)}
                                 for s, hit in c.rejected_signs]
    return out


def witness_to_json(S: GeneratorSet, w) -> dict:
    a, b = w.words
    return {
        "schema": SCHEMA,
        "valuation": valuation_to_json(w.valuation),
        "g_word": word_to_json(S, w.g_word),
        "s_word": word_to_json(S, w.s_word),
        "h_word": word_to_json(S, w.h_word),
        "signs": list(w.signs),
        "pair": [word_to_json(S, a), word_to_json(S, b)],
        "max_length": w.max_length,
        "lower_bound_exponent": str(w.lower_bound_exponent),
        "certificate": certificate_to_json(w.certificate),
    }


def classification_to_json(S: GeneratorSet, r) -> dict:
    return {
        "schema": SCHEMA,
        "valuation": valuation_to_json(r.valuation),
        "outcome": r.outcome,
        "hyperbolic_word": None if r.hyperbolic_word is None else word_to_json(S, r.hyperbolic_word),
        "witness": None if r.witness is None else witness_to_json(S, r.witness),
        "table": [{"name": row.name, "trace_val": valint_to_json(row.trace_val),
                   "det_val": valint_to_json(row.det_val),
                   "translation_length": row.translation_length, "kind": row.kind}
                  for row in r.table],
    }


def trace_diagnostics_to_json(d) -> dict:
    return {
        "radius": d.radius,
        "trace_count": len(d.traces),
        "traces": sorted((element_to_json(t) for t in d.traces), key=json.dumps),
        "min_trace_val": [{"valuation": valuation_to_json(v), "min": valint_to_json(m)}
                          for v, m in d.min_trace_val.items()],
        "stabilized": d.stabilized,
    }


def ball_stats_to_json(b) -> dict:
    return {"schema": SCHEMA, "mode": b.mode, "radii": list(b.radii), "sizes": list(b.sizes),
            "rate_estimates": list(b.rate_estimates)}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
