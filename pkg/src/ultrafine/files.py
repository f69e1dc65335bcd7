"""Algebra files (JSON or TOML) and the JSON report document."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import catalog
from .chain import ChainReport, LayerEntry, OpennessReport
from .lie import (
    JordanHolderFlag,
    LieAlgebra,
    find_jh_flag,
    from_brackets,
    validate_algebra,
    validate_jh_flag,
)
from .linalg import to_scalar
from .stratify import UltrafineLabel


class ParseError(ValueError):
    def __init__(self, message: str, field: str = "", source: str = ""):
        self.field = field
        self.source = source
        where = f"{source}: " if source else ""
        at = f"field {field}: " if field else ""
        super().__init__(f"{where}{at}{message}")


@dataclass
class AlgebraSpec:
    algebra: LieAlgebra
    flag: Any = None
    known_length: int | None = None
    raw: dict | None = None

    def jh_flag(self) -> JordanHolderFlag:
        """The declared flag if there is one, otherwise the greedy search result."""
        if self.flag is None:
            return find_jh_flag(self.algebra)
        return validate_jh_flag(self.algebra, self.flag)


def fstr(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _scalar(value, field, source):
    if isinstance(value, float):
        raise ParseError("floats are not allowed; write rationals as \"p/q\" strings",
                         field, source)
    try:
        return to_scalar(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {value!r} ({exc})", field, source) from None


def _index(value, basis, field, source) -> int:
    if isinstance(value, str):
        if value not in basis:
            raise ParseError(f"unknown basis element {value!r}", field, source)
        return basis.index(value)
    if isinstance(value, int) and not isinstance(value, bool) and 0 <= value < len(basis):
        return value
    raise ParseError(f"bad basis index {value!r}", field, source)


def parse_algebra(data: dict, source: str = "") -> AlgebraSpec:
    if not isinstance(data, dict):
        raise ParseError("top level must be an object", "", source)
    if "basis" not in data:
        raise ParseError("missing", "basis", source)
    basis = data["basis"]
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis) or not basis:
        raise ParseError("must be a nonempty list of names", "basis", source)
    if len(set(basis)) != len(basis):
        raise ParseError("duplicate basis names", "basis", source)
    m = len(basis)
    if "dim" in data and data["dim"] != m:
        raise ParseError(f"dim {data['dim']} disagrees with {m} basis names", "dim", source)
    brackets = {}
    for n, entry in enumerate(data.get("brackets", [])):
        f = f"brackets[{n}]"
        if not isinstance(entry, dict) or not {"i", "j", "coeffs"} <= set(entry):
            raise ParseError("each bracket needs i, j and coeffs", f, source)
        i = _index(entry["i"], basis, f + ".i", source)
        j = _index(entry["j"], basis, f + ".j", source)
        if i >= j:
            raise ParseError(f"need i < j, got ({i}, {j}); antisymmetry is implied", f, source)
        if (i, j) in brackets:
            raise ParseError(f"bracket ({i}, {j}) given twice", f, source)
        coeffs = entry["coeffs"]
        if isinstance(coeffs, dict):
            vec = [Fraction(0)] * m
            for key, c in coeffs.items():
                vec[_index(key, basis, f"{f}.coeffs.{key}", source)] = _scalar(
                    c, f"{f}.coeffs.{key}", source)
        elif isinstance(coeffs, list):
            if len(coeffs) != m:
                raise ParseError(f"expected {m} coefficients, got {len(coeffs)}",
                                 f + ".coeffs", source)
            vec = [_scalar(c, f"{f}.coeffs[{t}]", source) for t, c in enumerate(coeffs)]
        else:
            raise ParseError("coeffs must be a list or an object", f + ".coeffs", source)
        brackets[(i, j)] = vec
    algebra = validate_algebra(from_brackets(basis, brackets), basis, data.get("name", ""))
    flag = data.get("flag")
    if flag is not None:
        if not isinstance(flag, list) or len(flag) != m:
            raise ParseError(f"flag must list {m} entries", "flag", source)
        if all(isinstance(r, list) for r in flag):
            flag = [[_scalar(c, f"flag[{a}][{b}]", source) for b, c in enumerate(r)]
                    for a, r in enumerate(flag)]
        else:
            flag = [_index(v, basis, f"flag[{a}]", source) for a, v in enumerate(flag)]
    return AlgebraSpec(algebra, flag, data.get("known_length"), data)


def _read_toml(text: str) -> dict:
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    return tomllib.loads(text)


def load_algebra(path: str) -> AlgebraSpec:
    """Read ``catalog:<name>``, a .json file, or a .toml file."""
    if path.startswith("catalog:"):
        name = path[len("catalog:"):]
        try:
            data = catalog.get(name)
        except (KeyError, ValueError) as exc:
            raise ParseError(str(exc.args[0]), "", path) from None
        return parse_algebra(data, path)
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file ({exc.strerror})", "", path) from None
    if p.suffix.lower() == ".toml":
        try:
            data = _read_toml(text)
        except Exception as exc:
            raise ParseError(f"invalid TOML: {exc}", "", path) from None
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                             "", path) from None
    return parse_algebra(data, path)


def algebra_to_dict(algebra: LieAlgebra) -> dict:
    m = algebra.dim
    brackets = []
    for i in range(m):
        for j in range(i + 1, m):
            v = algebra.structure[i][j]
            if any(v):
                brackets.append({"i": i, "j": j, "coeffs": [fstr(c) for c in v]})
    return {"name": algebra.name, "dim": m, "basis": list(algebra.basis_names),
            "brackets": brackets}


def vec_to_json(v) -> list:
    return [fstr(x) for x in v]


def vec_from_json(v) -> tuple:
    return tuple(Fraction(x) for x in v)


def subspace_to_json(s) -> list:
    return [vec_to_json(r) for r in s.basis]


def label_to_json(label: UltrafineLabel, k: tuple) -> dict:
    return {"k": list(k), "e": list(label.e),
            "jmap": {str(n + 1): j for n, j in enumerate(label.jmap)}, "b": list(label.b)}


def label_from_json(data: dict) -> tuple:
    jmap = tuple(data["jmap"][str(n + 1)] for n in range(len(data["jmap"])))
    return UltrafineLabel(tuple(data["e"]), jmap, tuple(data["b"])), tuple(data["k"])


def flag_to_json(flag: JordanHolderFlag) -> dict:
    return {"names": list(flag.names), "basis": [vec_to_json(r) for r in flag.basis]}


def _violation_to_json(v: dict) -> dict:
    return {"witness": vec_to_json(v["witness"]), "delta": vec_to_json(v["delta"]),
            "from": _short(v["from"]),
            "to": _short(v["to"]), "to_position": v["to_position"]}


def _short(label: UltrafineLabel) -> dict:
    return {"e": list(label.e), "jmap": {str(n + 1): j for n, j in enumerate(label.jmap)},
            "b": list(label.b)}


def _short_from_json(d: dict) -> UltrafineLabel:
    return UltrafineLabel(tuple(d["e"]),
                          tuple(d["jmap"][str(n + 1)] for n in range(len(d["jmap"]))),
                          tuple(d["b"]))


def report_to_json(report: ChainReport) -> dict:
    flag = report.flag
    layers = []
    for entry in report.layers:
        layers.append({
            "label": label_to_json(entry.label, entry.fine_index),
            "orbit_dim": entry.orbit_dim,
            "character": entry.is_character_layer,
            "sample_count": entry.sample_count,
            "witnesses": [vec_to_json(w) for w in entry.witnesses],
            "subquotient": entry.subquotient,
        })
    return {
        "algebra": algebra_to_dict(flag.algebra),
        "flag": flag_to_json(flag),
        "roots": [vec_to_json(r) for r in flag.roots],
        "layers": layers,
        "chain_length": report.chain_length,
        "known_length": report.known_length,
        "openness": {
            "checked": report.openness.checked,
            "violations": [_violation_to_json(v) for v in report.openness.violations],
        },
        "disclaimers": list(report.disclaimers),
    }


def report_from_json(data: dict) -> ChainReport:
    spec = parse_algebra(data["algebra"])
    flag = validate_jh_flag(spec.algebra, [vec_from_json(r) for r in data["flag"]["basis"]])
    if [vec_to_json(r) for r in flag.roots] != data["roots"]:
        raise ParseError("roots disagree with the algebra and flag", "roots")
    layers = []
    for n, d in enumerate(data["layers"]):
        label, k = label_from_json(d["label"])
        entry = LayerEntry(label, k, d["orbit_dim"], [vec_from_json(w) for w in d["witnesses"]],
                           d["sample_count"])
        if entry.is_character_layer != d["character"]:
            raise ParseError("character flag disagrees with orbit_dim", f"layers[{n}]")
        layers.append(entry)
    openness = OpennessReport(data["openness"]["checked"], [
        {"witness": vec_from_json(v["witness"]), "delta": vec_from_json(v["delta"]),
         "from": _short_from_json(v["from"]), "to": _short_from_json(v["to"]),
         "to_position": v["to_position"]}
        for v in data["openness"]["violations"]])
    if data["chain_length"] != len(layers):
        raise ParseError("chain_length disagrees with the layer list", "chain_length")
    return ChainReport(flag, layers, openness, data.get("known_length"),
                       tuple(data["disclaimers"]))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2)
