"""JSON descriptor files: schema, parsing, and round-trip serialisation.

A descriptor document has exactly three top-level keys::

    {"group": {...}, "endo": {...}, "options": {...}}

``options`` may be omitted.  Unknown keys anywhere are rejected, and
lattice-map entries must be JSON integers (``2``, never ``2.0``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import jsonschema

from .config import DEFAULT, Tolerances
from .errors import InputError
from .groups import (
    ABELIAN,
    COMPACT,
    GENERAL,
    NILPOTENT,
    REDUCTIVE,
    SEMISIMPLE_LINEAR,
    TORUS,
    VECTOR,
    AbelianEndo,
    CompactEndo,
    GeneralEndo,
    GroupDescriptor,
    NilpotentEndo,
    ReductiveEndo,
    SemisimpleEndo,
)

_int_matrix = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_real_matrix = {"type": "array", "items": {"type": "array", "items": {"type": "number"}}}
_dim = {"type": "integer", "minimum": 0}


def _obj(required, **props):
    return {"type": "object", "properties": props, "required": list(required), "additionalProperties": False}


_abelian_groups = [
    _obj(["type", "p"], type={"const": TORUS}, p=_dim),
    _obj(["type", "q"], type={"const": VECTOR}, q=_dim),
    _obj(["type", "p", "q"], type={"const": ABELIAN}, p=_dim, q=_dim),
]
_semisimple_group = _obj(["type", "n"], type={"const": SEMISIMPLE_LINEAR}, n={"type": "integer", "minimum": 1})
_abelian_endo = _obj(["type"], type={"const": ABELIAN}, T=_int_matrix, B=_real_matrix, S=_real_matrix)
_semisimple_endo = _obj(
    ["type", "g"],
    type={"const": SEMISIMPLE_LINEAR},
    form={"enum": ["CONJUGATION", "POWER_OF_CONJUGATION"]},
    k={"type": "integer", "minimum": 1},
    g=_real_matrix,
)

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Lie group endomorphism descriptor",
    "type": "object",
    "additionalProperties": False,
    "required": ["group", "endo"],
    "properties": {
        "group": {
            "oneOf": _abelian_groups
            + [
                _obj(["type", "p", "n"], type={"const": NILPOTENT}, p=_dim, n=_dim),
                _semisimple_group,
                _obj(
                    ["type", "center", "derived"],
                    type={"const": REDUCTIVE},
                    center={"oneOf": _abelian_groups},
                    derived=_semisimple_group,
                    pi_proper={"type": "boolean"},
                ),
                _obj(["type", "p"], type={"const": COMPACT}, p=_dim),
                _obj(["type", "p", "p_quotient"], type={"const": GENERAL}, p=_dim, p_quotient=_dim),
            ]
        },
        "endo": {
            "oneOf": [
                _abelian_endo,
                _obj(["type", "toral_map"], type={"const": NILPOTENT}, toral_map=_int_matrix, differential=_real_matrix),
                _semisimple_endo,
                _obj(["type", "center", "derived"], type={"const": REDUCTIVE}, center=_abelian_endo, derived=_semisimple_endo),
                _obj(["type", "toral_map"], type={"const": COMPACT}, toral_map=_int_matrix),
                _obj(
                    ["type", "toral_R_prime", "toral_R_mod_R_prime"],
                    type={"const": "GENERAL_CONJECTURE"},
                    toral_R_prime=_int_matrix,
                    toral_R_mod_R_prime=_int_matrix,
                ),
            ]
        },
        "options": _obj(
            [],
            tolerance={"type": "number", "exclusiveMinimum": 0},
            log_base={"enum": ["e", "2"]},
            exact_cyclotomic={"type": "boolean"},
        ),
    },
}


_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


@dataclass(frozen=True)
class Options:
    tolerance: float = DEFAULT.rel
    log_base: str = "e"
    exact_cyclotomic: bool = False

    def tolerances(self) -> Tolerances:
        return DEFAULT.with_(rel=self.tolerance)

    def to_dict(self) -> dict:
        return {"tolerance": self.tolerance, "log_base": self.log_base, "exact_cyclotomic": self.exact_cyclotomic}


@dataclass(frozen=True)
class Descriptor:
    group: GroupDescriptor
    endo: object
    options: Options = Options()

    def to_dict(self) -> dict:
        return {"group": self.group.to_dict(), "endo": self.endo.to_dict(), "options": self.options.to_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


class ParseError(InputError):
    code = "PARSE_ERROR"


def _group_from(d: dict) -> GroupDescriptor:
    kind = d["type"]
    if kind == REDUCTIVE:
        return GroupDescriptor(
            REDUCTIVE,
            center=_group_from(d["center"]),
            derived=_group_from(d["derived"]),
            pi_proper=d.get("pi_proper", True),
        )
    return GroupDescriptor(kind, p=d.get("p", 0), q=d.get("q", 0), n=d.get("n", 0), p_quotient=d.get("p_quotient", 0))


def _semisimple_from(d: dict) -> SemisimpleEndo:
    form = d.get("form", "CONJUGATION" if "k" not in d else "POWER_OF_CONJUGATION")
    if form == "CONJUGATION" and d.get("k", 1) != 1:
        raise ParseError("CONJUGATION form takes no power k (use POWER_OF_CONJUGATION)")
    if form == "POWER_OF_CONJUGATION" and "k" not in d:
        raise ParseError("POWER_OF_CONJUGATION needs k")
    return SemisimpleEndo(d["g"], d.get("k", 1))


def _endo_from(d: dict):
    kind = d["type"]
    if kind == ABELIAN:
        return AbelianEndo(d.get("T", []), d.get("B"), d.get("S", []))
    if kind == NILPOTENT:
        return NilpotentEndo(d["toral_map"], d.get("differential"))
    if kind == SEMISIMPLE_LINEAR:
        return _semisimple_from(d)
    if kind == REDUCTIVE:
        return ReductiveEndo(_endo_from(d["center"]), _semisimple_from(d["derived"]))
    if kind == COMPACT:
        return CompactEndo(d["toral_map"])
    return GeneralEndo(d["toral_R_prime"], d["toral_R_mod_R_prime"])


def _reject_float_integers(doc) -> None:
    """Lattice entries must be JSON integers; the schema's "integer" admits 2.0."""
    endo = doc.get("endo", {})
    stack = [endo]
    while stack:
        node = stack.pop()
        for key, val in node.items():
            if isinstance(val, dict):
                stack.append(val)
            elif key in ("T", "toral_map", "toral_R_prime", "toral_R_mod_R_prime"):
                for row in val:
                    for x in row:
                        if not isinstance(x, int) or isinstance(x, bool):
                            raise ParseError(f"lattice map {key} entry {x!r} is not an exact JSON integer")


def descriptor_from_dict(doc) -> Descriptor:
    exc = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(doc))
    if exc is not None:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ParseError(f"schema violation at {where}: {exc.message}")
    _reject_float_integers(doc)
    opts = Options(**doc.get("options", {}))
    return Descriptor(_group_from(doc["group"]), _endo_from(doc["endo"]), opts)


def parse_descriptor(text: str) -> Descriptor:
    """Parse a descriptor document; JSON syntax errors report line and column."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return descriptor_from_dict(doc)


def load_descriptor(path) -> Descriptor:
    with open(path, encoding="utf-8") as fh:
        return parse_descriptor(fh.read())


def schema_json() -> str:
    return json.dumps(SCHEMA, indent=2)
