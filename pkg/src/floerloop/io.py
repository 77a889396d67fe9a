"""JSON formats for coalgebras, systems, comparison matrices and pages.

Schemas are checked with ``jsonschema`` before any mathematical validation,
so a malformed file is reported by field rather than as a stack trace.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema

from .comparison import ComparisonData
from .complex import Generator, GeneratorSystem
from .dga import DGAlgebra, DGAMorphism, DGCoalgebra, FreeDGA, TensorDGA, cobar, tensor_algebras
from .spectral import PageSet

NAME = {"type": "string", "pattern": "^[A-Za-z0-9_]+$"}
WORDS = {"type": "array", "items": {"type": "array", "items": {"type": "string"}}}

COALGEBRA_SCHEMA = {
    "type": "object",
    "required": ["basis"],
    "properties": {
        "basis": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["name", "degree"],
                "properties": {"name": NAME, "degree": {"type": "integer", "minimum": 0}},
                "additionalProperties": False,
            },
        },
        "coproduct": {
            "type": "object",
            "additionalProperties": {
                "type": "array",
                "items": {"type": "array", "items": NAME, "minItems": 2, "maxItems": 2},
            },
        },
        "differential": {"type": "object", "additionalProperties": {"type": "array", "items": NAME}},
    },
    "additionalProperties": False,
}

RING_SCHEMA = {
    "$id": "urn:floerloop:ring",
    "$defs": {
        "ring": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["type", "coalgebra"],
                    "properties": {
                        "type": {"const": "cobar"},
                        "coalgebra": COALGEBRA_SCHEMA,
                        "cap": {"type": "integer", "minimum": 0},
                    },
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "required": ["type", "factors"],
                    "properties": {
                        "type": {"const": "tensor"},
                        "factors": {"type": "array", "minItems": 2, "items": {"$ref": "#/$defs/ring"}},
                        "cap": {"type": "integer", "minimum": 0},
                    },
                    "additionalProperties": False,
                },
            ]
        }
    },
    "$ref": "#/$defs/ring",
}

SYSTEM_SCHEMA = {
    "type": "object",
    "required": ["ring", "generators"],
    "properties": {
        "ring": RING_SCHEMA,
        "generators": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["name", "mu"],
                "properties": {"name": NAME, "mu": {"type": "integer"}, "action": {"type": ["number", "null"]}},
                "additionalProperties": False,
            },
        },
        "A": {"type": "object", "additionalProperties": WORDS},
    },
    "additionalProperties": False,
}

COMPARISON_SCHEMA = {
    "type": "object",
    "required": ["B"],
    "properties": {
        "degree": {"type": "integer"},
        "B": {"type": "object", "additionalProperties": WORDS},
        "ring_map": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["images"],
                    "properties": {"images": {"type": "object", "additionalProperties": WORDS}},
                    "additionalProperties": False,
                },
            ]
        },
    },
    "additionalProperties": False,
}

PAGES_SCHEMA = {
    "type": "object",
    "required": ["cap", "p_range", "pages"],
    "properties": {
        "cap": {"type": "integer"},
        "p_range": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "pages": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["r", "cells"],
                "properties": {
                    "r": {"type": "integer", "minimum": 1},
                    "cells": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["p", "q", "dim", "d_rank", "certified"],
                            "properties": {
                                "p": {"type": "integer"},
                                "q": {"type": "integer"},
                                "dim": {"type": "integer", "minimum": 0},
                                "d_rank": {"type": "integer", "minimum": 0},
                                "certified": {"type": "boolean"},
                            },
                        },
                    },
                },
            },
        },
    },
}


class InputError(ValueError):
    """Unreadable, malformed or schema-violating input."""


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: cannot read ({e.strerror})") from e
    except UnicodeDecodeError as e:
        raise InputError(f"{path}: not UTF-8") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e


def _where(err: jsonschema.ValidationError) -> str:
    return "/".join(str(p) for p in err.absolute_path) or "<root>"


def check_schema(data: Any, schema: dict, what: str) -> None:
    v = jsonschema.Draft202012Validator(schema)
    errors = sorted(v.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        msg = "; ".join(f"{_where(e)}: {e.message}" for e in errors[:5])
        raise InputError(f"{what} does not match its schema: {msg}")


def detect_kind(data: Any) -> str:
    """'system', 'coalgebra' or 'pages', by top-level keys."""
    if isinstance(data, dict):
        if "generators" in data:
            return "system"
        if "basis" in data:
            return "coalgebra"
        if "pages" in data:
            return "pages"
    raise InputError("cannot tell what this JSON describes (expected a system, coalgebra or page set)")


# ---------------------------------------------------------------- coalgebras


def coalgebra_from_json(data: Any) -> DGCoalgebra:
    check_schema(data, COALGEBRA_SCHEMA, "coalgebra")
    try:
        return DGCoalgebra.from_dict(data)
    except (ValueError, KeyError) as e:
        raise InputError(f"coalgebra: {e}") from e


def coalgebra_to_json(c: DGCoalgebra) -> dict:
    return c.to_dict()


# --------------------------------------------------------------------- rings


class RingCache:
    """Builds rings from specs, returning the same object for equal specs.

    Systems loaded through one cache can then be compared without a ring
    morphism whenever their ring specs agree.
    """

    def __init__(self):
        self._rings: dict[str, DGAlgebra] = {}

    def ring(self, spec: dict, default_cap: int = 12) -> DGAlgebra:
        key = json.dumps([spec, default_cap], sort_keys=True)
        hit = self._rings.get(key)
        if hit is None:
            hit = self._rings[key] = self._build(spec, default_cap)
        return hit

    def _build(self, spec, default_cap):
        cap = spec.get("cap", default_cap)
        if spec["type"] == "cobar":
            return cobar(coalgebra_from_json(spec["coalgebra"]), cap)
        factors = [self.ring(f, cap) for f in spec["factors"]]
        out = factors[0]
        for f in factors[1:]:
            out = tensor_algebras(out, f, spec.get("cap"))
        return out


def ring_to_json(ring: DGAlgebra, with_cap: bool = False) -> dict:
    """JSON description of a cobar or tensor ring.

    The truncation is left out unless ``with_cap``: on reading, a missing
    cap follows the complex cap requested by the caller.
    """
    if isinstance(ring, TensorDGA):
        out = {"type": "tensor", "factors": [ring_to_json(ring.a, with_cap), ring_to_json(ring.b, with_cap)]}
    elif isinstance(ring, FreeDGA) and getattr(ring, "coalgebra", None) is not None:
        out = {"type": "cobar", "coalgebra": ring.coalgebra.to_dict()}
    else:
        raise InputError(f"{ring!r} has no JSON description (only cobar and tensor rings do)")
    if with_cap and ring.degree_cap is not None:
        out["cap"] = ring.degree_cap
    return out


# ------------------------------------------------------------------- systems


def _pair(key: str) -> tuple[str, str]:
    x, sep, y = key.partition("|")
    if not sep or not x or not y or "|" in y:
        raise InputError(f"entry key {key!r} must look like 'x|y'")
    return x, y


def _element(ring, words, degree, where):
    try:
        return ring.parse(words, degree)
    except (ValueError, KeyError, IndexError) as e:
        raise InputError(f"{where}: {e}") from e


def system_from_json(data: Any, cap: int = 12, rings: RingCache | None = None, check: bool = True) -> GeneratorSystem:
    """Build a system; ``cap`` is the ring truncation when the ring entry omits one."""
    check_schema(data, SYSTEM_SCHEMA, "system")
    rings = rings or RingCache()
    gens = [Generator(g["name"], g["mu"], g.get("action")) for g in data["generators"]]
    # without an explicit cap the ring is cut exactly where assemble(sys, cap) needs it
    ring = rings.ring(data["ring"], cap - min(0, min(g.mu for g in gens)))
    mus = {g.name: g.mu for g in gens}
    entries = {}
    for key, words in data.get("A", {}).items():
        x, y = _pair(key)
        if x not in mus or y not in mus:
            raise InputError(f"A/{key}: unknown generator")
        entries[x, y] = _element(ring, words, mus[x] - mus[y] - 1, f"A/{key}")
    try:
        return GeneratorSystem(ring, gens, entries, check=check)
    except ValueError as e:
        raise InputError(f"system: {e}") from e


def system_to_json(sys: GeneratorSystem) -> dict:
    gens = []
    for g in sys.generators:
        d = {"name": g.name, "mu": g.mu}
        if g.action is not None:
            d["action"] = g.action
        gens.append(d)
    A = {f"{x}|{y}": sys.ring.words_of(a) for (x, y), a in sorted(sys.entries.items())}
    return {"ring": ring_to_json(sys.ring), "generators": gens, "A": A}


# ---------------------------------------------------------------- comparison


def comparison_from_json(data: Any, source: GeneratorSystem, target: GeneratorSystem) -> ComparisonData:
    check_schema(data, COMPARISON_SCHEMA, "comparison")
    delta = data.get("degree", 0)
    ring = target.ring
    f = None
    if data.get("ring_map") is not None:
        images = {}
        for name, words in data["ring_map"]["images"].items():
            images[name] = _element(ring, words, None, f"ring_map/images/{name}")
        try:
            f = DGAMorphism(source.ring, ring, images)
        except ValueError as e:
            raise InputError(f"ring_map: {e}") from e
    entries = {}
    for key, words in data["B"].items():
        x, y = _pair(key)
        if x not in source.by_name or y not in target.by_name:
            raise InputError(f"B/{key}: unknown generator")
        want = source.by_name[x].mu - target.by_name[y].mu + delta
        entries[x, y] = _element(ring, words, want, f"B/{key}")
    try:
        return ComparisonData(source, target, entries, delta, f)
    except ValueError as e:
        raise InputError(f"comparison: {e}") from e


def comparison_to_json(cd: ComparisonData) -> dict:
    ring = cd.target.ring
    out = {
        "degree": cd.degree,
        "B": {f"{x}|{y}": ring.words_of(b) for (x, y), b in sorted(cd.entries.items())},
        "ring_map": None,
    }
    if cd.ring_map.source is not cd.ring_map.target:
        out["ring_map"] = {"images": {n: ring.words_of(e) for n, e in sorted(cd.ring_map.images.items())}}
    return out


# --------------------------------------------------------------------- pages


def pages_from_json(data: Any) -> PageSet:
    check_schema(data, PAGES_SCHEMA, "page set")
    return PageSet.from_json(data)


def dump(data: Any, path: str | Path | None = None) -> str:
    text = json.dumps(data, indent=2, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text
