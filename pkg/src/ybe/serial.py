"""JSON document formats for the objects the CLI reads and writes.

Kinds: cycle_set, solution, left_brace, onevar_cocycle, full_cocycle,
cyclic_params, prop22_params, prop23_params.  Permutations serialize as
image arrays; cycle-notation strings are accepted anywhere a permutation is
expected on input.
"""

from __future__ import annotations

import json

from .brace import LeftBrace, require_valid_brace
from .construct import CyclicConstructionParams
from .cycleset import CycleSet, SolutionMap
from .extension import FullCocycle, OneVarCocycle
from .perm import Perm


class SchemaError(ValueError):
    pass


def parse_perm(value, degree: int | None = None) -> Perm:
    if isinstance(value, str):
        return Perm.from_cycles(value, degree=degree)
    if isinstance(value, (list, tuple)):
        p = Perm(value)
        if degree is not None and p.degree != degree:
            raise SchemaError(f"permutation degree {p.degree}, expected {degree}")
        return p
    raise SchemaError(f"cannot parse permutation from {value!r}")


def dump(obj) -> dict:
    if isinstance(obj, CycleSet):
        return {
            "kind": "cycle_set",
            "n": obj.n,
            "sigma": [list(row) for row in obj.table],
        }
    if isinstance(obj, SolutionMap):
        return {
            "kind": "solution",
            "n": obj.n,
            "r": [[list(pair) for pair in row] for row in obj.r],
        }
    if isinstance(obj, LeftBrace):
        return {
            "kind": "left_brace",
            "n": obj.n,
            "add": [list(row) for row in obj.add],
            "circ": [list(row) for row in obj.circ],
        }
    if isinstance(obj, OneVarCocycle):
        return {
            "kind": "onevar_cocycle",
            "base": dump(obj.base),
            "fiber": obj.fiber,
            "alpha": [list(p.images) for p in obj.alpha],
        }
    if isinstance(obj, FullCocycle):
        return {
            "kind": "full_cocycle",
            "base": dump(obj.base),
            "fiber": obj.fiber,
            "alpha": [
                [[list(p.images) for p in row] for row in plane]
                for plane in obj.alpha
            ],
        }
    if isinstance(obj, CyclicConstructionParams):
        return {
            "kind": "cyclic_params",
            "p": obj.p,
            "k": obj.k,
            "n": obj.n,
            "j": list(obj.j),
            "f": [list(fm) for fm in obj.f],
            "k_reading": obj.k_reading,
        }
    raise SchemaError(f"cannot serialize {type(obj).__name__}")


def _require(doc: dict, *keys):
    for key in keys:
        if key not in doc:
            raise SchemaError(f"missing field {key!r} in {doc.get('kind')} document")


def load(doc: dict):
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SchemaError("document must be an object with a 'kind' field")
    kind = doc["kind"]
    try:
        if kind == "cycle_set":
            _require(doc, "sigma")
            return CycleSet(doc["sigma"])
        if kind == "solution":
            _require(doc, "r")
            return SolutionMap(doc["r"])
        if kind == "left_brace":
            _require(doc, "add", "circ")
            return LeftBrace(doc["add"], doc["circ"])
        if kind == "onevar_cocycle":
            _require(doc, "base", "fiber", "alpha")
            base = load(doc["base"])
            fiber = int(doc["fiber"])
            alpha = tuple(parse_perm(a, fiber) for a in doc["alpha"])
            return OneVarCocycle(base, fiber, alpha)
        if kind == "full_cocycle":
            _require(doc, "base", "fiber", "alpha")
            base = load(doc["base"])
            fiber = int(doc["fiber"])
            alpha = tuple(
                tuple(tuple(parse_perm(a, fiber) for a in row) for row in plane)
                for plane in doc["alpha"]
            )
            return FullCocycle(base, fiber, alpha)
        if kind == "cyclic_params":
            _require(doc, "p", "k", "n", "j", "f")
            return CyclicConstructionParams(
                p=int(doc["p"]),
                k=int(doc["k"]),
                n=int(doc["n"]),
                j=tuple(int(v) for v in doc["j"]),
                f=tuple(tuple(int(v) for v in fm) for fm in doc["f"]),
                k_reading=doc.get("k_reading", "j"),
            )
    except SchemaError:
        raise
    except (ValueError, TypeError, IndexError) as exc:
        raise SchemaError(f"malformed {kind} document: {exc}") from exc
    raise SchemaError(f"unknown document kind {kind!r}")


def load_file(path: str):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    return load(doc)


def dumps(obj) -> str:
    return json.dumps(dump(obj), sort_keys=True, indent=2) + "\n"
