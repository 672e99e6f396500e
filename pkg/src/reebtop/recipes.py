"""Declarative construction programs.

A recipe is a JSON list of steps; each step names its operation, its inputs
by earlier step ids, and named-subcomplex arguments by label.  Validation
reports the step index and field of the first problem; execution returns
every intermediate value plus the final one.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from . import branched, complexes, models
from .complexes import SimplicialComplex
from .errors import RecipeError

_REF_FIELDS = {
    "standard": [],
    "from_facets": [],
    "disjoint_union": ["a", "b"],
    "wedge": ["a", "b"],
    "product": ["a", "b"],
    "double": ["x"],
    "subdivide": ["x"],
    "attach_flap": ["x"],
    "attach_double": ["x"],
    "bouquet": [],
}

_REQUIRED = {
    "standard": ["name"],
    "from_facets": ["facets"],
    "disjoint_union": ["a", "b"],
    "wedge": ["a", "p", "b", "q"],
    "product": ["a", "b"],
    "double": ["x"],
    "subdivide": ["x"],
    "attach_flap": ["x", "sigma"],
    "attach_double": ["x", "ys"],
    "bouquet": ["models", "basepoints"],
}


@dataclass(frozen=True)
class Recipe:
    steps: tuple

    def digest(self):
        blob = json.dumps(
            [dict(s) for s in self.steps], sort_keys=True, separators=(",", ":")
        )
        return hashlib.sha256(blob.encode()).hexdigest()


def parse_recipe(data):
    """Validate a step list (or text); raise RecipeError with location."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise RecipeError(f"recipe is not valid JSON: {exc}") from exc
    if isinstance(data, dict) and "steps" in data:
        data = data["steps"]
    if not isinstance(data, list):
        raise RecipeError("recipe must be a list of steps")
    seen = set()
    for i, step in enumerate(data):
        if not isinstance(step, dict):
            raise RecipeError("step must be an object", step=i)
        sid = step.get("id")
        if not isinstance(sid, str) or not sid:
            raise RecipeError("missing step id", step=i, field="id")
        if sid in seen:
            raise RecipeError(f"duplicate id {sid!r}", step=i, field="id")
        op = step.get("op")
        if op not in _REQUIRED:
            raise RecipeError(f"unknown op {op!r}", step=i, field="op")
        for f in _REQUIRED[op]:
            if f not in step:
                raise RecipeError(f"{op} needs {f!r}", step=i, field=f)
        refs = [step[f] for f in _REF_FIELDS[op]]
        if op == "bouquet":
            refs = list(step["models"])
        for ref in refs:
            if ref not in seen:
                raise RecipeError(
                    f"reference to unknown step {ref!r}", step=i, field="ref"
                )
        seen.add(sid)
    return Recipe(tuple(dict(s) for s in data))


def _as_complex(value):
    if isinstance(value, branched.BranchedModel):
        return value.complex
    return value


def run_recipe(recipe):
    """Execute the steps; returns (values by id, final value)."""
    values = {}
    final = None
    for i, step in enumerate(recipe.steps):
        op = step["op"]
        try:
            if op == "standard":
                params = {
                    k: v
                    for k, v in step.items()
                    if k not in ("id", "op", "name", "params")
                }
                params.update(step.get("params", {}))
                value = models.standard_model(step["name"], **params)
            elif op == "from_facets":
                value = complexes.from_facets(step["facets"], step.get("named"))
            elif op == "disjoint_union":
                value, _, _ = complexes.disjoint_union(
                    _as_complex(values[step["a"]]), _as_complex(values[step["b"]])
                )
            elif op == "wedge":
                a = _as_complex(values[step["a"]])
                b = _as_complex(values[step["b"]])
                value = complexes.wedge(
                    a, a.find_vertex(step["p"]), b, b.find_vertex(step["q"])
                )
            elif op == "product":
                value, _, _ = complexes.product(
                    _as_complex(values[step["a"]]), _as_complex(values[step["b"]])
                )
            elif op == "double":
                value = complexes.double(_as_complex(values[step["x"]]))
            elif op == "subdivide":
                value = complexes.barycentric_subdivision(
                    _as_complex(values[step["x"]])
                )
            elif op == "attach_flap":
                value = branched.attach_flap(
                    values[step["x"]], step["sigma"], seed=step.get("seed", 0)
                )
            elif op == "attach_double":
                value = branched.attach_double(values[step["x"]], step["ys"])
            elif op == "bouquet":
                ms = [values[r] for r in step["models"]]
                bps = [
                    _as_complex(m).find_vertex(label)
                    for m, label in zip(ms, step["basepoints"])
                ]
                value = branched.bouquet(ms, bps)
            else:  # pragma: no cover - parse_recipe blocks this
                raise RecipeError(f"unknown op {op!r}", step=i)
        except RecipeError:
            raise
        except Exception as exc:
            raise RecipeError(f"step {step['id']!r} failed: {exc}", step=i) from exc
        values[step["id"]] = value
        final = value
    return values, final


def load_recipe(path):
    with open(path, encoding="utf-8") as fh:
        return parse_recipe(fh.read())


def value_to_json(value):
    if isinstance(value, branched.BranchedModel):
        return value.to_json()
    if isinstance(value, SimplicialComplex):
        return complexes.complex_to_json(value)
    raise RecipeError(f"cannot serialize {type(value).__name__}")
