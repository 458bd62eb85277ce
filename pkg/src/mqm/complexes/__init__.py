"""Cubical models: the group-on-itself model for a defining graph, plus the
two bespoke unboundedness examples (staircase, wedge of cubes)."""

from __future__ import annotations

import json
from pathlib import Path

from ..graphs import parse_graph
from .base import (
    COMPLEMENT,
    COVER,
    DISJOINT,
    EQUAL,
    H_IN_K,
    K_IN_H,
    NESTED_RELATIONS,
    TRANSVERSE,
    CubicalModel,
    FiniteOrderInterval,
    Interval,
    ModelError,
    UnresolvedRelation,
)
from .raag import RaagHalfspace, RaagInterval, RaagModel
from .staircase import StaircaseModel, StairHalfspace
from .wedge import WedgeHalfspace, WedgeModel

__all__ = [
    "COMPLEMENT", "COVER", "DISJOINT", "EQUAL", "H_IN_K", "K_IN_H",
    "NESTED_RELATIONS", "TRANSVERSE",
    "CubicalModel", "FiniteOrderInterval", "Interval", "ModelError",
    "UnresolvedRelation",
    "RaagModel", "RaagInterval", "RaagHalfspace",
    "StaircaseModel", "StairHalfspace",
    "WedgeModel", "WedgeHalfspace",
    "model_from_spec",
]


def model_from_spec(spec, *, base_dir: str | Path | None = None) -> CubicalModel:
    """Build a model from a spec dict, JSON string, or path to a JSON file.

    Specs: {"kind": "raag", "graph": <graph object or path>}
           {"kind": "staircase"}
           {"kind": "wedge", "n": 3}

    Any spec may carry an optional "sigma": a claimed bound on staircase
    length in the regions scanned.  It is taken at face value by the defect
    machinery and cross-checked (and possibly refuted) by staircase search.
    """
    if isinstance(spec, (str, Path)):
        p = Path(spec)
        if p.suffix == ".json" or p.exists():
            base_dir = p.parent
            spec = json.loads(p.read_text())
        else:
            spec = json.loads(spec)
    if not isinstance(spec, dict):
        raise ModelError(f"model spec must be an object, got {type(spec).__name__}")
    kind = spec.get("kind")
    if kind == "raag":
        if "graph" not in spec:
            raise ModelError("raag model spec needs a 'graph'")
        graph = spec["graph"]
        if isinstance(graph, str):
            gp = Path(graph)
            if not gp.is_absolute() and base_dir is not None:
                gp = Path(base_dir) / gp
            graph = json.loads(gp.read_text())
        model = RaagModel(parse_graph(graph))
    elif kind == "staircase":
        model = StaircaseModel()
    elif kind == "wedge":
        if "n" not in spec:
            raise ModelError("wedge model spec needs 'n'")
        model = WedgeModel(int(spec["n"]))
    else:
        raise ModelError(f"unknown model kind {kind!r}")
    if spec.get("sigma") is not None:
        sigma = int(spec["sigma"])
        if sigma < 0:
            raise ModelError("declared sigma must be >= 0")
        model.sigma = sigma
        model.sigma_region = "declared in model spec"
    return model
