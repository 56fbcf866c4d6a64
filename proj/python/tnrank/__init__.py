"""Tensor network ranks.

Tensors, graphs, specs, states and CP decompositions are plain dicts in the
JSON file formats of the ``tnrank`` command line tool. Indices are 1-based.
Graphs may also be given by name: ``"P4"``, ``"C3"``, ``"S5"``, ``"K4"``.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from . import _tnrank
from ._tnrank import FormatError, GraphError, ShapeError

__all__ = [
    "FormatError",
    "GraphError",
    "ShapeError",
    "border_probe",
    "contract",
    "decompose",
    "dimension",
    "embed",
    "fit",
    "from_numpy",
    "gallery",
    "list_claims",
    "membership",
    "multilinear_rank",
    "rank",
    "to_numpy",
    "verify",
]


def _dump(x: Any) -> str:
    return json.dumps(x)


def rank(tensor: dict, graph: Any, tol: Optional[float] = None) -> dict:
    """G-rank report of ``tensor`` on a tree: ``{"rank", "edges", ...}``."""
    return json.loads(_tnrank.rank(_dump(tensor), _dump(graph), tol))


def membership(tensor: dict, graph: Any, ranks: Sequence[int], tol: Optional[float] = None) -> bool:
    return _tnrank.membership(_dump(tensor), _dump(graph), list(ranks), tol)


def multilinear_rank(tensor: dict, tol: Optional[float] = None) -> list[int]:
    return _tnrank.multilinear_rank(_dump(tensor), tol)


def decompose(tensor: dict, graph: Any, tol: Optional[float] = None) -> dict:
    return json.loads(_tnrank.decompose(_dump(tensor), _dump(graph), tol))


def contract(state: dict) -> dict:
    return json.loads(_tnrank.contract(_dump(state)))


def embed(cp: dict, graph: Any) -> dict:
    return json.loads(_tnrank.embed(_dump(cp), _dump(graph)))


def dimension(spec: dict, seeds: Iterable[int] = (1, 2, 3)) -> dict:
    return json.loads(_tnrank.dimension(_dump(spec), list(seeds)))


def gallery(name: str, *params: int, form: str = "tensor") -> dict:
    """Fixture by name, e.g. ``gallery("w", 3)`` or ``gallery("strassen", 2, 2, 2, form="cycle")``."""
    return json.loads(_tnrank.gallery(name, list(params), form))


def fit(tensor: dict, spec: dict, *, restarts: int = 10, max_iters: int = 500, seed: int = 0, ridge: float = 0.0,
        target: Optional[float] = None, convergence_tol: float = 1e-12, trace: bool = False, threads: int = 0) -> dict:
    return json.loads(_tnrank.fit(_dump(tensor), _dump(spec), restarts, max_iters, seed, ridge, target, convergence_tol,
                                  trace, threads))


def border_probe(tensor: dict, spec: dict, targets: Sequence[float], *, restarts: int = 20, max_iters: int = 25,
                 seed: int = 0, max_budget: int = 32000) -> dict:
    return json.loads(_tnrank.border_probe(_dump(tensor), _dump(spec), list(targets), restarts, max_iters, seed,
                                           max_budget))


def list_claims() -> list[dict]:
    return [json.loads(c) for c in _tnrank.list_claims()]


def verify(filter: str = "", threads: int = 0) -> list[dict]:
    """Runs the selected claims; groups or ids, comma separated."""
    return [json.loads(r) for r in _tnrank.verify(filter, threads)]


def from_numpy(array: np.ndarray) -> dict:
    """Float tensor dict from a real or complex array."""
    a = np.asarray(array, dtype=complex)
    dense = [x.real if x.imag == 0 else {"re": x.real, "im": x.imag} for x in a.ravel(order="C").tolist()]
    return {"dims": list(a.shape), "scalar": "float", "dense": dense}


def to_numpy(tensor: dict) -> np.ndarray:
    """Complex array of a tensor dict; exact entries are rounded to double."""
    dims = tensor["dims"]
    out = np.zeros(int(np.prod(dims, dtype=np.int64)), dtype=complex)

    def value(x: Any) -> complex:
        if isinstance(x, dict):
            return complex(_number(x.get("re", 0)), _number(x.get("im", 0)))
        return complex(_number(x), 0)

    if "dense" in tensor:
        for k, x in enumerate(tensor["dense"]):
            out[k] = value(x)
    else:
        for item in tensor["sparse"]:
            k = int(np.ravel_multi_index([i - 1 for i in item["idx"]], dims)) if dims else 0
            out[k] = value(item)
    return out.reshape(dims)


def _number(x: Any) -> float:
    if isinstance(x, str):
        from fractions import Fraction

        return float(Fraction(x))
    return float(x)
