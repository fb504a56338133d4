"""JSON formats for models, events, previsions and quantum objects.

Rationals travel as ``"p/q"`` strings so nothing is rounded; outcomes are
referred to by label.  Complex matrices are nested ``[re, im]`` pairs.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import numpy as np

from .cones import Gamble, PossibilitySpace, as_fraction
from .conditioning import Event
from .models import ADAssessment, ADModel, ConeModel, ConditionedModel, natural_extension
from .previsional import LayeredPrevision, PrevisionalModel
from .quantum import QuantumEvent

__all__ = [
    "MalformedInput",
    "rational",
    "rational_str",
    "space_from_json",
    "gamble_from_json",
    "gamble_to_json",
    "event_from_json",
    "event_to_json",
    "assessment_from_json",
    "model_to_json",
    "prevision_from_json",
    "prevision_to_json",
    "matrix_from_json",
    "matrix_to_json",
    "qevent_from_json",
    "qevent_to_json",
    "dumps",
]


class MalformedInput(ValueError):
    """Input that does not follow one of the documented JSON formats."""


def rational(x) -> Fraction:
    if isinstance(x, bool):
        raise MalformedInput(f"not a rational: {x!r}")
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"not a rational: {x!r}") from exc
    try:
        return as_fraction(x)
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"not an exact rational: {x!r} (write it as a \"p/q\" string)") from exc


def rational_str(q: Fraction) -> str:
    return str(Fraction(q))


def _load(obj):
    if isinstance(obj, str):
        try:
            return json.loads(obj)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}") from exc
    return obj


def space_from_json(labels) -> PossibilitySpace:
    labels = _load(labels)
    if not isinstance(labels, list) or not labels:
        raise MalformedInput("the space must be a nonempty list of labels")
    try:
        return PossibilitySpace(labels)
    except (TypeError, ValueError) as exc:
        raise MalformedInput(str(exc)) from exc


def gamble_from_json(space: PossibilitySpace, values) -> Gamble:
    values = _load(values)
    if isinstance(values, dict):
        try:
            values = [values.get(str(lab), 0) for lab in space.labels]
        except TypeError as exc:
            raise MalformedInput(str(exc)) from exc
    if not isinstance(values, list) or len(values) != len(space):
        raise MalformedInput(f"a gamble needs {len(space)} values")
    return Gamble(space, [rational(v) for v in values])


def gamble_to_json(f: Gamble) -> list:
    return [rational_str(v) for v in f.values]


def _label_index(space, lab):
    for cand in (lab, str(lab)):
        try:
            return space.index(cand)
        except (KeyError, ValueError):
            pass
    for i, known in enumerate(space.labels):
        if str(known) == str(lab):
            return i
    raise MalformedInput(f"unknown outcome label {lab!r}")


def event_from_json(space: PossibilitySpace, labels) -> Event:
    labels = _load(labels)
    if not isinstance(labels, list):
        raise MalformedInput("an event is a list of outcome labels")
    return Event(space, [_label_index(space, lab) for lab in labels])


def event_to_json(E: Event) -> list:
    return list(E.labels)


def assessment_from_json(obj) -> ADAssessment:
    obj = _load(obj)
    if not isinstance(obj, dict) or "space" not in obj:
        raise MalformedInput("a model file needs a \"space\" entry")
    space = space_from_json(obj["space"])
    acc = [gamble_from_json(space, g) for g in obj.get("acc", [])]
    des = [gamble_from_json(space, g) for g in obj.get("des", [])]
    return ADAssessment(space, tuple(acc), tuple(des))


def model_to_json(M: ADModel) -> dict:
    if M.is_contradiction:
        return {"contradiction": True}
    if isinstance(M, ConeModel):
        return {
            "space": list(M.space.labels),
            "acc": [gamble_to_json(g) for g in M.acc_gens],
            "des": [gamble_to_json(g) for g in M.des_gens],
        }
    if isinstance(M, PrevisionalModel):
        out = prevision_to_json(M.P)
        if not M.is_plain:
            out["expanded_by"] = [M.space.labels[i] for i in sorted(M.watch)]
        return out
    if isinstance(M, ConditionedModel):
        return {"conditioned": model_to_json(M.base), "event": event_to_json(M.event)}
    raise TypeError(f"no JSON form for {type(M).__name__}")


def prevision_from_json(obj) -> LayeredPrevision:
    obj = _load(obj)
    if not isinstance(obj, dict) or not isinstance(obj.get("layers"), list):
        raise MalformedInput("a prevision file needs a \"layers\" list")
    if "space" in obj:
        space = space_from_json(obj["space"])
    else:
        labels = []
        for layer in obj["layers"]:
            for lab in layer.get("support", []):
                if lab not in labels:
                    labels.append(lab)
        space = space_from_json(labels)
    layers = []
    for layer in obj["layers"]:
        if not isinstance(layer, dict) or "pmf" not in layer:
            raise MalformedInput("each layer needs a \"pmf\" mapping")
        pmf = {}
        for lab, p in layer["pmf"].items():
            pmf[_label_index(space, lab)] = rational(p)
        support = layer.get("support")
        if support is not None and {_label_index(space, lab) for lab in support} != set(pmf):
            raise MalformedInput("layer support does not match its pmf")
        layers.append(pmf)
    try:
        return LayeredPrevision(space, layers)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def prevision_to_json(P: LayeredPrevision) -> dict:
    labels = P.space.labels
    return {
        "space": list(labels),
        "layers": [{"support": [labels[i] for i in sorted(pmf)],
                    "pmf": {str(labels[i]): rational_str(pmf[i]) for i in sorted(pmf)}}
                   for pmf in P.layers],
    }


def matrix_from_json(obj) -> np.ndarray:
    obj = _load(obj)
    try:
        arr = np.array(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MalformedInput("a matrix is a nested list of [re, im] pairs") from exc
    if arr.ndim == 3 and arr.shape[-1] == 2:
        return arr[..., 0] + 1j * arr[..., 1]
    raise MalformedInput("a matrix is a nested list of [re, im] pairs")


def matrix_to_json(A) -> list:
    A = np.asarray(A, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in A]


def qevent_from_json(dim: int, obj) -> QuantumEvent:
    """A list of basis matrices (``d × r``, orthonormal columns)."""
    obj = _load(obj)
    if not isinstance(obj, list):
        raise MalformedInput("a quantum event is a list of basis matrices")
    try:
        return QuantumEvent(dim, [matrix_from_json(B) for B in obj])
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def qevent_to_json(e: QuantumEvent) -> list:
    return [matrix_to_json(B) for B in e.bases]


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
