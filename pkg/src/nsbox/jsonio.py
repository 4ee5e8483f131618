"""JSON wire formats.

Box:          {"parties": k, "inputs": m, "outputs": a, "probs": [...]}
Mixture:      {"k": .., "bound": .., "terms": [{"p": .., "box": <Box>}]}
Decomposition:{"m": .., "baseline_inputs": [..],
               "terms": [{"q": .., "factors": [<Box>, ...]}]}
Quantum spec: {"n": .., "d": .., "terms": [{"w": .., "states": [[[re, im], ...], ...]}]}
Effect:       {"coeffs": [...]}

Probabilities are serialized as decimal doubles via ``repr``, which
round-trips every binary double exactly.
"""

import json

import numpy as np

from .box import Box
from .definetti import DeFinettiMixture, SeparableDecomposition
from .distance import Effect
from .quantum import SymmetricSeparableSpec


class JsonFormatError(ValueError):
    """Input JSON does not match the expected schema; message names the path."""


def _need(obj, key, kind, path):
    if not isinstance(obj, dict):
        raise JsonFormatError(f"{path}: expected an object")
    if key not in obj:
        raise JsonFormatError(f"{path}.{key}: missing")
    val = obj[key]
    if kind is float:
        if not isinstance(val, (int, float)) or isinstance(val, bool):
            raise JsonFormatError(f"{path}.{key}: expected a number")
        return float(val)
    if kind is int:
        if not isinstance(val, int) or isinstance(val, bool):
            raise JsonFormatError(f"{path}.{key}: expected an integer")
        return val
    if kind is list:
        if not isinstance(val, list):
            raise JsonFormatError(f"{path}.{key}: expected an array")
        return val
    if kind is dict:
        if not isinstance(val, dict):
            raise JsonFormatError(f"{path}.{key}: expected an object")
        return val
    raise AssertionError(kind)


def _number_list(values, path):
    out = []
    for i, v in enumerate(values):
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise JsonFormatError(f"{path}[{i}]: expected a number")
        out.append(float(v))
    return out


def box_to_json(box: Box) -> dict:
    return {
        "parties": box.parties,
        "inputs": box.inputs,
        "outputs": box.outputs,
        "probs": [float(v) for v in box.probs],
    }


def box_from_json(obj, path: str = "box") -> Box:
    parties = _need(obj, "parties", int, path)
    inputs = _need(obj, "inputs", int, path)
    outputs = _need(obj, "outputs", int, path)
    probs = _number_list(_need(obj, "probs", list, path), f"{path}.probs")
    try:
        return Box(parties, inputs, outputs, np.array(probs))
    except ValueError as exc:
        raise JsonFormatError(f"{path}: {exc}") from exc


def mixture_to_json(mixture: DeFinettiMixture) -> dict:
    return {
        "k": mixture.k,
        "bound": mixture.bound,
        "terms": [{"p": float(p), "box": box_to_json(b)} for p, b in mixture.terms],
    }


def mixture_from_json(obj, path: str = "mixture") -> DeFinettiMixture:
    k = _need(obj, "k", int, path)
    bound = _need(obj, "bound", float, path)
    terms = []
    for i, term in enumerate(_need(obj, "terms", list, path)):
        tpath = f"{path}.terms[{i}]"
        p = _need(term, "p", float, tpath)
        b = box_from_json(_need(term, "box", dict, tpath), f"{tpath}.box")
        terms.append((p, b))
    return DeFinettiMixture(k, bound, tuple(terms))


def decomposition_to_json(dec: SeparableDecomposition) -> dict:
    return {
        "m": dec.parties,
        "baseline_inputs": list(dec.baseline_inputs),
        "terms": [
            {"q": float(q), "factors": [box_to_json(f) for f in factors]}
            for q, factors in dec.terms
        ],
    }


def quantum_spec_to_json(spec: SymmetricSeparableSpec) -> dict:
    return {
        "n": spec.n,
        "d": spec.d,
        "terms": [
            {
                "w": float(w),
                "states": [[[float(z.real), float(z.imag)] for z in vec] for vec in vecs],
            }
            for w, vecs in spec.terms
        ],
    }


def quantum_spec_from_json(obj, path: str = "spec") -> SymmetricSeparableSpec:
    n = _need(obj, "n", int, path)
    d = _need(obj, "d", int, path)
    terms = []
    for i, term in enumerate(_need(obj, "terms", list, path)):
        tpath = f"{path}.terms[{i}]"
        w = _need(term, "w", float, tpath)
        states_raw = _need(term, "states", list, tpath)
        vecs = []
        for j, state in enumerate(states_raw):
            spath = f"{tpath}.states[{j}]"
            if not isinstance(state, list):
                raise JsonFormatError(f"{spath}: expected an array of [re, im] pairs")
            vec = np.empty(len(state), dtype=complex)
            for idx, pair in enumerate(state):
                if (
                    not isinstance(pair, list)
                    or len(pair) != 2
                    or any(isinstance(c, bool) or not isinstance(c, (int, float)) for c in pair)
                ):
                    raise JsonFormatError(f"{spath}[{idx}]: expected [re, im]")
                vec[idx] = complex(pair[0], pair[1])
            vecs.append(vec)
        terms.append((w, tuple(vecs)))
    try:
        return SymmetricSeparableSpec(n, d, tuple(terms))
    except ValueError as exc:
        raise JsonFormatError(f"{path}: {exc}") from exc


def effect_to_json(effect: Effect) -> dict:
    return {"coeffs": [float(v) for v in effect.coeffs]}


def effect_from_json(obj, path: str = "effect") -> Effect:
    coeffs = _number_list(_need(obj, "coeffs", list, path), f"{path}.coeffs")
    return Effect(np.array(coeffs))


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise JsonFormatError(f"{path}: invalid JSON ({exc})") from exc


def dump_json(obj, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def load_box(path: str) -> Box:
    return box_from_json(load_json(path), path)


def save_box(box: Box, path: str) -> None:
    dump_json(box_to_json(box), path)
