"""JSON state-set documents (schema version "1").

Layout::

    {
      "schema_version": "1",
      "d": 2, "d_prime": 5,
      "provenance": "prop1" | "prop2" | "imported",
      "m": 3,                       # prop2 only
      "states": [{"label": "...", "amplitudes": [[re, im], ...]}, ...]
    }

Amplitudes are float64 pairs in flat-index order (``i * d_prime + j``).
Python's shortest-repr float formatting makes the round trip exact.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .construct import IMPORTED, PROP2, PROVENANCES, StateSet, parse_label
from .errors import DocumentError, UMEBError
from .linalg import TOL_NORM, BipartiteDims, StateVector

SCHEMA_VERSION = "1"


def to_document(state_set: StateSet) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "d": state_set.dims.d,
        "d_prime": state_set.dims.d_prime,
        "provenance": state_set.provenance,
    }
    if state_set.provenance == PROP2:
        doc["m"] = state_set.m_param
    doc["states"] = [
        {
            "label": str(label),
            "amplitudes": [[float(a.real), float(a.imag)] for a in vec.amplitudes],
        }
        for label, vec in state_set.states
    ]
    return doc


def dumps(state_set: StateSet) -> str:
    return json.dumps(to_document(state_set), indent=1, ensure_ascii=False) + "\n"


def _require(mapping, key, kind, where):
    if key not in mapping:
        raise DocumentError(f"{where}: missing field {key!r}")
    value = mapping[key]
    if kind is int:
        ok = isinstance(value, int) and not isinstance(value, bool)
    else:
        ok = isinstance(value, kind)
    if not ok:
        raise DocumentError(f"{where}.{key}: expected {kind.__name__}, got {type(value).__name__}")
    return value


def _amplitudes(raw, size, where):
    if not isinstance(raw, list):
        raise DocumentError(f"{where}: expected a list of [re, im] pairs")
    if len(raw) != size:
        raise DocumentError(f"{where}: expected {size} amplitudes, got {len(raw)}")
    out = np.empty(size, dtype=complex)
    for k, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise DocumentError(f"{where}[{k}]: expected [re, im] numbers, got {pair!r}")
        out[k] = complex(float(pair[0]), float(pair[1]))
    return out


def from_document(doc) -> StateSet:
    if not isinstance(doc, dict):
        raise DocumentError("document: expected a JSON object")
    version = _require(doc, "schema_version", str, "document")
    if version != SCHEMA_VERSION:
        raise DocumentError(f"document.schema_version: unsupported version {version!r}")
    d = _require(doc, "d", int, "document")
    d_prime = _require(doc, "d_prime", int, "document")
    provenance = doc.get("provenance", IMPORTED)
    if provenance not in PROVENANCES:
        raise DocumentError(f"document.provenance: expected one of {PROVENANCES}, got {provenance!r}")
    m_param = _require(doc, "m", int, "document") if provenance == PROP2 else None
    try:
        dims = BipartiteDims(d, d_prime)
    except UMEBError as exc:
        raise DocumentError(f"document: {exc}") from exc
    raw_states = _require(doc, "states", list, "document")
    states = []
    for k, entry in enumerate(raw_states):
        where = f"states[{k}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: expected an object")
        label = _require(entry, "label", str, where)
        amps = _amplitudes(entry.get("amplitudes"), dims.size, f"{where}.amplitudes")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > TOL_NORM:
            raise DocumentError(f"{where}: state is not normalized (norm = {norm!r})")
        states.append((parse_label(label, provenance), StateVector(dims, amps)))
    try:
        return StateSet(dims, tuple(states), provenance, m_param)
    except UMEBError as exc:
        raise DocumentError(f"document: {exc}") from exc


def loads(text: str) -> StateSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return from_document(doc)


def load(path) -> StateSet:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def dump(state_set: StateSet, path):
    Path(path).write_text(dumps(state_set), encoding="utf-8")
