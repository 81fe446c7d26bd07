"""JSON documents for tensors and harmonic bundles.

Floats are written with ``repr`` (shortest round-tripping decimal, at most
17 significant digits), so a write/read cycle is bit-faithful.
"""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import ela
from .errors import ParseError
from .harmonic import HarmonicComponent, dim_k
from .state import (T2Harmonics, T3Harmonics, check_basis, normalize_formulation,
                    t3_family)
from .tensor import norm

SCHEMA_VERSION = "1"
TENSOR_SPACES = ("t2", "t3", "ela4", "ela5", "ela6")
ORDER = ela.SPACE_ORDER


@dataclass
class TensorDocument:
    space: str
    components: np.ndarray
    formulation: str = "typeII"
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = {"schema_version": SCHEMA_VERSION, "kind": "tensor", "space": self.space,
             "components": [float(x) for x in np.ravel(self.components)],
             "metadata": self.metadata}
        if self.space != "t2" and self.space != "ela4":
            d["formulation"] = self.formulation
        return d


@dataclass
class HarmonicsDocument:
    space: str
    entries: dict
    basis: str = "sr"
    formulation: str = "typeII"
    residual: float = 0.0

    def to_json(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "kind": "harmonics",
                "space": self.space, "basis": self.basis,
                "formulation": self.formulation,
                "entries": [{"label": lab, "k": h.k, "coords": [float(c) for c in h.coords]}
                            for lab, h in self.entries.items()],
                "residual": float(self.residual)}


def load(path) -> dict:
    try:
        if path in (None, "-"):
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise ParseError(f"cannot read document {path!r}: {exc}") from exc


def dump(doc, path=None) -> None:
    text = json.dumps(doc.to_json() if hasattr(doc, "to_json") else doc, indent=1)
    if path in (None, "-"):
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _require(d, key, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise ParseError(f"missing field {key!r}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise ParseError(f"field {key!r} has the wrong type")
    return v


def _check_version(d):
    v = str(_require(d, "schema_version"))
    if v != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {v!r}")


def document_kind(d) -> str:
    if not isinstance(d, dict):
        raise ParseError("document must be a JSON object")
    if "kind" in d:
        return d["kind"]
    return "harmonics" if "entries" in d else "tensor"


def parse_tensor(d) -> TensorDocument:
    _check_version(d)
    space = _require(d, "space", str)
    if space not in TENSOR_SPACES:
        raise ParseError(f"unknown space {space!r}")
    try:
        comps = np.asarray(_require(d, "components"), dtype=float).ravel()
    except (TypeError, ValueError) as exc:
        raise ParseError(f"components are not numeric: {exc}") from exc
    if comps.size != 2 ** ORDER[space]:
        raise ParseError(f"{space} needs {2 ** ORDER[space]} components, got {comps.size}")
    try:
        f = normalize_formulation(d.get("formulation", "typeII"))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return TensorDocument(space, comps.reshape((2,) * ORDER[space]), f,
                          dict(d.get("metadata") or {}))


def parse_harmonics(d) -> HarmonicsDocument:
    _check_version(d)
    space = _require(d, "space", str)
    if space not in TENSOR_SPACES:
        raise ParseError(f"unknown space {space!r}")
    try:
        basis = check_basis(d.get("basis", "sr"))
        f = normalize_formulation(d.get("formulation", "typeII"))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    entries = {}
    for e in _require(d, "entries", list):
        lab = _require(e, "label", str)
        try:
            h = HarmonicComponent(int(_require(e, "k")), _require(e, "coords"))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"entry {lab!r}: {exc}") from exc
        entries[lab] = h
    return HarmonicsDocument(space, entries, basis, f, float(d.get("residual", 0.0)))


# ------------------------------------------------------- bundle conversion

def bundle_entries(h) -> dict:
    if isinstance(h, T2Harmonics):
        return {"d": h.d, "alpha": h.alpha}
    return h.labelled()


def bundle_from_document(doc: HarmonicsDocument):
    """Rebuild the bundle object; unknown or missing labels raise ParseError."""
    e = doc.entries
    try:
        if doc.space == "t2":
            if set(e) != {"d", "alpha"}:
                raise KeyError(f"labels {sorted(e)} do not match t2")
            out = T2Harmonics(e["d"], e["alpha"])
        elif doc.space == "t3":
            na, nb = t3_family(doc.basis, doc.formulation).names
            want = {"H", f"v_{na}", f"v_{nb}"}
            if set(e) != want:
                raise KeyError(f"labels {sorted(e)} do not match {sorted(want)}")
            out = T3Harmonics(e["H"], e[f"v_{na}"], e[f"v_{nb}"], doc.basis, doc.formulation)
        else:
            out = ela.BUNDLES[doc.space].from_labelled(e, doc.basis, doc.formulation)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad harmonics entries: {exc}") from exc
    for lab, h in bundle_entries(out).items():
        if h.coords.size != dim_k(h.k):
            raise ParseError(f"entry {lab!r} has wrong size")
    # k must match the label's harmonic order
    expected = {"t2": {"d": 2, "alpha": 0}}.get(doc.space)
    if expected is None:
        if doc.space == "t3":
            expected = {lab: (3 if lab == "H" else 1) for lab in e}
        else:
            na, nb = out.names()
            expected = {ela._display_label(n, na, nb): k
                        for n, k in ela.ORDERS[doc.space].items()}
    for lab, h in e.items():
        if h.k != expected[lab]:
            raise ParseError(f"entry {lab!r} must have k={expected[lab]}, got {h.k}")
    return out


def relative_residual(T, R) -> float:
    n = norm(T)
    return norm(np.asarray(R) - T) / n if n > 0 else norm(R)
