"""Command line front end: decompose, reconstruct, rotate, verify, classify.

Exit codes: 0 ok, 2 validation failure, 3 parse failure, 4 internal
consistency failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import ela, io, verify
from .config import SYMMETRY_CLASS_TOL, default_tol
from .errors import HarmonicError, ParseError
from .harmonic import rho_rotate
from .state import decompose_t2, decompose_t3, reconstruct_t2, reconstruct_t3
from .symmetry import classify_high
from .tensor import rayleigh, reflection, rotation


def _decompose(T, space, basis, formulation, tol):
    if space == "t2":
        return decompose_t2(T, tol)
    if space == "t3":
        return decompose_t3(T, basis, formulation, tol)
    return ela.cghd(T, space, basis, formulation, tol)


def _reconstruct(h):
    if isinstance(h, io.T2Harmonics):
        return reconstruct_t2(h)
    if isinstance(h, io.T3Harmonics):
        return reconstruct_t3(h)
    return ela.reconstruct(h)


def _read(path, kind):
    d = io.load(path)
    k = io.document_kind(d)
    if kind and k != kind:
        raise ParseError(f"expected a {kind} document, got {k!r}")
    return io.parse_tensor(d) if k == "tensor" else io.parse_harmonics(d)


def cmd_decompose(a) -> int:
    doc = _read(a.input, "tensor")
    space = a.space or doc.space
    if space != doc.space:
        raise ParseError(f"--space {space} does not match document space {doc.space}")
    f = a.formulation or doc.formulation
    h = _decompose(doc.components, space, a.basis, f, a.tol)
    res = io.relative_residual(doc.components, _reconstruct(h))
    basis = getattr(h, "basis", a.basis)
    form = getattr(h, "formulation", f)
    io.dump(io.HarmonicsDocument(space, io.bundle_entries(h), basis, form, res), a.output)
    return 0


def cmd_reconstruct(a) -> int:
    doc = _read(a.input, "harmonics")
    T = _reconstruct(io.bundle_from_document(doc))
    io.dump(io.TensorDocument(doc.space, T, doc.formulation), a.output)
    return 0


def _group_element(a):
    if (a.angle is None) == (a.reflect is None):
        raise ParseError("give exactly one of --angle or --reflect")
    if a.angle is not None:
        return rotation(a.angle)
    try:
        n = [float(x) for x in a.reflect.split(",")]
    except ValueError as exc:
        raise ParseError(f"malformed axis {a.reflect!r}") from exc
    if len(n) != 2 or not all(map(math.isfinite, n)) or n == [0.0, 0.0]:
        raise ParseError(f"malformed axis {a.reflect!r}")
    return reflection(n)


def cmd_rotate(a) -> int:
    g = _group_element(a)
    doc = _read(a.input, None)
    if isinstance(doc, io.TensorDocument):
        out = io.TensorDocument(doc.space, rayleigh(g, doc.components), doc.formulation,
                                doc.metadata)
    else:
        entries = {lab: rho_rotate(h, g) for lab, h in doc.entries.items()}
        out = io.HarmonicsDocument(doc.space, entries, doc.basis, doc.formulation,
                                   doc.residual)
    io.dump(out, a.output)
    return 0


def cmd_verify(a) -> int:
    report = verify.run(a.suite)
    sys.stdout.write(json.dumps(report, indent=1) + "\n")
    return 0 if report["ok"] else 4


def cmd_classify(a) -> int:
    doc = _read(a.input, None)
    if isinstance(doc, io.TensorDocument):
        if doc.space not in ela.SPACES:
            raise ParseError(f"classification needs ela4, ela5 or ela6, got {doc.space}")
        h = ela.cghd(doc.components, doc.space, "sr", doc.formulation, a.tol)
    else:
        h = io.bundle_from_document(doc)
        if doc.space not in ela.SPACES:
            raise ParseError(f"classification needs ela4, ela5 or ela6, got {doc.space}")
    c = classify_high(h, a.class_tol)
    out = {"space": h.space, "classes": sorted(x.value for x in c.classes),
           "maximal": sorted(x.value for x in c.maximal), "notes": c.notes}
    sys.stdout.write(json.dumps(out, indent=1) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="harmonic2d", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    tol = default_tol()

    d = sub.add_parser("decompose", help="tensor document -> harmonics document")
    d.add_argument("input")
    d.add_argument("-o", "--output")
    d.add_argument("--space", choices=io.TENSOR_SPACES)
    d.add_argument("--basis", choices=("sr", "dh"), default="sr")
    d.add_argument("--formulation", choices=("type2", "type1", "typeII", "typeI"))
    d.add_argument("--tol", type=float, default=tol)
    d.set_defaults(func=cmd_decompose)

    r = sub.add_parser("reconstruct", help="harmonics document -> tensor document")
    r.add_argument("input")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_reconstruct)

    t = sub.add_parser("rotate", help="apply a rotation or reflection to a document")
    t.add_argument("input")
    t.add_argument("-o", "--output")
    t.add_argument("--angle", type=float)
    t.add_argument("--reflect", metavar="NX,NY")
    t.set_defaults(func=cmd_rotate)

    v = sub.add_parser("verify", help="run identity suites")
    v.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", help="high symmetry classes of an elasticity tensor")
    c.add_argument("input")
    c.add_argument("--tol", type=float, default=tol)
    c.add_argument("--class-tol", type=float, default=SYMMETRY_CLASS_TOL)
    c.set_defaults(func=cmd_classify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HarmonicError as exc:
        print(f"harmonic2d: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except np.linalg.LinAlgError as exc:
        print(f"harmonic2d: internal error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
