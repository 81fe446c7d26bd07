"""Runtime identity suites: embeddings, projectors, Gram tables, round trips."""
from __future__ import annotations

import numpy as np

from . import ela
from .embeddings import (EMBEDDING_TAGS, embedding, phi51_component_formula,
                         projector, verify_embedding)
from .harmonic import HarmonicComponent, to_tensor
from .iso import identity_on
from .tensor import contract, norm, rayleigh, reflection, rotation

SUITES = ("embeddings", "projectors", "gram", "roundtrip")

_STATE_ORDER = {"P22": 2, "P20": 2, "P2neg1": 2}


def _n(tag):
    return _STATE_ORDER.get(tag, 3)


def suite_embeddings(tol=1e-12, rng=0):
    rng = np.random.default_rng(rng)
    res = {}
    for tag in EMBEDDING_TAGS:
        res[tag] = verify_embedding(embedding(tag), 5, rng).max_residual
    res["Phi_51_intrinsic_vs_components"] = float(
        np.abs(embedding("Phi_51").phi - phi51_component_formula()).max())
    h = HarmonicComponent(2, rng.standard_normal(2))
    res["Phi_42_tr14"] = norm(np.trace(embedding("Phi_42").embed(h), axis1=0, axis2=3)
                              - to_tensor(h))
    return {"residuals": res, "ok": max(res.values()) < tol}


def suite_projectors(tol=1e-13, rng=0):
    rng = np.random.default_rng(rng)
    res = {}
    for tag in ("P22", "P20", "P2neg1", "P33", "P31s", "P31r", "P33_sharp",
                "P31r_sharp", "P31d", "P31h", "P33_dh"):
        P, n = projector(tag), _n(tag)
        r = float(np.abs(contract(P, P, n) - P).max())
        g = rotation(rng.uniform(0, 2 * np.pi))
        m = reflection(rng.standard_normal(2))
        r = max(r, float(np.abs(rayleigh(g, P) - P).max()),
                float(np.abs(rayleigh(m, P) - P).max()))
        res[f"{tag}_idempotent_isotropic"] = r
    fams = {
        "T2sym": (("P22", "P20"), "T2sym"),
        "T3_typeII_sr": (("P33", "P31s", "P31r"), "T3_typeII"),
        "T3_typeI_sr": (("P33_sharp", "P31s", "P31r_sharp"), "T3_typeI"),
        "T3_typeII_dh": (("P33_dh", "P31d", "P31h"), "T3_typeII"),
    }
    for name, (tags, space) in fams.items():
        S = sum(projector(t) for t in tags)
        res[f"{name}_sum_to_identity"] = float(np.abs(S - identity_on(space)).max())
        n = _n(tags[0])
        res[f"{name}_mutually_orthogonal"] = max(
            float(np.abs(contract(projector(a), projector(b), n)).max())
            for a in tags for b in tags if a != b)
    return {"residuals": res, "ok": max(res.values()) < tol}


def gram_tables():
    def table(tags):
        return [[float(np.sum(projector(a) * projector(b))) for b in tags] for a in tags]
    return {"T2sym": {"tags": ["P22", "P20"], "gram": table(["P22", "P20"])},
            "T3_typeII": {"tags": ["P33", "P31s", "P31r"],
                          "gram": table(["P33", "P31s", "P31r"])}}


def suite_gram(tol=1e-13):
    t = gram_tables()
    expected = {"T2sym": np.diag([2.0, 1.0]), "T3_typeII": np.diag([2.0, 2.0, 2.0])}
    res = {k: float(np.abs(np.array(v["gram"]) - expected[k]).max()) for k, v in t.items()}
    return {"tables": t, "residuals": res, "ok": max(res.values()) < tol}


def suite_roundtrip(samples=20, tol=1e-12, rng=0):
    rng = np.random.default_rng(rng)
    res = {}
    for space in ela.SPACES:
        for basis in ("sr", "dh"):
            for f in ("typeII", "typeI"):
                worst = 0.0
                for _ in range(samples):
                    T = ela.random_tensor(space, f, rng)
                    h = ela.cghd(T, space, basis, f)
                    worst = max(worst, norm(ela.reconstruct(h) - T) / norm(T))
                res[f"{space}_{basis}_{f}"] = worst
    return {"residuals": res, "ok": max(res.values()) < tol}


def alpha00_note():
    """Compare the two candidate alpha^{0,0} normalizations on an isotropic C."""
    from .iso import iso
    lam, mu = 1.0, 1.0
    C = lam * iso(4, 1) + mu * (iso(4, 2) + iso(4, 3))
    half = 0.5 * float(np.sum(C * projector("P20")))
    full = float(np.sum(C * projector("P20")))
    h = ela.cghd_ela4(C)
    rec = lambda a: norm(ela.reconstruct_ela4(
        ela.Ela4Harmonics(h.H22, h.h20, h.a22, HarmonicComponent(0, [a]))) - C)
    return {"adopted": "alpha00 = 1/2 C::P20", "residual_adopted": rec(half),
            "residual_alternative_P20::C": rec(full)}


def run(suite="all"):
    names = SUITES if suite == "all" else (suite,)
    fns = {"embeddings": suite_embeddings, "projectors": suite_projectors,
           "gram": suite_gram, "roundtrip": suite_roundtrip}
    report = {n: fns[n]() for n in names}
    if suite in ("all", "roundtrip"):
        report["alpha00_normalization"] = alpha00_note()
    report["ok"] = all(v["ok"] for k, v in report.items() if isinstance(v, dict) and "ok" in v)
    return report
