"""Acceptance criteria, one PASS/FAIL line each.

Run under pytest (lines are written to the terminal) or directly with
``python3 tests/test_acceptance.py``.
"""
import itertools
import math
import time

import numpy as np
import pytest

from harmonic2d import ela
from harmonic2d.embeddings import (EMBEDDING_TAGS, embedding, make_embedding,
                                   phi51_component_formula, projector, verify_embedding)
from harmonic2d.harmonic import HarmonicComponent, fourier_extract, rho_rotate, to_tensor
from harmonic2d.iso import gram, iso, kronecker, levi_civita
from harmonic2d.symmetry import ZEROED, class_generators, restrict_to_class
from harmonic2d.tensor import norm, rayleigh, reflection, rotation
from harmonic2d.verify import gram_tables, suite_projectors

VARIANTS = [(b, f) for b in ("sr", "dh") for f in ("typeII", "typeI")]
SEED = 20240607


def random_g(rng):
    th = rng.uniform(0, 2 * math.pi)
    return rotation(th) if rng.random() < 0.5 else reflection((math.cos(th), math.sin(th)))


def c1_gram():
    t0 = time.perf_counter()
    t = gram_tables()
    r2 = np.abs(np.array(t["T2sym"]["gram"]) - np.diag([2.0, 1.0])).max()
    r3 = np.abs(np.array(t["T3_typeII"]["gram"]) - 2 * np.eye(3)).max()
    dt = time.perf_counter() - t0
    return max(r2, r3) < 1e-13 and dt < 1.0, f"max residual {max(r2, r3):.1e}, {dt:.3f} s"


def c2_projectors():
    rep = suite_projectors()
    r = max(rep["residuals"].values())
    return r < 1e-13, f"max residual {r:.1e} over {len(rep['residuals'])} identities"


def c3_embeddings():
    worst = 0.0
    rng = np.random.default_rng(SEED)
    tags = EMBEDDING_TAGS + ("Phi_sharp_d31", "Phi_sharp_h31")
    for tag in tags:
        e = embedding(tag)
        # gamma by trace vs norm ratio on 5 random inputs
        make_embedding(tag, e.phi, e.n, e.k, samples=5, rng=rng)
        worst = max(worst, verify_embedding(e, 5, rng).max_residual)
    worst = max(worst, float(np.abs(embedding("Phi_51").phi - phi51_component_formula()).max()))
    return worst < 1e-12, f"{len(tags)} embeddings, max residual {worst:.1e}"


def c4_round_trip():
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    worst = 0.0
    for space in ela.SPACES:
        for basis, f in VARIANTS:
            for _ in range(100):
                T = ela.random_tensor(space, f, rng)
                R = ela.reconstruct(ela.cghd(T, space, basis, f))
                worst = max(worst, norm(R - T) / norm(T))
    dt = time.perf_counter() - t0
    return worst < 1e-12 and dt < 10.0, f"max relative residual {worst:.1e}, {dt:.2f} s"


def c5_equivariance():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for space in ela.SPACES:
        for i in range(20):
            basis, f = VARIANTS[i % 4]
            T = ela.random_tensor(space, f, rng)
            g = random_g(rng)
            h = ela.cghd(T, space, basis, f)
            hg = ela.cghd(rayleigh(g, T), space, basis, f)
            for name, c in h.components().items():
                worst = max(worst, float(np.abs(rho_rotate(c, g).coords
                                                - getattr(hg, name).coords).max()))
    return worst < 1e-11, f"max residual {worst:.1e}"


def _symmetric_basis(space, f):
    pairs, block = ela.symmetry_generators(space, f)
    n = ela.SPACE_ORDER[space]
    out = []
    for I in itertools.product(range(2), repeat=n):
        T = np.zeros((2,) * n)
        T[I] = 1.0
        for p, q in pairs:
            T = 0.5 * (T + np.swapaxes(T, p, q))
        if block is not None:
            T = 0.5 * (T + ela.transpose_block(T, *block))
        out.append(T)
    return out


def c6_counting():
    want = {"ela4": 6, "ela5": 18, "ela6": 21}
    got = {}
    for space in ela.SPACES:
        ranks = set()
        for basis, f in VARIANTS:
            B = _symmetric_basis(space, f)
            # linear map: symmetric tensors -> harmonic coordinates
            J = np.array([ela.cghd(T, space, basis, f).coords() for T in B])
            ranks.add((np.linalg.matrix_rank(J), J.shape[1],
                       np.linalg.matrix_rank(np.array([T.ravel() for T in B]))))
        got[space] = ranks
    ok = all(r == {(want[s], want[s], want[s])} for s, r in got.items())
    return ok, ", ".join(f"{s}: rank {sorted(r)[0][0]}" for s, r in got.items())


def _oracle_pairs(space, T, basis, f):
    """(extracted component, oracle component) pairs for one tensor."""
    half = lambda tag, P, n: make_embedding(tag, 0.5 * np.asarray(P), n, 0)
    I2 = make_embedding("i/2", 0.5 * kronecker(), 2, 0)
    E2 = make_embedding("eps/2", 0.5 * levi_civita(), 2, -1)
    if space == "ela4":
        h, b = ela.cghd_ela4(T), ela.ibd_ela4(T)
        return [(h.H22, fourier_extract(b.C22, 4)),
                (h.a22, fourier_extract(b.C22, 0, embedding=half("P22/2", projector("P22"), 4))),
                (h.h20, fourier_extract(to_tensor(b.h20), 2)),
                (h.a00, fourier_extract(np.float64(b.a00.coords[0]), 0))]
    if space == "ela6":
        fam = ela.t3_family(basis, f)
        h, b = ela.cghd_ela6(T, basis, f), ela.ibd_ela6(T, basis, f)
        P3 = half("P3/2", fam.P3, 6)
        out = [(h.H33, fourier_extract(b.A33, 6)), (h.a33, fourier_extract(b.A33, 0, embedding=P3))]
        for H, hh, a in ((h.H31a, h.h31a, b.a31a), (h.H31b, h.h31b, b.a31b)):
            out += [(H, fourier_extract(a, 4)),
                    (hh, fourier_extract(a, 2, embedding=embedding("Phi_42")))]
        for hh, al, a in ((h.h1a1a, h.a1a1a, b.a1a1a), (h.h1b1b, h.a1b1b, b.a1b1b),
                          (h.h1a1b, h.a1a1b, b.a1a1b)):
            out += [(hh, fourier_extract(a, 2)), (al, fourier_extract(a, 0, embedding=I2))]
        out.append((h.b1a1b, fourier_extract(b.a1a1b, -1, embedding=E2)))
        return out
    h, b = ela.cghd_ela5(T, basis, f), ela.ibd_ela5(T, basis, f)
    out = [(h.H23, fourier_extract(b.M23, 5)),
           (h.v23, fourier_extract(b.M23, 1, embedding=embedding("Phi_51"))),
           (h.H03, fourier_extract(b.m03, 3)),
           (h.v01a, fourier_extract(b.mu01a, 1)), (h.v01b, fourier_extract(b.mu01b, 1))]
    for H, v, m in ((h.H21a, h.v21a, b.m21a), (h.H21b, h.v21b, b.m21b)):
        out += [(H, fourier_extract(m, 3)),
                (v, fourier_extract(m, 1, embedding=embedding("Phi_31")))]
    return out


def c7_oracle():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for space in ela.SPACES:
        for i in range(20):
            basis, f = VARIANTS[i % 4]
            T = ela.random_tensor(space, f, rng)
            pairs = _oracle_pairs(space, T, basis, f)
            for got, want in pairs:
                worst = max(worst, float(np.abs(got.coords - want.coords).max()))
    return worst < 1e-9, f"max residual {worst:.1e}"


def c8_isotropic():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(10):
        lam, mu = rng.uniform(-5, 5, 2)
        h = ela.cghd_ela4(lam * iso(4, 1) + mu * (iso(4, 2) + iso(4, 3)))
        got = np.concatenate([h.H22.coords, h.h20.coords, h.a22.coords, h.a00.coords])
        want = np.array([0, 0, 0, 0, 4 * mu, lam + mu])
        worst = max(worst, float(np.abs(got - want).max()))
    return worst < 1e-13, f"max residual {worst:.1e} (alpha00 = 1/2 C::P20)"


def c9_symmetry():
    rng = np.random.default_rng(SEED)
    worst, n = 0.0, 0
    for space in ela.SPACES:
        classes = list(ZEROED[space]) + (["Z2", "D2"] if space == "ela4" else [])
        for basis, f in VARIANTS[:1] if space == "ela4" else VARIANTS:
            for c in classes:
                T = ela.random_tensor(space, f, rng)
                h = restrict_to_class(ela.cghd(T, space, basis, f), c)
                R = ela.reconstruct(h)
                for g in class_generators(h, c, rng):
                    worst = max(worst, norm(rayleigh(g, R) - R) / max(norm(R), 1.0))
                    n += 1
    b = HarmonicComponent(-1, [1.5])
    flip = all(rho_rotate(b, reflection(rng.standard_normal(2))).coords[0] == -1.5
               for _ in range(5))
    return worst < 1e-11 and flip, f"{n} generator checks, max residual {worst:.1e}, K^-1 flips: {flip}"


def c10_racah():
    r6 = np.linalg.matrix_rank(gram([iso(6, p) for p in range(1, 16)]))
    r4 = np.linalg.matrix_rank(gram([iso(4, p) for p in range(1, 4)]))
    return (r6, r4) == (10, 3), f"rank 6th order {r6}, 4th order {r4}"


CRITERIA = [
    (1, "Gram tables", c1_gram),
    (2, "projector algebra", c2_projectors),
    (3, "embedding identities", c3_embeddings),
    (4, "round trip", c4_round_trip),
    (5, "equivariance", c5_equivariance),
    (6, "parameter counting", c6_counting),
    (7, "oracle equivalence", c7_oracle),
    (8, "isotropic elasticity", c8_isotropic),
    (9, "symmetry-class restriction", c9_symmetry),
    (10, "Racah rank", c10_racah),
]


def _line(num, name, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {num}: {name} ({detail})"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_criterion(num, name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(num, name, *fn()) for num, name, fn in CRITERIA]
    for r in results:
        print(_line(*r))
    raise SystemExit(0 if all(r[2] for r in results) else 1)
