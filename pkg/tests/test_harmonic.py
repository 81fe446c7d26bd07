import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from harmonic2d.embeddings import embedding, projector
from harmonic2d.errors import ArityError, NotHarmonicError, ValidationError
from harmonic2d.harmonic import (HarmonicComponent, dim_k, fourier_extract, from_tensor,
                                 harmonic_residual, isotypic_part, rho_matrix, rho_rotate,
                                 split_self_map, to_tensor)
from harmonic2d.iso import kronecker
from harmonic2d.tensor import contract, rayleigh, reflection, rotation

from conftest import rel

coords = st.lists(st.floats(-100, 100), min_size=2, max_size=2)


def test_to_tensor_examples():
    assert np.array_equal(to_tensor(HarmonicComponent(2, [1, 0])), [[1, 0], [0, -1]])
    assert np.array_equal(to_tensor(HarmonicComponent(2, [0, 1])), [[0, 1], [1, 0]])
    T = to_tensor(HarmonicComponent(3, [1, 0]))
    assert (T[0, 0, 0], T[0, 1, 1], T[0, 0, 1], T[1, 1, 1]) == (1, -1, 0, 0)
    assert T[1, 0, 1] == T[1, 1, 0] == -1


def test_to_tensor_solves_linear_system():
    # oracle: null space of the symmetry and trace constraints, pinned by the coords
    import itertools
    for k in range(1, 7):
        n = 2**k
        rows = []
        idx = list(itertools.product(range(2), repeat=k))
        pos = {I: a for a, I in enumerate(idx)}
        for I in idx:
            for a in range(k - 1):
                J = list(I)
                J[a], J[a + 1] = J[a + 1], J[a]
                r = np.zeros(n)
                r[pos[I]] += 1
                r[pos[tuple(J)]] -= 1
                rows.append(r)
        for I in (itertools.product(range(2), repeat=k - 2) if k >= 2 else ()):
            r = np.zeros(n)
            r[pos[(0, 0) + I]] += 1
            r[pos[(1, 1) + I]] += 1
            rows.append(r)
        for h in ([1.0, 0.0], [0.0, 1.0]):
            r1, r2 = np.zeros(n), np.zeros(n)
            r1[pos[(0,) * k]] = 1
            r2[pos[(0,) * (k - 1) + (1,)]] = 1
            A = np.vstack(rows + [r1, r2])
            b = np.concatenate([np.zeros(len(rows)), h])
            x = np.linalg.lstsq(A, b, rcond=None)[0]
            assert np.allclose(A @ x, b)
            assert np.allclose(x.reshape((2,) * k), to_tensor(HarmonicComponent(k, h)))


@pytest.mark.parametrize("k", range(1, 7))
@given(c=coords)
def test_round_trip(k, c):
    H = HarmonicComponent(k, c)
    T = to_tensor(H)
    assert harmonic_residual(T) <= 1e-12 * max(1.0, np.abs(T).max())
    assert np.allclose(from_tensor(T, k).coords, H.coords)


def test_from_tensor_errors():
    with pytest.raises(NotHarmonicError):
        from_tensor(kronecker(), 2)
    assert np.array_equal(from_tensor(np.zeros((2,) * 3), 3).coords, [0, 0])
    with pytest.raises(ArityError):
        from_tensor(np.zeros((2, 2)), 3)
    with pytest.raises(ArityError):
        HarmonicComponent(2, [1.0])
    with pytest.raises(ArityError):
        dim_k(-2)


def test_rho_examples():
    H = HarmonicComponent(4, [0.3, -1.2])
    assert np.allclose(rho_rotate(H, rotation(np.pi / 4)).coords, -H.coords)
    b = HarmonicComponent(-1, [2.5])
    assert rho_rotate(b, reflection((0, 1))).coords[0] == -2.5
    assert rho_rotate(HarmonicComponent(0, [3.0]), reflection((1, 1))).coords[0] == 3.0
    assert np.allclose(rho_matrix(3, reflection((0, 1))), np.diag([1, -1]))


@pytest.mark.parametrize("k", range(-1, 7))
def test_rho_intertwines_rayleigh(rng, k):
    # K^0, K^-1 are tested through their order-2 embeddings
    for _ in range(20):
        th = rng.uniform(0, 2 * np.pi)
        g = rotation(th) if rng.random() < 0.5 else reflection((math.cos(th), math.sin(th)))
        H = HarmonicComponent(k, rng.standard_normal(dim_k(k)))
        if k >= 1:
            lhs, rhs = to_tensor(rho_rotate(H, g)), rayleigh(g, to_tensor(H))
        else:
            e = embedding("Phi_2_0" if k == 0 else "Phi_2_neg1")
            lhs, rhs = e.embed(rho_rotate(H, g)), rayleigh(g, e.embed(H))
        assert rel(lhs, rhs) < 1e-12


def test_rho_is_homomorphism(rng):
    for _ in range(20):
        g1 = reflection(rng.standard_normal(2))
        g2 = rotation(rng.uniform(0, 7))
        for k in (-1, 0, 1, 3, 6):
            assert np.allclose(rho_matrix(k, g1 @ g2), rho_matrix(k, g1) @ rho_matrix(k, g2))


@pytest.mark.parametrize("k", range(1, 7))
def test_fourier_extract_recovers(rng, k):
    H = HarmonicComponent(k, rng.standard_normal(2))
    T = to_tensor(H)
    assert np.allclose(fourier_extract(T, k).coords, H.coords, atol=1e-10)
    for k2 in range(-1, 7):
        if k2 != k:
            assert np.abs(isotypic_part(T, k2)).max() < 1e-10


def test_fourier_extract_identity():
    assert np.allclose(fourier_extract(kronecker(), 2).coords, 0, atol=1e-14)
    with pytest.raises(ValidationError):
        fourier_extract(np.zeros((2,) * 4), 4, N=8)


def test_fourier_extract_with_embedding(rng):
    v = HarmonicComponent(1, rng.standard_normal(2))
    H4 = HarmonicComponent(4, rng.standard_normal(2))
    T = embedding("Phi_31").embed(v) + 0 * to_tensor(H4)[..., 0]
    assert np.allclose(fourier_extract(T, 1, embedding=embedding("Phi_31")).coords, v.coords)
    # pseudo-scalar in a second-order tensor
    a = 1.7 * kronecker() + 0.4 * np.array([[0, 1.0], [-1, 0]])
    assert fourier_extract(a, -1, embedding=embedding("Phi_2_neg1")).coords[0] == pytest.approx(0.8)
    assert fourier_extract(a, 0, embedding=embedding("Phi_2_0")).coords[0] == pytest.approx(3.4)


def test_split_self_map_examples(rng):
    for n, tag in ((2, "P22"), (3, "P33")):
        K, a = split_self_map(projector(tag), projector(tag), n)
        assert a == pytest.approx(2.0)
        assert np.allclose(K.coords, 0, atol=1e-14)
    H = HarmonicComponent(4, rng.standard_normal(2))
    K, a = split_self_map(to_tensor(H), projector("P22"), 2)
    assert abs(a) < 1e-14 and np.allclose(K.coords, H.coords)
    T = to_tensor(H) + 0.8 * projector("P22")
    K, a = split_self_map(T, projector("P22"), 2)
    assert a == pytest.approx(1.6)
    assert rel(to_tensor(K) + a / 2 * projector("P22"), T) < 1e-13
    assert abs(float(contract(to_tensor(K), projector("P22"), 4))) < 1e-13
    with pytest.raises(ValidationError):
        split_self_map(projector("P20"), projector("P22"), 2)
