import itertools

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def loop_contract(A, B, k):
    """Nested-loop oracle for contraction of the last k of A with the first k of B."""
    na, nb = A.ndim, B.ndim
    out = np.zeros((2,) * (na + nb - 2 * k))
    for I in itertools.product(range(2), repeat=na - k):
        for J in itertools.product(range(2), repeat=nb - k):
            s = 0.0
            for K in itertools.product(range(2), repeat=k):
                s += A[I + K] * B[K + J]
            out[I + J] = s
    return out


def loop_rayleigh(G, T):
    n = T.ndim
    out = np.zeros_like(T)
    for I in itertools.product(range(2), repeat=n):
        s = 0.0
        for J in itertools.product(range(2), repeat=n):
            p = T[J]
            for a, b in zip(I, J):
                p *= G[a, b]
            s += p
        out[I] = s
    return out


def rel(a, b):
    a, b = np.asarray(a, float), np.asarray(b, float)
    d = np.linalg.norm(b)
    return np.linalg.norm(a - b) / (d if d > 0 else 1.0)
