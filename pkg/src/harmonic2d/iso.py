"""Elementary isotropic tensors and identities on the state spaces."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ArityError

_LETTERS = "ijklmn"

# index pairings of the elementary isotropic tensors
PAIRINGS = {
    2: ("ij",),
    4: ("ij kl", "ik jl", "il jk"),
    6: (
        "ij kl mn", "ij km ln", "ij kn lm",
        "ik jl mn", "ik jm ln", "ik jn lm",
        "il jk mn", "il jm kn", "il jn km",
        "im jk ln", "im jn kl", "im jl kn",
        "in jk lm", "in jl km", "in jm kl",
    ),
}


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def iso(n: int, p: int = 1) -> np.ndarray:
    """Elementary isotropic tensor ``i_p^(n)`` for ``n`` in {2, 4, 6}."""
    if n not in PAIRINGS or not 1 <= p <= len(PAIRINGS[n]):
        raise ArityError(f"no isotropic tensor i_{p}^({n})")
    pairs = PAIRINGS[n][p - 1].split()
    d = np.eye(2)
    expr = ",".join(pairs) + "->" + _LETTERS[:n]
    return _frozen(np.einsum(expr, *([d] * len(pairs))))


def kronecker() -> np.ndarray:
    return iso(2, 1)


@lru_cache(maxsize=None)
def levi_civita() -> np.ndarray:
    return _frozen(np.array([[0.0, 1.0], [-1.0, 0.0]]))


def iso_combination(n: int, coeffs: dict) -> np.ndarray:
    """Linear combination ``sum c_p i_p^(n)`` from a ``{p: c}`` mapping."""
    out = np.zeros((2,) * n)
    for p, c in coeffs.items():
        out = out + c * iso(n, p)
    return out


@lru_cache(maxsize=None)
def identity_on(space: str) -> np.ndarray:
    """Identity (symmetrizer) on ``T2sym``, ``T3_typeII``, ``T3_typeI``, ``K2``, ``K3``."""
    if space == "T2sym":
        return _frozen(iso_combination(4, {2: 0.5, 3: 0.5}))
    if space == "T3_typeII":
        return _frozen(iso_combination(6, {8: 0.5, 12: 0.5}))
    if space == "T3_typeI":
        return _frozen(iso_combination(6, {8: 0.5, 9: 0.5}))
    if space in ("K2", "K3"):
        from .embeddings import projector
        return projector("P22" if space == "K2" else "P33")
    raise ArityError(f"unknown state space {space!r}")


def gram(tensors) -> np.ndarray:
    flat = np.array([np.ravel(t) for t in tensors])
    return flat @ flat.T
