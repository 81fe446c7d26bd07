"""Harmonic embeddings Phi^{n,k}, their inverses and the induced projectors.

For an isotropic embedding ``Phi`` of K^k into order-``n`` tensors the scale
``gamma`` satisfies ``|Phi . v|^2 = gamma |v|^2``; the inverse is
``Pi = Phi^T / gamma`` and the projector onto the image is
``P = Phi . Pi``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ArityError, ConsistencyError
from .harmonic import HarmonicComponent, dim_k, from_tensor, to_tensor
from .iso import identity_on, iso, iso_combination, kronecker, levi_civita
from .tensor import contract, norm, rayleigh, rotation, reflection, transpose_block

EMBEDDING_TAGS = (
    "Phi_2_0", "Phi_s31", "Phi_r31", "Phi_sharp_r31", "Phi_d31", "Phi_h31",
    "Phi_31", "Phi_42", "Phi_51", "Phi_2_neg1",
)
PROJECTOR_TAGS = (
    "P22", "P20", "P2neg1", "P33", "P31s", "P31r", "P33_sharp", "P31r_sharp",
    "P31d", "P31h", "P33_dh",
)

GAMMA_TOL = 1e-12


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Embedding:
    """Isotropic embedding of K^k into order-``n`` tensors.

    Attributes
    ----------
    tag : str
    phi : ndarray
        Tensor of order ``n + max(k, 0)``.
    n, k : int
    gamma : float
        Scale from the trace formula, cross-checked against norm ratios.
    """

    tag: str
    phi: np.ndarray
    n: int
    k: int
    gamma: float

    @property
    def kk(self) -> int:
        return max(self.k, 0)

    @property
    def phi_t(self) -> np.ndarray:
        return transpose_block(self.phi, self.n, self.kk)

    @property
    def pi(self) -> np.ndarray:
        return self.phi_t / self.gamma

    @property
    def projector(self) -> np.ndarray:
        return contract(self.phi, self.pi, self.kk)

    def embed(self, v: HarmonicComponent) -> np.ndarray:
        if v.k != self.k:
            raise ArityError(f"{self.tag} embeds K^{self.k}, got K^{v.k}")
        return contract(self.phi, to_tensor(v), self.kk)

    def extract(self, T, tol=None, scale=None) -> HarmonicComponent:
        return from_tensor(contract(self.pi, T, self.n), self.k, tol, scale)


def _k_basis(k: int):
    """Orthonormal basis of K^k as tensors."""
    out = []
    for c in np.eye(dim_k(k)):
        t = to_tensor(HarmonicComponent(k, c))
        out.append(t / norm(t))
    return out


def gamma_trace(phi, k: int) -> float:
    """Gamma as the normalized trace of Phi^T Phi restricted to K^k."""
    kk = max(k, 0)
    imgs = [contract(phi, e, kk) for e in _k_basis(k)]
    M = np.array([[np.sum(a * b) for b in imgs] for a in imgs])
    return float(np.trace(M)) / len(imgs)


def gamma_ratio(phi, k: int, rng=None) -> float:
    """Gamma as ``|Phi . v|^2 / |v|^2`` for one random ``v`` in K^k."""
    rng = np.random.default_rng(rng)
    v = to_tensor(HarmonicComponent(k, rng.standard_normal(dim_k(k))))
    return norm(contract(phi, v, max(k, 0))) ** 2 / norm(v) ** 2


def _phi42_components() -> np.ndarray:
    d, P = kronecker(), projector("P22")
    return 0.5 * (np.einsum("kl,ijmn->ijklmn", d, P)
                  + np.einsum("jl,ikmn->ijklmn", d, P)
                  - np.einsum("jk,ilmn->ijklmn", d, P))


def phi51_component_formula() -> np.ndarray:
    """Phi^{5,1} from its explicit index formula, evaluated by loops."""
    d = np.eye(2)
    out = np.zeros((2,) * 6)
    for i, j, k, l, m, n in itertools.product(range(2), repeat=6):
        v = np.eye(2)[n]
        out[i, j, k, l, m, n] = 0.25 * (
            v[i] * (d[j, k] * d[l, m] - d[j, l] * d[k, m] - d[j, m] * d[k, l])
            - v[j] * d[i, m] * d[k, l]
            + v[k] * (-2 * d[i, j] * d[l, m] + d[i, l] * d[j, m] + 2 * d[i, m] * d[j, l])
            + v[l] * d[i, k] * d[j, m]
            + v[m] * d[i, j] * d[k, l]
        )
    return out


def to_type_one(phi) -> np.ndarray:
    """Move an (ij)k-side embedding to the i(jk) formulation.

    ``Phi#_{abc...} = Phi_{bca...}``: the symmetric pair moves to the back.
    """
    phi = np.asarray(phi)
    return np.transpose(phi, (2, 0, 1) + tuple(range(3, phi.ndim)))


_SPECS = {
    # tag: (n, k, builder)
    "Phi_2_0": (2, 0, lambda: 0.5 * kronecker()),
    "Phi_s31": (3, 1, lambda: iso_combination(4, {1: 0.25, 2: 0.25, 3: 0.25})),
    "Phi_r31": (3, 1, lambda: iso_combination(4, {1: 2 / 3, 2: -1 / 3, 3: -1 / 3})),
    "Phi_sharp_r31": (3, 1, lambda: iso_combination(4, {3: 2 / 3, 1: -1 / 3, 2: -1 / 3})),
    "Phi_d31": (3, 1, lambda: iso_combination(4, {2: 0.5, 3: 0.5, 1: -0.5})),
    "Phi_h31": (3, 1, lambda: 0.5 * iso(4, 1)),
    "Phi_31": (3, 1, lambda: projector("P22")),
    "Phi_42": (4, 2, _phi42_components),
    "Phi_51": (5, 1, lambda: iso_combination(
        6, {1: 0.25, 3: -0.5, 5: 0.25, 8: 0.25, 11: -0.25, 12: 0.5,
            13: 0.25, 14: -0.25, 15: -0.25})),
    "Phi_2_neg1": (2, -1, lambda: 0.5 * levi_civita()),
    # i(jk) counterparts of the d/h embeddings
    "Phi_sharp_d31": (3, 1, lambda: to_type_one(embedding("Phi_d31").phi)),
    "Phi_sharp_h31": (3, 1, lambda: to_type_one(embedding("Phi_h31").phi)),
}


def make_embedding(tag: str, phi, n: int, k: int, samples: int = 5, rng=0) -> Embedding:
    """Wrap ``phi`` as an Embedding, computing gamma two ways."""
    phi = _frozen(phi)
    if phi.ndim != n + max(k, 0):
        raise ArityError(f"{tag}: order {phi.ndim} != {n}+{max(k, 0)}")
    g = gamma_trace(phi, k)
    rng = np.random.default_rng(rng)
    for _ in range(samples):
        r = gamma_ratio(phi, k, rng)
        if abs(r - g) > GAMMA_TOL * max(g, 1.0):
            raise ConsistencyError(f"{tag}: gamma trace {g!r} vs ratio {r!r}")
    if g <= 0:
        raise ConsistencyError(f"{tag}: degenerate embedding")
    return Embedding(tag, phi, n, k, g)


@lru_cache(maxsize=None)
def embedding(tag: str) -> Embedding:
    if tag not in _SPECS:
        raise ArityError(f"unknown embedding {tag!r}")
    n, k, build = _SPECS[tag]
    phi = build()
    if tag == "Phi_51":
        r = float(np.abs(phi - phi51_component_formula()).max())
        if r > 1e-14:
            raise ConsistencyError(f"Phi_51 intrinsic and component forms differ by {r:.3e}")
    return make_embedding(tag, phi, n, k)


@lru_cache(maxsize=None)
def projector(tag: str) -> np.ndarray:
    if tag == "P22":
        return _frozen(identity_on("T2sym") - projector("P20"))
    simple = {"P20": "Phi_2_0", "P2neg1": "Phi_2_neg1", "P31s": "Phi_s31",
              "P31r": "Phi_r31", "P31r_sharp": "Phi_sharp_r31",
              "P31d": "Phi_d31", "P31h": "Phi_h31"}
    if tag in simple:
        return _frozen(embedding(simple[tag]).projector)
    if tag == "P33":
        return _frozen(identity_on("T3_typeII") - projector("P31s") - projector("P31r"))
    if tag == "P33_sharp":
        return _frozen(identity_on("T3_typeI") - projector("P31s") - projector("P31r_sharp"))
    if tag == "P33_dh":
        return _frozen(identity_on("T3_typeII") - projector("P31d") - projector("P31h"))
    raise ArityError(f"unknown projector {tag!r}")


@dataclass(frozen=True)
class EmbeddingReport:
    tag: str
    residuals: dict

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    def ok(self, tol: float = 1e-12) -> bool:
        return self.max_residual < tol


def verify_embedding(e: Embedding, samples: int = 5, rng=0) -> EmbeddingReport:
    """Check the defining identities of ``e`` and report max residuals.

    ``inverse``: Pi . Phi . v = v;  ``projector``: P idempotent and fixing
    the image of Phi;  ``norm``: |Phi v|^2 = gamma |v|^2;  ``isotropy``:
    g * Phi = Phi;  ``transpose``: Pi = Phi^T / gamma against the trace-based
    gamma.
    """
    rng = np.random.default_rng(rng)
    kk = e.kk
    P = contract(e.phi, e.pi, kk)
    res = {"inverse": 0.0, "projector": 0.0, "norm": 0.0, "isotropy": 0.0,
           "gamma": 0.0}
    res["projector"] = float(np.abs(contract(P, P, e.n) - P).max())
    res["gamma"] = abs(gamma_trace(e.phi, e.k) - e.gamma) / e.gamma
    for _ in range(samples):
        v = to_tensor(HarmonicComponent(e.k, rng.standard_normal(dim_k(e.k))))
        w = contract(e.phi, v, kk)
        back = contract(e.pi, w, e.n)
        res["inverse"] = max(res["inverse"], norm(back - v) / norm(v))
        res["projector"] = max(res["projector"], norm(contract(P, w, e.n) - w) / norm(w))
        res["norm"] = max(res["norm"], abs(norm(w) ** 2 - e.gamma * norm(v) ** 2) / norm(v) ** 2)
        th = rng.uniform(0, 2 * np.pi)
        for g in (rotation(th), reflection((np.cos(th), np.sin(th)))):
            gphi = rayleigh(g, e.phi)
            # a pseudo-scalar embedding carries the determinant
            expected = e.phi * (g.det if e.k == -1 else 1)
            res["isotropy"] = max(res["isotropy"], float(np.abs(gphi - expected).max()))
    return EmbeddingReport(e.tag, res)
