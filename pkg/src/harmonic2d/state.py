"""Harmonic decomposition of the state spaces T_(ij) and T_(ij)k / T_i(jk)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import default_tol
from .embeddings import Embedding, embedding, projector
from .errors import ValidationError
from .harmonic import HarmonicComponent, from_tensor, to_tensor
from .iso import identity_on
from .tensor import as_tensor, norm

BASES = ("sr", "dh")
FORMULATIONS = ("typeII", "typeI")

# symmetric slot pairs (0-based) of the order-3 state tensor
STATE3_PAIR = {"typeII": (0, 1), "typeI": (1, 2)}


def normalize_formulation(f: str) -> str:
    f2 = {"type2": "typeII", "typeii": "typeII", "ii": "typeII",
          "type1": "typeI", "typei": "typeI", "i": "typeI"}.get(str(f).lower())
    if f2 is None:
        raise ValidationError(f"unknown formulation {f!r}")
    return f2


def check_basis(basis: str) -> str:
    if basis not in BASES:
        raise ValidationError(f"unknown basis {basis!r}")
    return basis


@dataclass(frozen=True, eq=False)
class T3Family:
    """Embeddings and projectors of one (basis, formulation) variant.

    ``a`` and ``b`` are the two K^1 embeddings (s/r or d/h), ``P3`` the
    projector onto the K^3 part and ``I`` the identity on the state space.
    """

    basis: str
    formulation: str
    a: Embedding
    b: Embedding
    P3: np.ndarray
    I: np.ndarray

    @property
    def names(self) -> tuple[str, str]:
        return ("s", "r") if self.basis == "sr" else ("d", "h")


@lru_cache(maxsize=None)
def t3_family(basis: str = "sr", formulation: str = "typeII") -> T3Family:
    basis = check_basis(basis)
    formulation = normalize_formulation(formulation)
    if basis == "sr":
        a = embedding("Phi_s31")
        b = embedding("Phi_r31" if formulation == "typeII" else "Phi_sharp_r31")
    else:
        if formulation == "typeII":
            a, b = embedding("Phi_d31"), embedding("Phi_h31")
        else:
            a, b = embedding("Phi_sharp_d31"), embedding("Phi_sharp_h31")
    I = identity_on("T3_typeII" if formulation == "typeII" else "T3_typeI")
    if (basis, formulation) == ("sr", "typeII"):
        P3 = projector("P33")
    elif (basis, formulation) == ("sr", "typeI"):
        P3 = projector("P33_sharp")
    elif formulation == "typeII":
        P3 = projector("P33_dh")
    else:
        P3 = I - a.projector - b.projector
        P3.setflags(write=False)
    return T3Family(basis, formulation, a, b, P3, I)


def symmetry_residual(T, pairs) -> float:
    T = np.asarray(T)
    r = 0.0
    for p, q in pairs:
        r = max(r, float(np.abs(T - np.swapaxes(T, p, q)).max()))
    return r


def _validated(T, order, pairs, tol, what):
    T = as_tensor(T, order)
    tol = default_tol() if tol is None else tol
    r = symmetry_residual(T, pairs)
    if r > tol * norm(T):
        raise ValidationError(f"{what}: symmetry residual {r:.3e} exceeds tolerance")
    for p, q in pairs:
        T = 0.5 * (T + np.swapaxes(T, p, q))
    return T


# ---------------------------------------------------------------- T_(ij)

@dataclass(frozen=True, eq=False)
class T2Harmonics:
    d: HarmonicComponent
    alpha: HarmonicComponent


def decompose_t2(t, tol=None) -> T2Harmonics:
    t = _validated(t, 2, [(0, 1)], tol, "T_(ij)")
    alpha = float(np.trace(t))
    d = t - embedding("Phi_2_0").phi * alpha
    return T2Harmonics(from_tensor(d, 2, tol, norm(t)), HarmonicComponent(0, [alpha]))


def reconstruct_t2(h: T2Harmonics) -> np.ndarray:
    return to_tensor(h.d) + embedding("Phi_2_0").embed(h.alpha)


# ---------------------------------------------------------------- T_(ij)k

@dataclass(frozen=True, eq=False)
class T3Harmonics:
    H: HarmonicComponent
    v_a: HarmonicComponent
    v_b: HarmonicComponent
    basis: str = "sr"
    formulation: str = "typeII"

    def labelled(self) -> dict:
        na, nb = t3_family(self.basis, self.formulation).names
        return {"H": self.H, f"v_{na}": self.v_a, f"v_{nb}": self.v_b}


def validate_t3(T, formulation="typeII", tol=None) -> np.ndarray:
    formulation = normalize_formulation(formulation)
    return _validated(T, 3, [STATE3_PAIR[formulation]], tol, f"T3 ({formulation})")


def split_stretch_rotation(T, tol=None):
    """Split T in T_(ij)k into its totally symmetric part and the remainder."""
    T = validate_t3(T, "typeII", tol)
    # S_ijk = (T_ijk + T_ikj + T_jki) / 3
    S = (T + np.transpose(T, (0, 2, 1)) + np.transpose(T, (2, 0, 1))) / 3.0
    return S, T - S


def decompose_t3(T, basis="sr", formulation="typeII", tol=None) -> T3Harmonics:
    fam = t3_family(basis, formulation)
    T = validate_t3(T, fam.formulation, tol)
    s = norm(T)
    va = fam.a.extract(T, tol, s)
    vb = fam.b.extract(T, tol, s)
    H = T - fam.a.embed(va) - fam.b.embed(vb)
    return T3Harmonics(from_tensor(H, 3, tol, s), va, vb, fam.basis, fam.formulation)


def reconstruct_t3(h: T3Harmonics) -> np.ndarray:
    fam = t3_family(h.basis, h.formulation)
    return to_tensor(h.H) + fam.a.embed(h.v_a) + fam.b.embed(h.v_b)
