"""Block and harmonic decompositions of the 2D strain-gradient elasticity
tensors C (order 4), M (order 5) and A (order 6).

Each constitutive tensor is first cut into blocks indexed by the harmonic
parts of its state spaces (the intermediate block decomposition), then each
block is split into harmonic tensors by the Clebsch-Gordan rules.  Blocks
are recombined with the ``1/gamma`` weights of the embeddings involved.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, fields, replace

import numpy as np

from .config import default_tol
from .embeddings import embedding, projector
from .errors import ValidationError
from .harmonic import HarmonicComponent, from_tensor, split_self_map, to_tensor, zero
from .iso import kronecker, levi_civita
from .state import STATE3_PAIR, normalize_formulation, t3_family, validate_t3
from .tensor import as_tensor, contract, norm, transpose_block

SPACES = ("ela4", "ela5", "ela6")


def symmetry_generators(space: str, formulation: str = "typeII"):
    """Slot swaps and block swaps that define the index symmetry of a space."""
    f = normalize_formulation(formulation)
    p3 = STATE3_PAIR[f]
    if space == "t2":
        return [(0, 1)], None
    if space == "t3":
        return [p3], None
    if space == "ela4":
        return [(0, 1), (2, 3)], (2, 2)
    if space == "ela5":
        return [(0, 1), (p3[0] + 2, p3[1] + 2)], None
    if space == "ela6":
        return [p3, (p3[0] + 3, p3[1] + 3)], (3, 3)
    raise ValidationError(f"unknown space {space!r}")


SPACE_ORDER = {"t2": 2, "t3": 3, "ela4": 4, "ela5": 5, "ela6": 6}


def asymmetry(T, space: str, formulation: str = "typeII") -> float:
    pairs, block = symmetry_generators(space, formulation)
    T = np.asarray(T)
    r = 0.0
    for p, q in pairs:
        r = max(r, float(np.abs(T - np.swapaxes(T, p, q)).max()))
    if block is not None:
        r = max(r, float(np.abs(T - transpose_block(T, *block)).max()))
    return r


def validate(T, space: str, formulation: str = "typeII", tol=None) -> np.ndarray:
    """Check the index symmetry of ``T`` and return its symmetrized copy.

    Raises ValidationError when the relative asymmetry exceeds ``tol``.
    """
    T = as_tensor(T, SPACE_ORDER[space])
    tol = default_tol() if tol is None else tol
    r = asymmetry(T, space, formulation)
    if r > tol * norm(T):
        raise ValidationError(
            f"{space} ({normalize_formulation(formulation)}): symmetry residual "
            f"{r:.3e} exceeds tol {tol:g} (relative)")
    pairs, block = symmetry_generators(space, formulation)
    for p, q in pairs:
        T = 0.5 * (T + np.swapaxes(T, p, q))
    if block is not None:
        T = 0.5 * (T + transpose_block(T, *block))
    return T


# ------------------------------------------------------------------ bundles

def _display_label(name: str, na: str, nb: str) -> str:
    return re.sub("1b", "1" + nb, re.sub("1a", "1" + na, name))


class _Bundle:
    space = ""

    def components(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)
                if isinstance(getattr(self, f.name), HarmonicComponent)}

    def names(self):
        if not hasattr(self, "basis"):
            return ("a", "b")
        return t3_family(self.basis, self.formulation).names

    def labelled(self) -> dict:
        """Components keyed by their display labels (e.g. ``H31s``)."""
        na, nb = self.names()
        return {_display_label(k, na, nb): v for k, v in self.components().items()}

    @classmethod
    def from_labelled(cls, entries: dict, basis="sr", formulation="typeII"):
        kw = {}
        if cls is not Ela4Harmonics:
            kw = {"basis": basis, "formulation": normalize_formulation(formulation)}
            na, nb = t3_family(basis, formulation).names
        else:
            na, nb = "a", "b"
        lookup = {_display_label(f.name, na, nb): f.name for f in fields(cls)
                  if f.name not in ("basis", "formulation")}
        unknown = set(entries) - set(lookup)
        if unknown:
            raise KeyError(f"unknown labels {sorted(unknown)}")
        missing = set(lookup) - set(entries)
        if missing:
            raise KeyError(f"missing labels {sorted(missing)}")
        for lab, h in entries.items():
            kw[lookup[lab]] = h
        return cls(**kw)

    def coords(self) -> np.ndarray:
        return np.concatenate([h.coords for h in self.components().values()])

    def map(self, fn):
        """Apply ``fn`` to every component, keeping labels."""
        return replace(self, **{k: fn(v) for k, v in self.components().items()})


@dataclass(frozen=True, eq=False)
class Ela4Harmonics(_Bundle):
    H22: HarmonicComponent
    h20: HarmonicComponent
    a22: HarmonicComponent
    a00: HarmonicComponent
    space = "ela4"


@dataclass(frozen=True, eq=False)
class Ela5Harmonics(_Bundle):
    H23: HarmonicComponent
    H21a: HarmonicComponent
    H21b: HarmonicComponent
    H03: HarmonicComponent
    v23: HarmonicComponent
    v21a: HarmonicComponent
    v21b: HarmonicComponent
    v01a: HarmonicComponent
    v01b: HarmonicComponent
    basis: str = "sr"
    formulation: str = "typeII"
    space = "ela5"


@dataclass(frozen=True, eq=False)
class Ela6Harmonics(_Bundle):
    H33: HarmonicComponent
    H31a: HarmonicComponent
    H31b: HarmonicComponent
    h31a: HarmonicComponent
    h31b: HarmonicComponent
    h1a1b: HarmonicComponent
    h1a1a: HarmonicComponent
    h1b1b: HarmonicComponent
    a33: HarmonicComponent
    a1a1a: HarmonicComponent
    a1b1b: HarmonicComponent
    a1a1b: HarmonicComponent
    b1a1b: HarmonicComponent
    basis: str = "sr"
    formulation: str = "typeII"
    space = "ela6"


# K-orders of every field, used to build zero bundles and for checks
ORDERS = {
    "ela4": {"H22": 4, "h20": 2, "a22": 0, "a00": 0},
    "ela5": {"H23": 5, "H21a": 3, "H21b": 3, "H03": 3, "v23": 1, "v21a": 1,
             "v21b": 1, "v01a": 1, "v01b": 1},
    "ela6": {"H33": 6, "H31a": 4, "H31b": 4, "h31a": 2, "h31b": 2, "h1a1b": 2,
             "h1a1a": 2, "h1b1b": 2, "a33": 0, "a1a1a": 0, "a1b1b": 0,
             "a1a1b": 0, "b1a1b": -1},
}
BUNDLES = {"ela4": Ela4Harmonics, "ela5": Ela5Harmonics, "ela6": Ela6Harmonics}


def zero_bundle(space: str, basis="sr", formulation="typeII"):
    kw = {k: zero(o) for k, o in ORDERS[space].items()}
    if space != "ela4":
        kw.update(basis=basis, formulation=normalize_formulation(formulation))
    return BUNDLES[space](**kw)


# ------------------------------------------------------------------ helpers

def _phi20():
    return embedding("Phi_2_0")


def _bilinear(X, L, R, n):
    """``L^T (.)n X (.)n R`` for left/right embeddings sharing ``n`` slots."""
    return contract(contract(L, X, n[0]), R, n[1])


def _split_k1k1(a, scale, tol, symmetric):
    """K^1 (x) K^1 block ``a = h + (beta/2) eps + (alpha/2) i``."""
    alpha = float(np.sum(a * kronecker()))
    beta = float(np.sum(a * levi_civita()))
    h = contract(projector("P22"), a, 2)
    out = [from_tensor(h, 2, tol, scale), HarmonicComponent(0, [alpha])]
    if not symmetric:
        out.append(HarmonicComponent(-1, [beta]))
    return out


def _k1k1(h, alpha, beta=None):
    a = to_tensor(h) + 0.5 * alpha.coords[0] * kronecker()
    if beta is not None:
        a = a + 0.5 * beta.coords[0] * levi_civita()
    return a


# --------------------------------------------------------------------- Ela4

@dataclass(frozen=True, eq=False)
class Ela4Blocks:
    C22: np.ndarray
    h20: HarmonicComponent
    a00: HarmonicComponent


def ibd_ela4(C, tol=None) -> Ela4Blocks:
    C = validate(C, "ela4", tol=tol)
    P22, phi = projector("P22"), _phi20().phi
    C22 = _bilinear(C, P22, P22, (2, 2))
    h20 = _bilinear(C, P22, phi, (2, 2))
    # alpha00 = 1/2 C :: P20 = 1/4 i:C:i
    a00 = float(_bilinear(C, phi, phi, (2, 2)))
    return Ela4Blocks(C22, from_tensor(h20, 2, tol, norm(C)), HarmonicComponent(0, [a00]))


def cghd_ela4(C, tol=None) -> Ela4Harmonics:
    b = ibd_ela4(C, tol)
    s = norm(C)
    H22, a22 = split_self_map(b.C22, projector("P22"), 2, tol, s)
    return Ela4Harmonics(H22, b.h20, HarmonicComponent(0, [a22]), b.a00)


def reconstruct_ela4(h: Ela4Harmonics) -> np.ndarray:
    e = _phi20()
    P22 = projector("P22")
    C22 = to_tensor(h.H22) + 0.5 * h.a22.coords[0] * P22
    hh = to_tensor(h.h20)
    C = C22 + (np.multiply.outer(hh, e.phi) + np.multiply.outer(e.phi, hh)) / e.gamma
    return C + (h.a00.coords[0] / e.gamma**2) * np.multiply.outer(e.phi, e.phi)


# --------------------------------------------------------------------- Ela6

@dataclass(frozen=True, eq=False)
class Ela6Blocks:
    A33: np.ndarray
    a31a: np.ndarray
    a31b: np.ndarray
    a1a1a: np.ndarray
    a1a1b: np.ndarray
    a1b1b: np.ndarray


def ibd_ela6(A, basis="sr", formulation="typeII", tol=None) -> Ela6Blocks:
    fam = t3_family(basis, formulation)
    A = validate(A, "ela6", fam.formulation, tol)
    P3, Fa, Fb = fam.P3, fam.a.phi, fam.b.phi
    FaT, FbT = fam.a.phi_t, fam.b.phi_t
    return Ela6Blocks(
        A33=_bilinear(A, P3, P3, (3, 3)),
        a31a=_bilinear(A, P3, Fa, (3, 3)),
        a31b=_bilinear(A, P3, Fb, (3, 3)),
        a1a1a=_bilinear(A, FaT, Fa, (3, 3)),
        a1a1b=_bilinear(A, FaT, Fb, (3, 3)),
        a1b1b=_bilinear(A, FbT, Fb, (3, 3)),
    )


def _split_31(a, tol, scale):
    """K^3 (x) K^1 block ``a = H + Phi42 : h`` with ``h = tr14 a``."""
    h = from_tensor(np.trace(a, axis1=0, axis2=3), 2, tol, scale)
    H = a - embedding("Phi_42").embed(h)
    return from_tensor(H, 4, tol, scale), h


def cghd_ela6(A, basis="sr", formulation="typeII", tol=None) -> Ela6Harmonics:
    fam = t3_family(basis, formulation)
    b = ibd_ela6(A, basis, formulation, tol)
    s = norm(A)
    H33, a33 = split_self_map(b.A33, fam.P3, 3, tol, s)
    H31a, h31a = _split_31(b.a31a, tol, s)
    H31b, h31b = _split_31(b.a31b, tol, s)
    h_aa, a_aa = _split_k1k1(b.a1a1a, s, tol, True)
    h_bb, a_bb = _split_k1k1(b.a1b1b, s, tol, True)
    h_ab, a_ab, b_ab = _split_k1k1(b.a1a1b, s, tol, False)
    return Ela6Harmonics(
        H33=H33, H31a=H31a, H31b=H31b, h31a=h31a, h31b=h31b, h1a1b=h_ab,
        h1a1a=h_aa, h1b1b=h_bb, a33=HarmonicComponent(0, [a33]), a1a1a=a_aa,
        a1b1b=a_bb, a1a1b=a_ab, b1a1b=b_ab, basis=fam.basis,
        formulation=fam.formulation)


def blocks_from_ela6(h: Ela6Harmonics) -> Ela6Blocks:
    fam = t3_family(h.basis, h.formulation)
    phi42 = embedding("Phi_42")
    return Ela6Blocks(
        A33=to_tensor(h.H33) + 0.5 * h.a33.coords[0] * fam.P3,
        a31a=to_tensor(h.H31a) + phi42.embed(h.h31a),
        a31b=to_tensor(h.H31b) + phi42.embed(h.h31b),
        a1a1a=_k1k1(h.h1a1a, h.a1a1a),
        a1a1b=_k1k1(h.h1a1b, h.a1a1b, h.b1a1b),
        a1b1b=_k1k1(h.h1b1b, h.a1b1b),
    )


def assemble_ela6(b: Ela6Blocks, basis="sr", formulation="typeII") -> np.ndarray:
    fam = t3_family(basis, formulation)
    A = np.array(b.A33)
    for a3, e in ((b.a31a, fam.a), (b.a31b, fam.b)):
        A = A + (contract(a3, e.phi_t, 1)
                 + contract(e.phi, transpose_block(a3, 3, 1), 1)) / e.gamma
    pairs = ((fam.a, b.a1a1a, fam.a), (fam.b, b.a1b1b, fam.b),
             (fam.a, b.a1a1b, fam.b), (fam.b, b.a1a1b.T, fam.a))
    for L, a, R in pairs:
        A = A + contract(contract(L.phi, a, 1), R.phi_t, 1) / (L.gamma * R.gamma)
    return A


def reconstruct_ela6(h: Ela6Harmonics) -> np.ndarray:
    return assemble_ela6(blocks_from_ela6(h), h.basis, h.formulation)


# --------------------------------------------------------------------- Ela5

@dataclass(frozen=True, eq=False)
class Ela5Blocks:
    M23: np.ndarray
    m21a: np.ndarray
    m21b: np.ndarray
    m03: np.ndarray
    mu01a: np.ndarray
    mu01b: np.ndarray


def ibd_ela5(M, basis="sr", formulation="typeII", tol=None) -> Ela5Blocks:
    fam = t3_family(basis, formulation)
    M = validate(M, "ela5", fam.formulation, tol)
    P22, phi = projector("P22"), _phi20().phi
    return Ela5Blocks(
        M23=_bilinear(M, P22, fam.P3, (2, 3)),
        m21a=_bilinear(M, P22, fam.a.phi, (2, 3)),
        m21b=_bilinear(M, P22, fam.b.phi, (2, 3)),
        m03=_bilinear(M, phi, fam.P3, (2, 3)),
        mu01a=_bilinear(M, phi, fam.a.phi, (2, 3)),
        mu01b=_bilinear(M, phi, fam.b.phi, (2, 3)),
    )


def _split_21(m, tol, scale):
    """K^2 (x) K^1 block ``m = H + Phi31 . v`` with ``v = tr13 m``."""
    v = HarmonicComponent(1, np.trace(m, axis1=0, axis2=2))
    H = m - embedding("Phi_31").embed(v)
    return from_tensor(H, 3, tol, scale), v


def cghd_ela5(M, basis="sr", formulation="typeII", tol=None) -> Ela5Harmonics:
    fam = t3_family(basis, formulation)
    b = ibd_ela5(M, basis, formulation, tol)
    s = norm(M)
    # v = tr12(tr13 M23)
    v23 = HarmonicComponent(1, np.trace(np.trace(b.M23, axis1=0, axis2=2), axis1=0, axis2=1))
    H23 = from_tensor(b.M23 - embedding("Phi_51").embed(v23), 5, tol, s)
    H21a, v21a = _split_21(b.m21a, tol, s)
    H21b, v21b = _split_21(b.m21b, tol, s)
    return Ela5Harmonics(
        H23=H23, H21a=H21a, H21b=H21b, H03=from_tensor(b.m03, 3, tol, s),
        v23=v23, v21a=v21a, v21b=v21b,
        v01a=HarmonicComponent(1, b.mu01a), v01b=HarmonicComponent(1, b.mu01b),
        basis=fam.basis, formulation=fam.formulation)


def blocks_from_ela5(h: Ela5Harmonics) -> Ela5Blocks:
    phi31 = embedding("Phi_31")
    return Ela5Blocks(
        M23=to_tensor(h.H23) + embedding("Phi_51").embed(h.v23),
        m21a=to_tensor(h.H21a) + phi31.embed(h.v21a),
        m21b=to_tensor(h.H21b) + phi31.embed(h.v21b),
        m03=to_tensor(h.H03), mu01a=to_tensor(h.v01a), mu01b=to_tensor(h.v01b),
    )


def assemble_ela5(b: Ela5Blocks, basis="sr", formulation="typeII") -> np.ndarray:
    fam = t3_family(basis, formulation)
    e0 = _phi20()
    M = np.array(b.M23) + np.multiply.outer(e0.phi, b.m03) / e0.gamma
    for m2, mu, e in ((b.m21a, b.mu01a, fam.a), (b.m21b, b.mu01b, fam.b)):
        M = M + contract(m2, e.phi_t, 1) / e.gamma
        M = M + contract(np.multiply.outer(e0.phi, mu), e.phi_t, 1) / (e0.gamma * e.gamma)
    return M


def reconstruct_ela5(h: Ela5Harmonics) -> np.ndarray:
    return assemble_ela5(blocks_from_ela5(h), h.basis, h.formulation)


# ------------------------------------------------------------ generic entry

def cghd(T, space: str, basis="sr", formulation="typeII", tol=None):
    if space == "ela4":
        return cghd_ela4(T, tol)
    if space == "ela5":
        return cghd_ela5(T, basis, formulation, tol)
    if space == "ela6":
        return cghd_ela6(T, basis, formulation, tol)
    raise ValidationError(f"unknown space {space!r}")


def reconstruct(h) -> np.ndarray:
    return {"ela4": reconstruct_ela4, "ela5": reconstruct_ela5,
            "ela6": reconstruct_ela6}[h.space](h)


# ------------------------------------------------------- constitutive law

def apply_law(C, M, A, eps, eta, formulation="typeII", tol=None):
    """Stress and hyperstress ``sigma = C:eps + M.:eta``, ``tau = M^T:eps + A.:eta``."""
    f = normalize_formulation(formulation)
    C = validate(C, "ela4", tol=tol)
    M = validate(M, "ela5", f, tol)
    A = validate(A, "ela6", f, tol)
    eps = validate(eps, "t2", tol=tol)
    eta = validate_t3(eta, f, tol)
    sigma = contract(C, eps, 2) + contract(M, eta, 3)
    tau = contract(transpose_block(M, 2, 3), eps, 2) + contract(A, eta, 3)
    return sigma, tau


def energy_split(C, M, A, eps, eta, basis="sr", formulation="typeII", tol=None):
    """Internal energy density and its split over harmonic state parts.

    ``eps`` is split into its K^2 and K^0 parts, ``eta`` into its K^3 part and
    the two K^1 parts of the chosen basis; each block entry is the energy of
    one pair of parts (symmetric cross pairs counted once with weight 2).

    Returns
    -------
    total : float
    parts : dict
        Keys such as ``"C[2,0]"``, ``"M[2,3]"`` or ``"A[1s,1r]"``.
    """
    fam = t3_family(basis, formulation)
    f = fam.formulation
    C = validate(C, "ela4", tol=tol)
    M = validate(M, "ela5", f, tol)
    A = validate(A, "ela6", f, tol)
    eps = validate(eps, "t2", tol=tol)
    eta = validate_t3(eta, f, tol)
    total = (0.5 * float(np.sum(eps * contract(C, eps, 2)))
             + float(np.sum(eps * contract(M, eta, 3)))
             + 0.5 * float(np.sum(eta * contract(A, eta, 3))))
    na, nb = fam.names
    e_parts = {"2": contract(projector("P22"), eps, 2),
               "0": contract(projector("P20"), eps, 2)}
    n_parts = {"3": contract(fam.P3, eta, 3),
               "1" + na: contract(fam.a.projector, eta, 3),
               "1" + nb: contract(fam.b.projector, eta, 3)}

    def quad(X, parts, n, tag):
        out = {}
        keys = list(parts)
        for i, p in enumerate(keys):
            for q in keys[i:]:
                w = 0.5 if p == q else 1.0
                out[f"{tag}[{p},{q}]"] = w * float(np.sum(parts[p] * contract(X, parts[q], n)))
        return out

    res = quad(C, e_parts, 2, "C")
    for p, ep in e_parts.items():
        for q, nq in n_parts.items():
            res[f"M[{p},{q}]"] = float(np.sum(ep * contract(M, nq, 3)))
    res.update(quad(A, n_parts, 3, "A"))
    return total, res


def random_tensor(space: str, formulation="typeII", rng=None) -> np.ndarray:
    """Random tensor with the index symmetry of ``space`` (Gaussian entries)."""
    rng = np.random.default_rng(rng)
    T = rng.standard_normal((2,) * SPACE_ORDER[space])
    pairs, block = symmetry_generators(space, formulation)
    for p, q in pairs:
        T = 0.5 * (T + np.swapaxes(T, p, q))
    if block is not None:
        T = 0.5 * (T + transpose_block(T, *block))
    return T
