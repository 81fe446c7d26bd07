"""Symmetry classes of the elasticity tensors through vanishing harmonics."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .config import SYMMETRY_CLASS_TOL
from .ela import ORDERS
from .errors import UnresolvedClassError
from .harmonic import zero
from .tensor import GroupElement, from_matrix, norm, rayleigh, reflection, rotation


class SymmetryClass(str, enum.Enum):
    Z2 = "Z2"
    D2 = "D2"
    Z4 = "Z4"
    D4 = "D4"
    Z6 = "Z6"
    D6 = "D6"
    Z3 = "Z3"
    D3 = "D3"
    D5 = "D5"
    Z2pi = "Z2pi"
    triv = "triv"
    SO2 = "SO2"
    O2 = "O2"


C = SymmetryClass

CLASSES = {
    "ela4": (C.Z2, C.D2, C.D4, C.O2),
    "ela6": (C.Z2, C.D2, C.Z4, C.D4, C.Z6, C.D6, C.SO2, C.O2),
    "ela5": (C.triv, C.Z2pi, C.Z3, C.D3, C.D5, C.O2),
}

# components forced to zero by each displayed normal form
_E6_Z6 = ("H31a", "H31b", "h31a", "h31b", "h1a1b", "h1a1a", "h1b1b")
ZEROED = {
    "ela4": {C.D4: ("h20",), C.O2: ("h20", "H22")},
    "ela6": {C.Z6: _E6_Z6, C.D6: _E6_Z6 + ("b1a1b",),
             C.SO2: _E6_Z6 + ("H33",), C.O2: _E6_Z6 + ("H33", "b1a1b")},
    "ela5": {C.D5: tuple(k for k in ORDERS["ela5"] if k != "H23"),
             C.O2: tuple(ORDERS["ela5"])},
}

# covering relations (lower -> higher) among the resolved classes
_ABOVE = {
    C.Z2: (C.D2,), C.D2: (C.D4,), C.D4: (C.O2,), C.Z6: (C.D6, C.SO2),
    C.D6: (C.O2,), C.SO2: (C.O2,), C.D5: (C.O2,),
}

_DEFERRED = {
    "ela4": "Z2 or D2: unresolved; telling them apart needs invariant relations "
            "between the harmonic components that are not implemented",
    "ela6": "Z2, D2, Z4, D4: unresolved; identifying lower classes needs additional "
            "tools beyond the vanishing pattern of harmonic components",
    "ela5": "triv, Z2pi, Z3, D3: unresolved; identifying lower classes needs "
            "additional tools beyond the vanishing pattern of harmonic components",
}


def is_invariant(T, g: GroupElement, tol: float = 1e-11) -> bool:
    T = np.asarray(T, dtype=float)
    return norm(rayleigh(g, T) - T) <= tol * norm(T)


@dataclass(frozen=True)
class Classification:
    classes: frozenset
    notes: list = field(default_factory=list)

    @property
    def maximal(self) -> frozenset:
        return frozenset(c for c in self.classes
                         if not any(hi in self.classes for hi in _ABOVE.get(c, ())))


def _vanishes(h, names, tol) -> bool:
    scale = float(np.linalg.norm(h.coords()))
    comps = h.components()
    return all(comps[n].norm() <= tol * scale for n in names)


def classify_high(h, tol: float = SYMMETRY_CLASS_TOL) -> Classification:
    """Resolved symmetry classes consistent with the vanishing components of ``h``.

    The result is set-valued: a tensor in a class is also consistent with
    every class below it in the poset; ``Classification.maximal`` picks the
    top ones.
    """
    found = frozenset(c for c, names in ZEROED[h.space].items() if _vanishes(h, names, tol))
    notes = [] if found else [_DEFERRED[h.space]]
    return Classification(found, notes)


def _normal_form_d2(h):
    # D2 with mirror normal e2: rho_k(p(e2)) = diag(1, -1) kills second coords
    def fix(c):
        if c.k >= 1:
            return type(c)(c.k, [c.coords[0], 0.0])
        return zero(c.k) if c.k == -1 else c
    return h.map(fix)


def restrict_to_class(h, c):
    """Force the components absent from the normal form of class ``c`` to zero.

    ``Z2`` (Ela4) keeps the full expression; ``D2`` (Ela4) is returned in the
    frame whose mirror has normal e2.  Other unresolved classes raise
    UnresolvedClassError.
    """
    c = SymmetryClass(c)
    if h.space == "ela4" and c == C.Z2:
        return h
    if h.space == "ela4" and c == C.D2:
        return _normal_form_d2(h)
    if c not in ZEROED[h.space]:
        raise UnresolvedClassError(f"class {c.value} is not resolved for {h.space}")
    drop = set(ZEROED[h.space][c])
    return replace(h, **{n: zero(v.k) for n, v in h.components().items() if n in drop})


def _mirror_for(comp) -> GroupElement:
    """A reflection fixing the K^k component ``comp`` (k >= 1)."""
    phi = math.atan2(comp.coords[1], comp.coords[0])
    psi = 2.0 * phi / comp.k
    c, s = math.cos(psi), math.sin(psi)
    return from_matrix(np.array([[c, s], [s, -c]]))


_TOP = {"ela4": "H22", "ela6": "H33", "ela5": "H23"}


def class_generators(h, c, rng=None) -> list:
    """Generators of a representative of class ``c`` fixing ``reconstruct(h)``.

    Dihedral mirrors are located from the top-order harmonic component of a
    restricted bundle; rotation-invariant classes return sampled rotations.
    """
    c = SymmetryClass(c)
    rng = np.random.default_rng(rng)
    rot = {C.Z2: 2, C.D2: 2, C.Z4: 4, C.D4: 4, C.Z6: 6, C.D6: 6, C.Z3: 3,
           C.D3: 3, C.D5: 5}
    gens = []
    if c in rot:
        gens.append(rotation(2 * math.pi / rot[c]))
    if c in (C.SO2, C.O2):
        gens.extend(rotation(t) for t in rng.uniform(0, 2 * math.pi, 5))
    if c == C.O2:
        gens.extend(reflection((math.cos(t), math.sin(t))) for t in rng.uniform(0, 2 * math.pi, 5))
    if c == C.Z2pi:
        gens.append(reflection((0.0, 1.0)))
    if c in (C.D2, C.D4, C.D6, C.D3, C.D5):
        if c == C.D2:
            gens.append(reflection((0.0, 1.0)))
        else:
            top = h.components()[_TOP[h.space]]
            gens.append(_mirror_for(top) if top.norm() > 0 else reflection((0.0, 1.0)))
    return gens
