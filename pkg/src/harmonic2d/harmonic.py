"""Harmonic spaces K^k over R^2 and the O(2) action on them.

An element of K^k (k >= 1) is stored through the two coordinates
``(T[0,...,0], T[0,...,0,1])`` of its totally symmetric traceless tensor.
With that choice the rotation R(t) acts on the coordinates as the planar
rotation by ``k t`` and the reflection p(e2) as ``diag(1, -1)``.  K^0
(scalars) and K^-1 (pseudo-scalars) carry a single coordinate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .config import default_tol
from .errors import ArityError, NotHarmonicError, ValidationError
from .tensor import GroupElement, contract, norm


def dim_k(k: int) -> int:
    if k < -1:
        raise ArityError(f"no harmonic space K^{k}")
    return 2 if k > 0 else 1


@dataclass(frozen=True, eq=False)
class HarmonicComponent:
    k: int
    coords: np.ndarray = field(repr=True)

    def __post_init__(self):
        c = np.array(self.coords, dtype=float).reshape(-1)
        if c.size != dim_k(self.k):
            raise ArityError(f"K^{self.k} needs {dim_k(self.k)} coordinates, got {c.size}")
        if not np.all(np.isfinite(c)):
            raise ValidationError("non-finite harmonic coordinates")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    def __add__(self, other):
        return HarmonicComponent(self.k, self.coords + other.coords)

    def __mul__(self, s):
        return HarmonicComponent(self.k, s * self.coords)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, HarmonicComponent) and self.k == other.k
                and np.array_equal(self.coords, other.coords))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))


def zero(k: int) -> HarmonicComponent:
    return HarmonicComponent(k, np.zeros(dim_k(k)))


@lru_cache(maxsize=None)
def _count_of_twos(k: int) -> np.ndarray:
    return np.indices((2,) * k).sum(axis=0)


def to_tensor(H: HarmonicComponent) -> np.ndarray:
    """Expand ``H`` to its tensor; K^0 and K^-1 expand to an order-0 scalar."""
    if H.k <= 0:
        return np.array(H.coords[0])
    # T_{1^(k-m) 2^m} = Re(conj(z) i^m) with z = h1 + i h2
    m = _count_of_twos(H.k)
    z = complex(H.coords[0], -H.coords[1])
    return np.real(z * (1j) ** m)


def harmonic_residual(T) -> float:
    """Max of the symmetry and trace defects of ``T`` (absolute)."""
    T = np.asarray(T, dtype=float)
    n = T.ndim
    if n < 2:
        return 0.0
    res = 0.0
    # adjacent transpositions generate the symmetric group
    for a in range(n - 1):
        res = max(res, float(np.abs(T - np.swapaxes(T, a, a + 1)).max()))
    res = max(res, float(np.abs(np.trace(T, axis1=0, axis2=1)).max()))
    return res


def from_tensor(T, k: int, tol: float | None = None,
                scale: float | None = None) -> HarmonicComponent:
    """Read the K^k coordinates of a harmonic tensor of order ``k``.

    The harmonicity residual is compared against ``tol * scale``; ``scale``
    defaults to the norm of ``T`` (pass the parent tensor norm when ``T`` is
    a computed remainder that may be pure round-off).
    """
    T = np.asarray(T, dtype=float)
    if k <= 0:
        if T.ndim != 0:
            raise ArityError(f"K^{k} element must be order 0")
        return HarmonicComponent(k, [float(T)])
    if T.ndim != k:
        raise ArityError(f"expected order {k}, got {T.ndim}")
    tol = default_tol() if tol is None else tol
    r = harmonic_residual(T)
    if r > tol * (norm(T) if scale is None else max(scale, norm(T))):
        raise NotHarmonicError(f"tensor is not harmonic (residual {r:.3e})")
    lead = (0,) * k
    return HarmonicComponent(k, [T[lead], T[lead[:-1] + (1,)]])


def _rot2(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, -s], [s, c]])


def rho_matrix(k: int, g: GroupElement) -> np.ndarray:
    """Matrix of the O(2) representation on K^k coordinates."""
    if k == 0:
        return np.ones((1, 1))
    if k == -1:
        return np.full((1, 1), float(g.det))
    theta, det = g.polar()
    return _rot2(k * theta) @ np.diag([1.0, float(det)])


def rho_rotate(H: HarmonicComponent, g: GroupElement) -> HarmonicComponent:
    return HarmonicComponent(H.k, rho_matrix(H.k, g) @ H.coords)


@lru_cache(maxsize=None)
def _isotypic_operator(n: int, k: int, N: int) -> np.ndarray:
    # averaged Kronecker powers of the sampled group elements
    flip = np.diag([1.0, -1.0])
    Q = np.zeros((2**n, 2**n))
    for j in range(N):
        th = 2.0 * math.pi * j / N
        G = _rot2(th)
        if k >= 1:
            terms = [(2.0 * math.cos(k * th), G)]
        else:
            s = 1.0 if k == 0 else -1.0
            terms = [(0.5, G), (0.5 * s, G @ flip)]
        for w, g in terms:
            K = np.ones((1, 1))
            for _ in range(n):
                K = np.kron(K, g)
            Q += w * K
    Q /= N
    Q.setflags(write=False)
    return Q


def isotypic_part(T, k: int, N: int = 64) -> np.ndarray:
    """Part of ``T`` transforming like K^k, by trapezoidal averaging over O(2).

    For ``k >= 1`` the weight is ``2 cos(k t)`` over rotations; ``k = 0``
    averages over rotations and reflections; ``k = -1`` weights reflections
    by ``det = -1``.
    """
    T = np.asarray(T, dtype=float)
    n = T.ndim
    if N < 4 * n + 4:
        raise ValidationError(f"need N >= {4 * n + 4} samples for order {n}")
    dim_k(k)
    return (_isotypic_operator(n, k, N) @ T.ravel()).reshape(T.shape)


def fourier_extract(T, k: int, N: int = 64, embedding=None) -> HarmonicComponent:
    """Quadrature oracle for the K^k content of ``T``.

    Without ``embedding`` the order of ``T`` must be ``k`` (or 0 for
    ``k <= 0``) and the coordinates are read from the filtered tensor.  With
    an embedding tensor ``E`` of order ``order(T) + max(k, 0)`` the filtered
    tensor is fitted as ``E . h`` by least squares, which isolates one K^k
    copy inside a larger block.
    """
    T = np.asarray(T, dtype=float)
    X = isotypic_part(T, k, N)
    if embedding is None:
        if k >= 1:
            if T.ndim != k:
                raise ArityError("order mismatch; pass an embedding")
            lead = (0,) * k
            return HarmonicComponent(k, [X[lead], X[lead[:-1] + (1,)]])
        if T.ndim != 0:
            raise ArityError("order mismatch; pass an embedding")
        return HarmonicComponent(k, [float(X)])
    E = np.asarray(getattr(embedding, "phi", embedding), dtype=float)
    kk = max(k, 0)
    if E.ndim != T.ndim + kk:
        raise ArityError("embedding order does not match block order")
    cols = []
    for c in np.eye(dim_k(k)):
        b = to_tensor(HarmonicComponent(k, c))
        cols.append(contract(E, b, kk).ravel())
    A = np.array(cols).T
    h, *_ = np.linalg.lstsq(A, X.ravel(), rcond=None)
    return HarmonicComponent(k, h)


def split_self_map(T, P, n: int, tol: float | None = None,
                   scale: float | None = None):
    """Split ``T`` in K^n (x)s K^n as ``K + (alpha/2) P``.

    Returns ``(K, alpha)`` with ``K`` in K^{2n} and ``alpha = T .... P``.
    """
    T = np.asarray(T, dtype=float)
    P = np.asarray(P, dtype=float)
    if T.ndim != 2 * n or P.ndim != 2 * n:
        raise ArityError(f"expected order {2 * n}")
    tol = default_tol() if tol is None else tol
    scale = norm(T) if scale is None else max(scale, norm(T))
    PTP = contract(contract(P, T, n), P, n)
    r = max(float(np.abs(PTP - T).max()),
            float(np.abs(T - np.transpose(T, list(range(n, 2 * n)) + list(range(n)))).max()))
    if r > tol * scale:
        raise ValidationError(f"block is not in K^{n} (x)s K^{n} (residual {r:.3e})")
    alpha = float(np.sum(T * P))
    K = T - 0.5 * alpha * P
    return from_tensor(K, 2 * n, tol, scale), alpha
