"""Dense tensor arithmetic over R^2.

A tensor of order ``n`` is a numpy array of shape ``(2,) * n``.  Flat
storage is row-major (last index fastest), which is just ``T.ravel()``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ArityError, ValidationError

MAX_ORDER = 6


def as_tensor(x, order: int | None = None) -> np.ndarray:
    """Coerce ``x`` (flat, nested or ndarray) to a finite tensor over R^2.

    Parameters
    ----------
    x : array_like
        Either an array of shape ``(2,)*n`` or a flat array of length ``2**n``.
    order : int, optional
        Expected order. Inferred when omitted.

    Returns
    -------
    numpy.ndarray
        Float64 array of shape ``(2,)*order``.
    """
    a = np.asarray(x, dtype=float)
    if a.ndim == 0:
        n = 0
    elif all(s == 2 for s in a.shape):
        n = a.ndim
    elif a.ndim == 1:
        n = int(round(math.log2(a.size))) if a.size > 0 else -1
        if n < 0 or 2**n != a.size:
            raise ArityError(f"flat length {a.size} is not a power of 2")
    else:
        raise ArityError(f"shape {a.shape} is not (2,)*n")
    if order is not None and n != order:
        raise ArityError(f"expected order {order}, got {n}")
    if n > MAX_ORDER:
        raise ArityError(f"order {n} exceeds {MAX_ORDER}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("tensor has non-finite components")
    return a.reshape((2,) * n)


def order(T: np.ndarray) -> int:
    return np.ndim(T)


def norm(T) -> float:
    return float(np.sqrt(np.sum(np.asarray(T) ** 2)))


def inner(A, B) -> float:
    """Frobenius inner product (full contraction of equal-order tensors)."""
    A, B = np.asarray(A), np.asarray(B)
    if A.shape != B.shape:
        raise ArityError("inner product needs equal orders")
    return float(np.sum(A * B))


def contract(A, B, k: int) -> np.ndarray:
    """Contract the last ``k`` indices of ``A`` with the first ``k`` of ``B``.

    ``k = 1, 2, 3, 4`` correspond to the dot, double dot, triple dot and
    quadruple dot products; ``k = 0`` is the plain tensor product.
    """
    A, B = np.asarray(A, dtype=float), np.asarray(B, dtype=float)
    na, nb = A.ndim, B.ndim
    if k < 0 or k > min(na, nb):
        raise ArityError(f"cannot contract {k} indices of orders {na}, {nb}")
    return np.tensordot(A, B, axes=(list(range(na - k, na)), list(range(k))))


def _full_symmetrize(T: np.ndarray) -> np.ndarray:
    n = T.ndim
    perms = list(itertools.permutations(range(n)))
    return sum(np.transpose(T, p) for p in perms) / len(perms)


def outer(A, B, mode: str = "plain") -> np.ndarray:
    """Tensor products: plain, symmetrized, and the twisted products of
    second-order tensors (``bar``, ``underline``, ``bar-underline``)."""
    A, B = np.asarray(A, dtype=float), np.asarray(B, dtype=float)
    if mode == "plain":
        return np.multiply.outer(A, B)
    if mode == "symmetrized":
        return _full_symmetrize(np.multiply.outer(A, B))
    if mode in ("bar", "underline", "bar-underline"):
        if A.ndim != 2 or B.ndim != 2:
            raise ArityError(f"{mode} product needs two order-2 tensors")
        bar = np.einsum("ik,jl->ijkl", A, B)
        und = np.einsum("il,jk->ijkl", A, B)
        if mode == "bar":
            return bar
        if mode == "underline":
            return und
        return 0.5 * (bar + und)
    raise ArityError(f"unknown product mode {mode!r}")


@dataclass(frozen=True)
class GroupElement:
    """Element of O(2): rotation ``R(angle)`` or reflection ``p(normal)``."""

    kind: str
    angle: float = 0.0
    normal: tuple = (0.0, 1.0)

    def __post_init__(self):
        if self.kind not in ("rotation", "reflection"):
            raise ValidationError(f"unknown group element kind {self.kind!r}")
        if self.kind == "reflection":
            n = np.asarray(self.normal, dtype=float)
            r = np.linalg.norm(n)
            if n.shape != (2,) or not np.isfinite(r) or r == 0.0:
                raise ValidationError("reflection needs a nonzero 2-vector normal")
            object.__setattr__(self, "normal", tuple(float(c) for c in n / r))

    @property
    def matrix(self) -> np.ndarray:
        if self.kind == "rotation":
            c, s = math.cos(self.angle), math.sin(self.angle)
            return np.array([[c, -s], [s, c]])
        n = np.asarray(self.normal)
        return np.eye(2) - 2.0 * np.outer(n, n)

    @property
    def det(self) -> int:
        return 1 if self.kind == "rotation" else -1

    def polar(self) -> tuple[float, int]:
        """Return ``(theta, det)`` with ``g = R(theta)`` or ``g = R(theta) p(e2)``."""
        g = self.matrix
        if self.det < 0:
            g = g @ np.diag([1.0, -1.0])
        return math.atan2(g[1, 0], g[0, 0]), self.det

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return from_matrix(self.matrix @ other.matrix)


def rotation(theta: float) -> GroupElement:
    return GroupElement("rotation", angle=float(theta))


def reflection(normal) -> GroupElement:
    return GroupElement("reflection", normal=tuple(normal))


def from_matrix(g, tol: float = 1e-10) -> GroupElement:
    g = np.asarray(g, dtype=float)
    if g.shape != (2, 2) or np.abs(g @ g.T - np.eye(2)).max() > tol:
        raise ValidationError("matrix is not orthogonal")
    if np.linalg.det(g) > 0:
        return rotation(math.atan2(g[1, 0], g[0, 0]))
    # p(n) = I - 2 n n^T, so I - g = 2 n n^T
    w, v = np.linalg.eigh(0.5 * (np.eye(2) - g))
    return reflection(v[:, np.argmax(w)])


def rayleigh(g, T) -> np.ndarray:
    """Rayleigh product ``g * T``: apply ``g`` to every index of ``T``."""
    G = g.matrix if isinstance(g, GroupElement) else np.asarray(g, dtype=float)
    T = np.asarray(T, dtype=float)
    for ax in range(T.ndim):
        T = np.moveaxis(np.tensordot(G, T, axes=([1], [ax])), 0, ax)
    return T


def _check_perm(images: Sequence[int], n: int) -> list[int]:
    im = [int(i) for i in images]
    if sorted(im) != list(range(1, n + 1)):
        raise ArityError(f"{tuple(images)} is not a permutation of 1..{n}")
    return im


def permute(sigma: Sequence[int], T) -> np.ndarray:
    """Permutation action ``(s*T)_{i1..in} = T_{i_s(1)..i_s(n)}``.

    ``sigma`` lists the images of the slots ``1..n``.
    """
    T = np.asarray(T, dtype=float)
    im = _check_perm(sigma, T.ndim)
    # slot m of T receives the index of slot sigma(m) of the result
    axes = [0] * T.ndim
    for m, s in enumerate(im):
        axes[s - 1] = m
    return np.transpose(T, axes)


def transpose_block(T, a: int, b: int) -> np.ndarray:
    """Swap the leading block of ``a`` indices with the trailing ``b`` ones."""
    T = np.asarray(T, dtype=float)
    if a < 0 or b < 0 or a + b != T.ndim:
        raise ArityError(f"blocks {a}+{b} do not match order {T.ndim}")
    return np.transpose(T, list(range(a, a + b)) + list(range(a)))


def trace_pair(T, i: int, j: int) -> np.ndarray:
    """Contract slots ``i < j`` (1-based) with the identity."""
    T = np.asarray(T, dtype=float)
    if not (1 <= i < j <= T.ndim):
        raise ArityError(f"slots ({i},{j}) invalid for order {T.ndim}")
    return np.trace(T, axis1=i - 1, axis2=j - 1)
