"""Spectral frames: the per-(matrix, order, angle) quantities behind the curves.

For a square matrix A, an order ``k`` and a rotation angle ``theta``, the
frame bundles everything the inequality evaluator needs about
``e^{i theta} A``: the non-increasing eigenvalues delta_1 >= ... >= delta_n of
its Hermitian part with the diagonalizing unitary U, the rotated skew part
Y = U* S U, the leading k x k block of Y, the (n-k) x k coupling block, and
``kappa``, the squared largest singular value of that coupling block.

Frames are immutable and cheap to share between workers.  A
:class:`FrameCache` can be used to avoid re-solving the same eigenproblem
while sweeping angles or grid points; its entries are deterministic so
concurrent last-writer-wins insertion is harmless.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import (
    ParameterError,
    as_matrix,
    eig_hermitian,
    hermitian_part,
    largest_singular_value_sq,
    max_abs,
    skew_part,
    _ct,
    _fix_phases,
)

__all__ = ["SpectralFrame", "FrameCache", "build_frame", "build_frames",
           "rotation_spectra", "w_matrix"]

_DEGENERACY_RTOL = 1e-12


@dataclass(frozen=True)
class SpectralFrame:
    """Derived quantities for one (matrix, order, angle) triple.

    ``degenerate`` flags delta_k == delta_{k+1} within rounding; curves built
    from such frames depend on the eigenvector basis picked inside the
    degenerate eigenspace and should be read with that caveat.
    """

    k: int
    theta: float
    a_rot: np.ndarray
    deltas: np.ndarray
    u: np.ndarray
    y: np.ndarray
    delta_k_block: np.ndarray
    y_k: np.ndarray
    v_k: np.ndarray
    kappa: float
    delta_next: float
    degenerate: bool = False

    @property
    def n(self):
        return self.a_rot.shape[0]


class _RotationEigen(NamedTuple):
    a_rot: np.ndarray
    deltas: np.ndarray
    u: np.ndarray
    y: np.ndarray


def _freeze(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _rotation_decomposition(a, theta):
    a_rot = np.exp(1j * theta) * a
    dec = eig_hermitian(hermitian_part(a_rot))
    u = dec.vectors
    y = _ct(u) @ skew_part(a_rot) @ u
    y = 0.5 * (y - _ct(y))
    return _RotationEigen(a_rot=a_rot, deltas=dec.values, u=u, y=y)


def _rotation_decompositions(a, thetas):
    """Batched variant: one eigh call for all angles."""
    ph = np.exp(1j * np.asarray(thetas, dtype=float))
    a_rot = ph[:, None, None] * a[None, :, :]
    h = 0.5 * (a_rot + _ct(a_rot))
    h = 0.5 * (h + _ct(h))
    s = 0.5 * (a_rot - _ct(a_rot))
    s = 0.5 * (s - _ct(s))
    w, v = np.linalg.eigh(h)
    w = w[:, ::-1]
    v = _fix_phases(v[:, :, ::-1])
    y = _ct(v) @ s @ v
    y = 0.5 * (y - _ct(y))
    return [
        _RotationEigen(a_rot[i], np.ascontiguousarray(w[i]), np.ascontiguousarray(v[i]),
                       np.ascontiguousarray(y[i]))
        for i in range(len(ph))
    ]


def _assemble(rot, k, theta):
    n = rot.a_rot.shape[0]
    if not 1 <= k <= n - 1:
        raise ParameterError(f"order k must satisfy 1 <= k <= n-1 = {n - 1}, got {k}")
    deltas = rot.deltas
    gap = float(deltas[k - 1] - deltas[k])
    degenerate = gap <= _DEGENERACY_RTOL * (1.0 + max_abs(deltas))
    v_k = rot.y[k:, :k]
    return SpectralFrame(
        k=k,
        theta=float(theta),
        a_rot=_freeze(rot.a_rot),
        deltas=_freeze(deltas),
        u=_freeze(rot.u),
        y=_freeze(rot.y),
        delta_k_block=_freeze(deltas[:k].astype(float)),
        y_k=_freeze(rot.y[:k, :k]),
        v_k=_freeze(v_k),
        kappa=largest_singular_value_sq(v_k),
        delta_next=float(deltas[k]),
        degenerate=degenerate,
    )


def build_frame(A, k, theta=0.0, cache=None):
    """Build the spectral frame of A for order k at rotation angle theta."""
    if cache is not None:
        return cache.frame(A, k, theta)
    a = as_matrix(A)
    return _assemble(_rotation_decomposition(a, float(theta)), int(k), float(theta))


def build_frames(A, k, thetas, cache=None):
    """Frames of A for order k at every angle in ``thetas`` (batched solve)."""
    thetas = [float(t) for t in thetas]
    if cache is not None:
        return [cache.frame(A, k, t) for t in thetas]
    a = as_matrix(A)
    rots = _rotation_decompositions(a, thetas)
    return [_assemble(r, int(k), t) for r, t in zip(rots, thetas)]


def rotation_spectra(A, thetas):
    """Non-increasing eigenvalues of the Hermitian part of e^{i theta} A.

    Returns an (m, n) array, one row per angle.  Used by the half-plane
    (rank numerical range) machinery, which needs no eigenvectors.
    """
    a = as_matrix(A)
    ph = np.exp(1j * np.asarray(thetas, dtype=float))
    h = ph[:, None, None] * a[None, :, :]
    h = 0.5 * (h + _ct(h))
    h = 0.5 * (h + _ct(h))
    w = np.linalg.eigvalsh(h)
    return np.ascontiguousarray(w[:, ::-1])


def w_matrix(frame, s, t):
    """The shifted leading block W_k = Delta_k + Y_k - (s + i t) I_k.

    The Hermitian part of the result is exactly diag(delta_j - s) because the
    stored block Y_k is exactly skew-Hermitian.
    """
    k = frame.k
    w = frame.y_k.astype(np.complex128, copy=True)
    w[np.arange(k), np.arange(k)] += frame.delta_k_block - s - 1j * t
    return w


class FrameCache:
    """Per-invocation memo of rotation decompositions and frames.

    Keys are (matrix bytes, angle) and (matrix bytes, order, angle); both
    maps only grow.  Re-solving is avoided across orders because the
    eigendecomposition is shared by every k at the same angle.
    """

    def __init__(self):
        self._rotations = {}
        self._frames = {}

    def frame(self, A, k, theta):
        a = as_matrix(A)
        theta = float(theta)
        k = int(k)
        mkey = a.tobytes()
        fkey = (mkey, k, theta)
        frame = self._frames.get(fkey)
        if frame is None:
            rkey = (mkey, theta)
            rot = self._rotations.get(rkey)
            if rot is None:
                rot = _rotation_decomposition(a, theta)
                self._rotations[rkey] = rot
            frame = _assemble(rot, k, theta)
            self._frames[fkey] = frame
        return frame
