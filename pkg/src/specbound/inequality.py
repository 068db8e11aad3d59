"""Signed evaluation of the spectrum-bounding inequality.

The central scalar field is

    g(s, t) = kappa * lambda_max(M_k) - |det W_k|^2 * (s - delta_{k+1})

with M_k the Hermitian part of det(W_k) adj(W_k*).  Eigenvalues of the
rotated matrix satisfy g >= 0, the zero set of g is the order-k bounding
curve, and replacing lambda_max by lambda_min gives the companion curve.

Two independent closed forms, :func:`cubic_g1` (k = 1) and
:func:`explicit_g2` (k = 2), are kept deliberately separate from the generic
evaluator so each can serve as an oracle for the other in tests.

Scalar entry points return an :class:`IneqValue` with the pieces broken out;
:func:`g_field` evaluates g over whole coordinate arrays at once and is what
the tracing and rasterization code calls.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frame import build_frame, w_matrix
from .linalg import (
    ParameterError,
    adjugate,
    as_matrix,
    determinant,
    lambda_extreme_hermitian,
    skew_part,
    _ct,
)

__all__ = [
    "IneqValue",
    "CrossingCondition",
    "mk_matrix",
    "g_value",
    "g_min_value",
    "g_field",
    "cubic_g1",
    "explicit_g2",
    "g1_constants",
    "g2_constants",
    "union_poly_value",
    "crossing_condition",
]


@dataclass(frozen=True)
class IneqValue:
    """One evaluation of the inequality, g = rhs - lhs.

    ``lambda_max_mk`` holds the extreme eigenvalue of M_k that was used:
    the largest for :func:`g_value`, the smallest for :func:`g_min_value`.
    """

    g: float
    lhs: float
    rhs: float
    lambda_max_mk: float
    det_wk: complex


@dataclass(frozen=True)
class CrossingCondition:
    """Sufficient condition for the k=1 curve to cut inside the k=2 curve."""

    holds: bool
    lhs: float
    rhs: float


def mk_matrix(frame, s, t):
    """M_k = H(det(W_k) adj(W_k*)) at the point s + i t, exactly Hermitian."""
    w = w_matrix(frame, s, t)
    p = determinant(w) * adjugate(_ct(w))
    return 0.5 * (p + _ct(p))


def _ineq_value(frame, s, t, which):
    s = float(s)
    t = float(t)
    d = determinant(w_matrix(frame, s, t))
    lam = lambda_extreme_hermitian(mk_matrix(frame, s, t), which)
    lhs = abs(d) ** 2 * (s - frame.delta_next)
    rhs = frame.kappa * lam
    return IneqValue(g=rhs - lhs, lhs=lhs, rhs=rhs, lambda_max_mk=lam, det_wk=d)


def g_value(frame, s, t):
    """Signed inequality value at one point; g >= 0 means "allowed region"."""
    return _ineq_value(frame, s, t, "max")


def g_min_value(frame, s, t):
    """Companion value built from lambda_min(M_k); its zero set is gamma_k."""
    return _ineq_value(frame, s, t, "min")


# --- vectorized field -------------------------------------------------------

def _shift_matrix(frame):
    """Constant part C = Delta_k + Y_k of W_k = C - lambda I."""
    c = frame.y_k.astype(np.complex128, copy=True)
    k = frame.k
    c[np.arange(k), np.arange(k)] += frame.delta_k_block
    return c


def _m2_pieces(c, lam):
    """det W_2 and the three independent entries of M_2 on a grid."""
    w00 = c[0, 0] - lam
    w11 = c[1, 1] - lam
    w01 = c[0, 1]
    w10 = c[1, 0]
    det = w00 * w11 - w01 * w10
    m00 = np.real(det * np.conj(w11))
    m11 = np.real(det * np.conj(w00))
    moff = -0.5 * (det * np.conj(w10) + np.conj(det) * w01)
    return m00, m11, moff, det


def _det3(w):
    return (
        w[..., 0, 0] * (w[..., 1, 1] * w[..., 2, 2] - w[..., 1, 2] * w[..., 2, 1])
        - w[..., 0, 1] * (w[..., 1, 0] * w[..., 2, 2] - w[..., 1, 2] * w[..., 2, 0])
        + w[..., 0, 2] * (w[..., 1, 0] * w[..., 2, 1] - w[..., 1, 1] * w[..., 2, 0])
    )


def _det_batched(w):
    k = w.shape[-1]
    if k == 1:
        return w[..., 0, 0]
    if k == 2:
        return w[..., 0, 0] * w[..., 1, 1] - w[..., 0, 1] * w[..., 1, 0]
    if k == 3:
        return _det3(w)
    return np.linalg.det(w)


def _adjugate_batched(m):
    k = m.shape[-1]
    if k == 1:
        return np.ones_like(m)
    if k == 2:
        out = np.empty_like(m)
        out[..., 0, 0] = m[..., 1, 1]
        out[..., 1, 1] = m[..., 0, 0]
        out[..., 0, 1] = -m[..., 0, 1]
        out[..., 1, 0] = -m[..., 1, 0]
        return out
    out = np.empty_like(m)
    for i in range(k):
        cols = [c for c in range(k) if c != i]
        for j in range(k):
            rows = [r for r in range(k) if r != j]
            sub = m[..., rows, :][..., :, cols]
            out[..., i, j] = (-1) ** (i + j) * _det_batched(sub)
    return out


def _field_components(frame, s, t, which):
    if which not in ("max", "min"):
        raise ParameterError(f"which must be 'max' or 'min', got {which!r}")
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    s, t = np.broadcast_arrays(s, t)
    lam = s + 1j * t
    k = frame.k
    c = _shift_matrix(frame)
    if k == 1:
        det = c[0, 0] - lam
        extreme = np.real(det)
    elif k == 2:
        m00, m11, moff, det = _m2_pieces(c, lam)
        disc = np.sqrt((m00 - m11) ** 2 + 4.0 * np.abs(moff) ** 2)
        tr = m00 + m11
        extreme = 0.5 * (tr + disc) if which == "max" else 0.5 * (tr - disc)
    else:
        w = c - lam[..., None, None] * np.eye(k)
        det = _det_batched(w)
        p = det[..., None, None] * _adjugate_batched(_ct(w))
        m = 0.5 * (p + _ct(p))
        ev = np.linalg.eigvalsh(m)
        extreme = ev[..., -1] if which == "max" else ev[..., 0]
    lhs = (det.real ** 2 + det.imag ** 2) * (s - frame.delta_next)
    rhs = frame.kappa * extreme
    return rhs - lhs, lhs, rhs, extreme, det


def g_field(frame, s, t, which="max"):
    """Vectorized g over broadcastable coordinate arrays.

    ``which="min"`` evaluates the companion field (lambda_min in place of
    lambda_max).
    """
    return _field_components(frame, s, t, which)[0]


# --- closed-form oracles ----------------------------------------------------

def g1_constants(frame):
    """(alpha, K_1) computed from S(a_rot) and the top eigenvector directly."""
    if frame.k != 1:
        raise ParameterError("g1_constants requires a k=1 frame")
    sk = skew_part(frame.a_rot)
    u1 = frame.u[:, 0]
    su1 = sk @ u1
    alpha = float(np.imag(np.vdot(u1, su1)))
    k1 = float(np.real(np.vdot(su1, su1))) - alpha ** 2
    return alpha, k1


def cubic_g1(frame, s, t):
    """Closed-form k=1 value K_1 (d1 - s) - [(d1 - s)^2 + (alpha - t)^2](s - d2).

    Sign-consistent with :func:`g_value` on k=1 frames (same zero set); kept
    on an independent code path so the two can check each other.
    """
    alpha, k1 = g1_constants(frame)
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    d1 = float(frame.deltas[0])
    d2 = float(frame.deltas[1])
    return k1 * (d1 - s) - ((d1 - s) ** 2 + (alpha - t) ** 2) * (s - d2)


def g2_constants(frame):
    """(alpha, beta, gamma, K_2) for the explicit k=2 form.

    K_2 comes out of the Gram radical in terms of S u_1 and S u_2, not from
    the singular value stored on the frame, so this route stays independent
    of the generic evaluator.
    """
    if frame.k != 2:
        raise ParameterError("g2_constants requires a k=2 frame")
    sk = skew_part(frame.a_rot)
    u1 = frame.u[:, 0]
    u2 = frame.u[:, 1]
    su1 = sk @ u1
    su2 = sk @ u2
    alpha = float(np.imag(np.vdot(u1, su1)))
    beta = float(np.imag(np.vdot(u2, su2)))
    gamma = complex(np.vdot(u2, su1))
    n1 = float(np.real(np.vdot(su1, su1)))
    n2 = float(np.real(np.vdot(su2, su2)))
    cross = complex(np.vdot(su2, su1)) + 1j * gamma * (alpha + beta)
    k2 = 0.5 * (
        n1 + n2 - alpha ** 2 - beta ** 2 - 2.0 * abs(gamma) ** 2
        + np.sqrt((n1 - n2 - alpha ** 2 + beta ** 2) ** 2 + 4.0 * abs(cross) ** 2)
    )
    return alpha, beta, gamma, float(k2)


def explicit_g2(frame, s, t):
    """Closed-form k=2 value from alpha, beta, gamma, K_2 and m_1, m_2, m_3."""
    alpha, beta, gamma, k2 = g2_constants(frame)
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    d1, d2, d3 = (float(x) for x in frame.deltas[:3])
    a = d1 - s
    b = d2 - s
    at = alpha - t
    bt = beta - t
    gsq = abs(gamma) ** 2
    det_sq = (a * b - at * bt + gsq) ** 2 + (a * bt + b * at) ** 2
    m1 = a * (b ** 2 + bt ** 2) + b * gsq
    m3 = b * (a ** 2 + at ** 2) + a * gsq
    m2_sq = gsq * (a * bt + b * at) ** 2
    lam_max = 0.5 * (m1 + m3 + np.sqrt((m1 - m3) ** 2 + 4.0 * m2_sq))
    return k2 * lam_max - det_sq * (s - d3)


def union_poly_value(frame, s, t):
    """Polynomial whose zero set is the union of the two k=2 curves.

    4 D^2 x^2 - 4 kappa tr(M_2) D x + 4 kappa^2 det(M_2) with D = |det W_2|^2
    and x = s - delta_3; it vanishes wherever either g or its lambda_min
    companion vanishes.
    """
    if frame.k != 2:
        raise ParameterError("union_poly_value requires a k=2 frame")
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    s, t = np.broadcast_arrays(s, t)
    m00, m11, moff, det = _m2_pieces(_shift_matrix(frame), s + 1j * t)
    dsq = det.real ** 2 + det.imag ** 2
    tr = m00 + m11
    det_m = m00 * m11 - np.abs(moff) ** 2
    x = s - frame.delta_next
    kap = frame.kappa
    return 4.0 * dsq ** 2 * x ** 2 - 4.0 * kap * tr * dsq * x + 4.0 * kap ** 2 * det_m


def crossing_condition(A):
    """Test ||v_1||^2 < K_2 (d1 - d2)/(d1 + d2 - 2 d3) on a real matrix.

    When it holds, the k=1 curve is more restrictive than the k=2 curve
    somewhere in the band d2 < s < d1 (evaluated at s = (d1 + d2)/2).  The
    derivation assumes real entries, so complex input is rejected.
    """
    a = as_matrix(A)
    if np.any(a.imag != 0.0):
        raise ParameterError("crossing_condition is defined for real matrices only")
    if a.shape[0] < 3:
        raise ParameterError("crossing_condition needs a matrix of size at least 3")
    fr = build_frame(a, 2, 0.0)
    v1 = fr.v_k[:, 0]
    v2 = fr.v_k[:, 1]
    n1 = float(np.real(np.vdot(v1, v1)))
    n2 = float(np.real(np.vdot(v2, v2)))
    c12 = abs(complex(np.vdot(v2, v1))) ** 2
    k2 = 0.5 * (n1 + n2 + np.sqrt((n1 - n2) ** 2 + 4.0 * c12))
    d1, d2 = float(fr.deltas[0]), float(fr.deltas[1])
    d3 = fr.delta_next
    denom = d1 + d2 - 2.0 * d3
    rhs = k2 * (d1 - d2) / denom if denom > 0.0 else 0.0
    return CrossingCondition(holds=bool(n1 < rhs), lhs=n1, rhs=float(rhs))
