import numpy as np
import pytest

from specbound import (
    MatrixSpec,
    ParameterError,
    auto_window,
    build_frame,
    build_matrix,
    crossing_condition,
    cubic_g1,
    explicit_g2,
    g_field,
    g_min_value,
    g_value,
    g2_constants,
    max_abs,
    mk_matrix,
    union_poly_value,
    w_matrix,
)
from conftest import bisect_root, random_complex, random_hermitian, random_unitary

A_TILDE = build_matrix(MatrixSpec("a_tilde"))


def _grid_points(frame, per_axis=24):
    win = auto_window(frame)
    s = np.linspace(win.s_min, win.s_max, per_axis)
    t = np.linspace(win.t_min, win.t_max, per_axis)
    return np.meshgrid(s, t)


def test_mk_matrix_k1():
    f = build_frame(A_TILDE, 1)
    m = mk_matrix(f, 0.7, 1.3)
    assert m.shape == (1, 1)
    assert abs(m[0, 0] - (f.deltas[0] - 0.7)) <= 1e-12


def test_mk_matrix_k2_entries_match_explicit_forms():
    f = build_frame(A_TILDE, 2)
    alpha, beta, gamma, _ = g2_constants(f)
    d1, d2 = f.deltas[:2]
    for s, t in ((0.0, 0.0), (1.2, -0.7), (2.5, 3.0)):
        m = mk_matrix(f, s, t)
        a, b = d1 - s, d2 - s
        at, bt = alpha - t, beta - t
        m1 = a * (b**2 + bt**2) + b * abs(gamma) ** 2
        m3 = b * (a**2 + at**2) + a * abs(gamma) ** 2
        m2 = 1j * gamma * (a * bt + b * at)
        assert abs(m[0, 0] - m1) <= 1e-9 * (1 + abs(m1))
        assert abs(m[1, 1] - m3) <= 1e-9 * (1 + abs(m3))
        assert abs(m[1, 0] - m2) <= 1e-9 * (1 + abs(m2))
        assert max_abs(m - m.conj().T) == 0.0


def test_mk_matrix_zero_at_det_zero():
    # Hermitian input: W_k is diagonal real, singular at s = delta_1, t = alpha = 0
    h = np.diag([2.0, 1.0, -1.0])
    f = build_frame(h, 1)
    m = mk_matrix(f, 2.0, 0.0)
    assert max_abs(m) == 0.0


def test_det_w2_matches_hand_expansion():
    f = build_frame(A_TILDE, 2)
    alpha, beta, gamma, _ = g2_constants(f)
    d1, d2 = f.deltas[:2]
    for s, t in ((2.0, 1.0), (0.4, -2.2)):
        w = w_matrix(f, s, t)
        det = w[0, 0] * w[1, 1] - w[0, 1] * w[1, 0]
        a, b = d1 - s, d2 - s
        at, bt = alpha - t, beta - t
        expanded = (a * b - at * bt + abs(gamma) ** 2) + 1j * (a * bt + b * at)
        assert abs(det - expanded) <= 1e-10 * (1 + abs(det))


def test_g_value_matches_g_field():
    for seed in range(5):
        a = random_complex(5, seed=seed + 300)
        for k in (1, 2, 3):
            f = build_frame(a, k)
            ss, tt = _grid_points(f, per_axis=7)
            field = g_field(f, ss, tt)
            for i in range(ss.shape[0]):
                for j in range(ss.shape[1]):
                    v = g_value(f, ss[i, j], tt[i, j])
                    assert abs(v.g - field[i, j]) <= 1e-10 * (1 + abs(v.g))
                    assert v.g == v.rhs - v.lhs


def test_eigenvalue_containment_theta_zero():
    # seeded sweep over sizes 4..8 at every order
    violations = 0
    for seed in range(1000):
        n = 4 + seed % 5
        a = random_complex(n, seed=seed)
        evs = np.linalg.eigvals(a)
        for k in (1, 2, 3):
            f = build_frame(a, k)
            tol = 1e-8 * (1 + max_abs(a)) ** (2 * k + 1)
            g = g_field(f, evs.real, evs.imag)
            violations += int(np.any(g < -tol))
    assert violations == 0


def test_hermitian_eigenvalues_on_curve():
    h = random_hermitian(5, seed=9).real
    for k in (1, 2):
        f = build_frame(h, k)
        for j in range(k):
            v = g_value(f, float(f.deltas[j]), 0.0)
            assert abs(v.g) <= 1e-10 * (1 + max_abs(h)) ** (2 * k + 1)


def test_no_curve_left_of_delta_next():
    for seed in range(10):
        a = random_complex(5, seed=seed + 50)
        for k in (1, 2):
            f = build_frame(a, k)
            span = float(f.deltas[0] - f.deltas[-1]) + 1.0
            s = f.delta_next - 1e-6 * (1 + span)
            for t in np.linspace(-2 * span, 2 * span, 17):
                v = g_value(f, s, float(t))
                if abs(v.det_wk) > 1e-12:
                    assert v.g > 0.0


def test_lambda_max_nonnegative_left_of_delta1():
    rng = np.random.default_rng(3)
    for seed in range(10):
        a = random_complex(5, seed=seed + 70)
        for k in (1, 2, 3):
            f = build_frame(a, k)
            scale = (1 + max_abs(a)) ** (2 * k - 1)
            for _ in range(20):
                s = float(f.deltas[0]) - abs(rng.normal()) * 3
                t = float(rng.normal() * 3)
                v = g_value(f, s, t)
                assert v.lambda_max_mk >= -1e-10 * scale


def test_g_min_below_g():
    a = random_complex(6, seed=44)
    f = build_frame(a, 2)
    ss, tt = _grid_points(f, per_axis=12)
    for i in range(0, 12, 3):
        for j in range(0, 12, 3):
            assert g_min_value(f, ss[i, j], tt[i, j]).g <= g_value(f, ss[i, j], tt[i, j]).g + 1e-12
    # k = 1: the two coincide
    f1 = build_frame(a, 1)
    assert g_min_value(f1, 0.3, 0.4).g == g_value(f1, 0.3, 0.4).g


def test_cubic_g1_oracle_agreement():
    for seed in range(10):
        a = random_complex(5, seed=seed + 200)
        f = build_frame(a, 1)
        ss, tt = _grid_points(f)
        g = g_field(f, ss, tt)
        oracle = cubic_g1(f, ss, tt)
        assert np.all(np.abs(oracle - g) <= 1e-9 * (1 + np.abs(g)))


def test_explicit_g2_oracle_agreement():
    for seed in range(10):
        a = random_complex(5, seed=seed + 250)
        f = build_frame(a, 2)
        ss, tt = _grid_points(f)
        g = g_field(f, ss, tt)
        oracle = explicit_g2(f, ss, tt)
        assert np.all(np.abs(oracle - g) <= 1e-9 * (1 + np.abs(g)))


def test_oracles_require_matching_order():
    with pytest.raises(ParameterError):
        cubic_g1(build_frame(A_TILDE, 2), 0, 0)
    with pytest.raises(ParameterError):
        explicit_g2(build_frame(A_TILDE, 1), 0, 0)
    with pytest.raises(ParameterError):
        union_poly_value(build_frame(A_TILDE, 1), 0, 0)


def test_a_tilde_curve_heights_at_midpoint():
    f1 = build_frame(A_TILDE, 1)
    f2 = build_frame(A_TILDE, 2)
    t1 = bisect_root(lambda t: float(cubic_g1(f1, 2.0, t)), 1.0, 2.5)
    t2 = bisect_root(lambda t: float(explicit_g2(f2, 2.0, t)), 2.0, 4.0)
    assert abs(t1**2 - 3.0) <= 1e-10
    assert abs(t2**2 - 9.0) <= 1e-10


def test_union_poly_vanishes_on_both_curves():
    a = random_complex(5, seed=321)
    f = build_frame(a, 2)
    win = auto_window(f)
    # find curve points along vertical grid lines by bisection
    found = 0
    for s in np.linspace(win.s_min, win.s_max, 60):
        for which in ("max", "min"):
            t_axis = np.linspace(0, win.t_max, 200)
            vals = g_field(f, np.full_like(t_axis, s), t_axis, which=which)
            sign_change = np.nonzero(np.diff(vals >= 0))[0]
            if sign_change.size == 0:
                continue
            i = sign_change[0]
            t_root = bisect_root(
                lambda t: float(g_field(f, np.asarray(s), np.asarray(t), which=which)),
                t_axis[i], t_axis[i + 1],
            )
            u = float(union_poly_value(f, s, t_root))
            m00_scale = (1 + max_abs(a) + abs(s) + abs(t_root)) ** (4 * 2 + 2)
            assert abs(u) <= 1e-7 * m00_scale
            found += 1
    assert found > 10


def test_union_poly_zero_at_a_hat_meeting_points():
    a = build_matrix(MatrixSpec("a_hat"))
    f = build_frame(a, 2)
    eps = 1.01
    for sgn in (1.0, -1.0):
        for s in ((3 + np.sqrt(9 - 8 * eps**2)) / 4, (3 - np.sqrt(9 - 8 * eps**2)) / 4):
            t = sgn * np.sqrt(s**2 - 3 * s + 2)
            assert abs(float(union_poly_value(f, s, t))) <= 1e-7


def test_scaling_law():
    for seed in range(5):
        a = random_complex(5, seed=seed + 400)
        for k in (1, 2, 3):
            f = build_frame(a, k)
            for r in (0.5, 2.0, 7.0):
                fr = build_frame(r * a, k)
                for s, t in ((0.3, 0.9), (-0.5, 1.7)):
                    g1 = g_value(f, s, t).g
                    g2 = g_value(fr, r * s, r * t).g
                    assert abs(g2 - r ** (2 * k + 1) * g1) <= 1e-9 * (1 + abs(g2))


def test_zero_set_invariances():
    # sign of g agrees at mapped sample points for the basic transformations
    rng = np.random.default_rng(12)
    for seed in range(6):
        a = random_complex(4, seed=seed + 600)
        q = random_unitary(4, seed=seed + 700)
        for k in (1, 2):
            f = build_frame(a, k)
            f_sim = build_frame(q.conj().T @ a @ q, k)
            f_tr = build_frame(a.T, k)
            f_star = build_frame(a.conj().T, k)
            for _ in range(25):
                s = float(rng.normal() * 2)
                t = float(rng.normal() * 2)
                g0 = g_value(f, s, t).g
                band = 1e-8 * (1 + max_abs(a)) ** (2 * k + 1)
                if abs(g0) <= band:
                    continue  # undecided within rounding of the zero set
                assert (g_value(f_sim, s, t).g > 0) == (g0 > 0)
                assert (g_value(f_tr, s, t).g > 0) == (g0 > 0)
                assert (g_value(f_star, s, -t).g > 0) == (g0 > 0)


def test_shift_and_scale_invariance():
    a = random_complex(4, seed=900)
    r, b = 2.0, 0.75 - 0.3j
    f = build_frame(a, 2)
    f_map = build_frame(r * a + b * np.eye(4), 2)
    rng = np.random.default_rng(8)
    for _ in range(40):
        s = float(rng.normal() * 2)
        t = float(rng.normal() * 2)
        g0 = g_value(f, s, t).g
        band = 1e-8 * (1 + max_abs(a)) ** 5
        if abs(g0) <= band:
            continue
        z = r * complex(s, t) + b
        assert (g_value(f_map, z.real, z.imag).g > 0) == (g0 > 0)


def test_crossing_condition():
    cc = crossing_condition(A_TILDE)
    assert cc.holds
    assert abs(cc.lhs - 4.0) <= 1e-10
    assert abs(cc.rhs - 10.0) <= 1e-9

    # zero first coupling column with separated top eigenvalues: holds
    a = np.array([[2, 0, 0], [0, 1, -0.5], [0, 0.5, 0]], dtype=float)
    cc2 = crossing_condition(a)
    assert cc2.lhs <= 1e-14 and cc2.rhs > 0 and cc2.holds

    # coinciding top eigenvalues with nonzero coupling: cannot hold
    b = np.array([[1, 0, -0.5], [0, 1, 0], [0.5, 0, 0]], dtype=float)
    cc3 = crossing_condition(b)
    assert not cc3.holds and cc3.rhs == 0.0

    with pytest.raises(ParameterError):
        crossing_condition(random_complex(4, seed=1))
    with pytest.raises(ParameterError):
        crossing_condition(np.eye(2))
