"""Numeric unitary layer: winding of based geodesic paths, descent of the
trace-determinant to the circle, special-unitary membership certificates,
exponential length with its bi-invariant metric, the two-sided exponential
estimate, and the R x SU decomposition of sampled paths."""

from fractions import Fraction
from math import pi

import numpy as np
import pytest

from xmodcoh.unitary import (as_selfadjoint, as_unitary, ball_element,
                             check_exp_inequalities, circle_value, d_tau,
                             decompose_path, dlhs_delta, dlhs_path, el_tau,
                             exp_selfadjoint, operator_norm,
                             pointwise_product_path, principal_log,
                             random_based_path, random_selfadjoint,
                             random_special_unitary, random_unitary,
                             refine_path, su_tau_member, tau, unitary_path)


def diag_loop(windings, segments=16):
    """The path t -> diag(e^{2 pi i w_j t}), sampled uniformly."""
    ts = np.linspace(0.0, 1.0, segments + 1)
    mats = [np.diag([np.exp(2j * pi * w * t) for w in windings])
            for t in ts]
    return unitary_path(ts, mats)


# ---------------------------------------------------------------------------
# matrix helpers and input gates
# ---------------------------------------------------------------------------

def test_norm_and_trace_basics():
    assert operator_norm([[0, 2], [0, 0]]) == pytest.approx(2.0)
    assert tau(np.eye(3)) == pytest.approx(1.0)
    assert tau(np.diag([1, -1])) == pytest.approx(0.0)


def test_unitary_and_selfadjoint_gates():
    with pytest.raises(ValueError, match="square matrix"):
        as_unitary(np.ones((2, 3)))
    with pytest.raises(ValueError, match="not unitary within"):
        as_unitary(1.01 * np.eye(2))
    with pytest.raises(ValueError, match="not self-adjoint within"):
        as_selfadjoint([[0, 1], [0, 0]])
    rng = np.random.default_rng(0)
    h = random_selfadjoint(3, rng)
    assert operator_norm(as_selfadjoint(h) - h) <= 1e-12
    u = exp_selfadjoint(h)
    assert operator_norm(as_unitary(u) - u) == 0.0


def test_principal_log_inverts_the_exponential():
    rng = np.random.default_rng(1)
    for n in (1, 2, 3, 4):
        h = random_selfadjoint(n, rng, bound=3.0)
        assert operator_norm(principal_log(exp_selfadjoint(h)) - h) <= 1e-9
        u = random_unitary(n, rng)
        assert operator_norm(exp_selfadjoint(principal_log(u)) - u) <= 1e-12
    with pytest.raises(ValueError, match="branch cut"):
        principal_log(-np.eye(2), margin=0.1)


def test_path_validation_guards():
    eye = np.eye(2)
    with pytest.raises(ValueError, match="matching ts/mats"):
        unitary_path([0.0, 1.0], [eye])
    with pytest.raises(ValueError, match="ascend strictly from 0 to 1"):
        unitary_path([0.0, 0.5], [eye, eye])
    with pytest.raises(ValueError, match="start at the identity"):
        unitary_path([0.0, 1.0], [np.diag([1, -1]), eye])
    with pytest.raises(ValueError, match="share one dimension"):
        unitary_path([0.0, 0.5, 1.0], [eye, np.eye(3), eye])
    with pytest.raises(ValueError, match="refine the sampling"):
        unitary_path([0.0, 1.0], [eye, -eye])
    path = diag_loop([1])
    with pytest.raises(ValueError, match="outside the sampled range"):
        path.at(1.5)
    with pytest.raises(ValueError, match="share one dimension"):
        pointwise_product_path(path, diag_loop([1, 0]))


# ---------------------------------------------------------------------------
# winding of based paths
# ---------------------------------------------------------------------------

def test_winding_anchors_on_diagonal_loops():
    for windings, want in [((1,), 1.0), ((1, 0), 0.5), ((1, -1), 0.0),
                           ((2, 1), 1.5)]:
        got = dlhs_path(diag_loop(windings))
        assert got.method == "segment-exact"
        assert got.error_estimate == 0.0
        assert got.value == pytest.approx(want, abs=1e-12)


def test_winding_is_invariant_under_geodesic_refinement():
    rng = np.random.default_rng(2)
    for n in (2, 3, 4):
        path = random_based_path(n, 6, rng)
        base = dlhs_path(path).value
        for factor in (2, 3):
            fine = dlhs_path(refine_path(path, factor)).value
            assert fine == pytest.approx(base, abs=1e-10)


def test_winding_adds_for_commuting_loops():
    product = pointwise_product_path(diag_loop([1, 0]), diag_loop([0, 1]))
    assert dlhs_path(product).value == pytest.approx(1.0, abs=1e-9)


def test_quadrature_option_agrees_on_a_uniform_loop():
    got = dlhs_path(diag_loop([1], segments=8), quad_panels=16)
    assert got.method == "simpson"
    assert got.value == pytest.approx(1.0, abs=1e-9)
    assert got.error_estimate <= 1e-9
    with pytest.raises(ValueError, match="at least one quadrature panel"):
        dlhs_path(diag_loop([1]), quad_panels=0)


# ---------------------------------------------------------------------------
# descent to the circle
# ---------------------------------------------------------------------------

def test_circle_values_reduce_and_snap():
    cv = circle_value(0.125, 4)
    assert cv.snap == Fraction(1, 8)
    assert cv.distance_to(0.125) == 0.0
    assert circle_value(0.25 - 1e-13, 4).is_zero()
    assert circle_value(1.0 / 3.0, 3).is_zero()


def test_delta_descends_the_determinant():
    # the class modulo (1/n)Z is determined by arg det u alone
    rng = np.random.default_rng(3)
    for trial in range(25):
        n = int(rng.integers(1, 5))
        u = random_unitary(n, rng)
        target = float(np.angle(np.linalg.det(u))) / (2 * pi * n)
        assert dlhs_delta(u).distance_to(target) <= 1e-9


def test_delta_anchors_and_branch_guard():
    assert dlhs_delta(np.eye(3)).is_zero()
    assert dlhs_delta(np.exp(2j * pi / 3) * np.eye(3)).is_zero()
    eighth = dlhs_delta(np.diag([1j, 1]))
    assert eighth.snap == Fraction(1, 8)
    assert not eighth.is_zero()
    with pytest.raises(ValueError, match="no branch gap wider"):
        dlhs_delta(np.diag([1, 1j, -1, -1j]), angle_tol=1.6)


def test_delta_is_a_homomorphism_modulo_the_lattice():
    rng = np.random.default_rng(4)
    for trial in range(30):
        n = int(rng.integers(1, 5))
        u, v = random_unitary(n, rng), random_unitary(n, rng)
        total = dlhs_delta(u).value + dlhs_delta(v).value
        assert dlhs_delta(u @ v).distance_to(total) <= 1e-8


# ---------------------------------------------------------------------------
# the special-unitary kernel and exponential length
# ---------------------------------------------------------------------------

def test_membership_certificates_recompose():
    rep = su_tau_member(np.diag([1j, -1j]))
    assert rep.member and len(rep.certificate) == 1
    assert operator_norm(rep.certificate[0]) == pytest.approx(pi / 2)

    rng = np.random.default_rng(5)
    for trial in range(15):
        n = int(rng.integers(2, 5))
        u = random_special_unitary(n, rng)
        rep = su_tau_member(u)
        assert rep.member and rep.residual <= 1e-9
        recomposed = np.eye(n, dtype=complex)
        for h in rep.certificate:
            assert abs(tau(h)) <= 1e-12
            recomposed = recomposed @ exp_selfadjoint(h)
        assert operator_norm(recomposed - u) <= 1e-9


def test_membership_is_the_vanishing_of_delta():
    rng = np.random.default_rng(6)
    for trial in range(30):
        n = int(rng.integers(1, 5))
        u = random_special_unitary(n, rng) if trial % 2 else \
            random_unitary(n, rng)
        rep = su_tau_member(u)
        assert rep.member == dlhs_delta(u).is_zero()
        assert rep.member == (abs(rep.det_value - 1.0) <= 1e-9)
    miss = su_tau_member(np.diag([1j, 1]))
    assert not miss.member and miss.certificate is None


def test_exponential_length_anchors():
    exact = el_tau(np.diag([np.exp(2j), np.exp(-2j)]))
    assert exact.exact and exact.value == pytest.approx(2.0, abs=1e-12)
    bound = el_tau(np.exp(2j * pi / 3) * np.eye(3))
    assert not bound.exact
    assert bound.value == pytest.approx(4 * pi / 3, abs=1e-9)
    with pytest.raises(ValueError, match="special-unitary kernel"):
        el_tau(np.diag([1j, 1]))


def test_exponential_length_is_conjugation_invariant():
    rng = np.random.default_rng(7)
    for trial in range(15):
        n = int(rng.integers(2, 5))
        u = random_special_unitary(n, rng)
        v = random_unitary(n, rng)
        conjugated = el_tau(v @ u @ v.conj().T)
        assert abs(conjugated.value - el_tau(u).value) <= 1e-9


def test_metric_properties_inside_the_unit_ball():
    rng = np.random.default_rng(8)
    for trial in range(15):
        n = int(rng.integers(2, 5))
        u, v = ball_element(n, 1.0, rng), ball_element(n, 1.0, rng)
        w = random_unitary(n, rng)
        assert d_tau(u, u).value <= 1e-12
        assert abs(d_tau(u, v).value - d_tau(v, u).value) <= 1e-9
        assert abs(d_tau(u @ w, v @ w).value - d_tau(u, v).value) <= 1e-9


def test_metric_sandwich_in_the_unit_ball():
    # ||u - v|| <= d(u, v) <= (pi/2) ||u - v|| on the radius-1 ball
    rng = np.random.default_rng(9)
    for trial in range(60):
        n = int(rng.integers(2, 5))
        u, v = ball_element(n, 1.0, rng), ball_element(n, 1.0, rng)
        gap = operator_norm(u - v)
        dist = d_tau(u, v).value
        assert dist - gap >= -1e-9
        assert (pi / 2) * gap - dist >= -1e-9


def test_two_sided_exponential_estimate():
    rep = check_exp_inequalities(4, 400, seed=3)
    assert rep.passed and rep.violations == 0
    assert rep.min_upper_slack >= -1e-9
    assert rep.min_lower_slack >= -1e-9
    assert (rep.trials, rep.max_dim, rep.seed) == (400, 4, 3)
    with pytest.raises(ValueError, match="at least one trial"):
        check_exp_inequalities(4, 0)


# ---------------------------------------------------------------------------
# the R x SU decomposition
# ---------------------------------------------------------------------------

def test_decomposition_anchors():
    dec = decompose_path(diag_loop([1]))
    assert dec.h[0] == 0.0
    assert dec.h[-1] == pytest.approx(1.0, abs=1e-12)
    assert all(abs(g[0, 0] - 1.0) <= 1e-12 for g in dec.g)

    dec = decompose_path(diag_loop([1, 0]))
    assert dec.h[-1] == pytest.approx(0.5, abs=1e-12)
    assert operator_norm(dec.g[-1] + np.eye(2)) <= 1e-9


def test_decomposition_reconstructs_and_respects_refinement():
    rng = np.random.default_rng(10)
    for trial in range(25):
        n = int(rng.integers(1, 5))
        path = random_based_path(n, int(rng.integers(3, 6)), rng)
        dec = decompose_path(path)
        assert dec.max_reconstruction_error <= 1e-9
        assert dec.max_det_error <= 1e-9
        assert dec.h[0] == 0.0
        for hk, gk, mk in zip(dec.h, dec.g, path.mats):
            assert abs(complex(np.linalg.det(gk)) - 1.0) <= 1e-9
            assert operator_norm(np.exp(2j * pi * hk) * gk - mk) <= 1e-9

        fine = decompose_path(refine_path(path, 2))
        assert np.allclose(fine.h[::2], dec.h, atol=1e-8)
        assert operator_norm(fine.g[-1] - dec.g[-1]) <= 1e-8
