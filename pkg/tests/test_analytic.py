"""Tests for the root-level analysis: roots, residues, Vandermonde, battery."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newmandiv.analytic import (
    N_ESTIMATE_CONSTANT,
    EstimateGrids,
    aberth_roots,
    check_estimates,
    estimate_N,
    find_roots,
    residue_coeffs,
    root_acceleration,
    root_velocity,
    sample_node_set,
    vandermonde_inverse,
    vandermonde_matrix,
    y_closed_sequence,
)
from newmandiv.modpoly import CapacityError


# --------------------------------------------------------------------------
# general root finder
# --------------------------------------------------------------------------


def test_aberth_quadratic():
    roots = aberth_roots([2, -3, 1], seeds=[0.5 + 0.5j, 3 - 0.5j])  # (x-1)(x-2)
    assert sorted(round(r.real, 9) for r in roots) == [1, 2]
    assert max(abs(r.imag) for r in roots) < 1e-9


def test_aberth_validates():
    with pytest.raises(ValueError):
        aberth_roots([1], seeds=[])  # constant
    with pytest.raises(ValueError):
        aberth_roots([1, 2, 0], seeds=[0, 1])  # zero leading coeff
    with pytest.raises(ValueError):
        aberth_roots([2, -3, 1], seeds=[1.0])  # wrong seed count


@settings(max_examples=50)
@given(st.lists(st.integers(min_value=-5, max_value=5), min_size=2, max_size=6, unique=True))
def test_aberth_recovers_integer_roots(int_roots):
    coeffs = np.array([1.0])
    for r in int_roots:
        coeffs = np.convolve(coeffs, [-r, 1.0])
    seeds = 6.0 * np.exp(2j * np.pi * (np.arange(len(int_roots)) + 0.25) / len(int_roots))
    got = aberth_roots(coeffs, seeds=seeds, tol=1e-13)
    got_sorted = sorted(got, key=lambda z: z.real)
    for want, have in zip(sorted(int_roots), got_sorted):
        assert abs(have - want) < 1e-7


# --------------------------------------------------------------------------
# quintic roots
# --------------------------------------------------------------------------


def test_roots_at_t0():
    r = find_roots(0.0)
    assert abs(r.alpha - (-1.0)) < 1e-14
    assert abs(r.beta - np.exp(3j * np.pi / 5)) < 1e-14
    assert abs(r.gamma - np.exp(1j * np.pi / 5)) < 1e-14


def test_roots_anchor_small_t():
    r = find_roots(0.005)
    assert abs(r.alpha - (-0.9990010)) < 1e-7
    assert abs(r.beta - (-0.3087072 + 0.9520082j)) < 1e-7
    assert r.residual <= 1e-14 * (1 + 0.005)


def test_roots_anchor_t1():
    r = find_roots(1.0)
    assert abs(abs(r.beta) - 1.18711) < 2e-5
    assert abs(abs(r.gamma) - 0.92042) < 2e-5
    assert r.residual <= 1e-14 * 2


def test_roots_domain():
    with pytest.raises(ValueError):
        find_roots(-0.1)
    with pytest.raises(ValueError):
        find_roots(1.1)


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
def test_root_invariants(t):
    """Elementary symmetric functions of the five roots: e1=0, e2=t, e5=-1."""
    r = find_roots(t)
    roots = np.array(r.all_roots())
    assert abs(np.sum(roots)) < 1e-12
    e2 = sum(
        roots[i] * roots[j] for i in range(5) for j in range(i + 1, 5)
    )
    assert abs(e2 - t) < 1e-11
    assert abs(np.prod(roots) - (-1)) < 1e-11
    # modulus product |alpha| |beta|^2 |gamma|^2 = 1
    assert abs(abs(r.alpha) * abs(r.beta) ** 2 * abs(r.gamma) ** 2 - 1) < 1e-11
    # roots are simple and well separated
    for i in range(5):
        for j in range(i + 1, 5):
            assert abs(roots[i] - roots[j]) > 1e-13 * 10


def test_roots_high_precision():
    r = find_roots(0.003, precision=160)
    assert isinstance(r.alpha, mpmath.mpf)
    assert r.residual < mpmath.mpf(2) ** (-150)
    rd = find_roots(0.003)
    assert abs(float(r.alpha) - rd.alpha) < 1e-14
    assert abs(complex(r.beta) - rd.beta) < 1e-14


def test_root_derivatives_match_finite_differences_mid_interval():
    t, h = 0.3, 1e-6
    rm, r0, rp = find_roots(t - h), find_roots(t), find_roots(t + h)
    for key in ("alpha", "beta", "gamma"):
        a, b, c = (complex(getattr(x, key)) for x in (rm, r0, rp))
        fd1 = (c - a) / (2 * h)
        fd2 = (c - 2 * b + a) / h**2
        assert abs(fd1 - root_velocity(b, t)) < 1e-6
        assert abs(fd2 - root_acceleration(b, t)) < 1e-3


# --------------------------------------------------------------------------
# residues and the closed form
# --------------------------------------------------------------------------


def test_residue_start_values():
    """The closed form must reproduce y_0..y_4 = (-s, 1-s, -s, 1-s, -s)."""
    for a in (0.003, 0.1, 0.5, 0.9):
        s = 1 / (2 + a)
        y = y_closed_sequence(a, 4)
        want = np.array([-s, 1 - s, -s, 1 - s, -s])
        assert np.max(np.abs(y - want)) < 1e-12, a


def test_closed_form_satisfies_recurrence():
    a = 0.1
    y = y_closed_sequence(a, 50)
    for n in range(5, 51):
        assert abs(y[n] + a * y[n - 2] + y[n - 5]) < 1e-12


def test_closed_form_matches_direct_recurrence():
    a = 0.1
    y = y_closed_sequence(a, 500)
    s = 1 / (2 + a)
    z = [-s, 1 - s, -s, 1 - s, -s]
    for n in range(5, 501):
        z.append(-a * z[n - 2] - z[n - 5])
    dev = max(abs(y[n] - z[n]) / max(1.0, abs(z[n])) for n in range(501))
    assert dev < 1e-10


def test_residue_anchors():
    res = residue_coeffs(0.003)
    assert abs(res.c_alpha - (-0.5)) < 0.01
    res5 = residue_coeffs(0.005)
    assert abs(res5.c_beta) <= 0.106 * 0.005
    assert abs(res5.c_gamma) <= 0.172 * 0.005


def test_residue_domain():
    with pytest.raises(ValueError):
        residue_coeffs(0.0)  # degenerate: roots on the unit circle
    with pytest.raises(ValueError):
        residue_coeffs(1.5)


def test_residues_high_precision():
    r = residue_coeffs(0.003, precision=160)
    rd = residue_coeffs(0.003)
    assert abs(float(r.c_alpha) - rd.c_alpha) < 1e-13
    assert abs(complex(r.c_beta) - rd.c_beta) < 1e-13


# --------------------------------------------------------------------------
# balance-point estimate
# --------------------------------------------------------------------------


def test_estimate_constant():
    assert abs(N_ESTIMATE_CONSTANT - 5 / math.cos(math.pi / 10)) < 1e-15


def test_estimate_anchor():
    assert abs(estimate_N(0.003) - 11785) <= 15
    assert abs(estimate_N(0.005) - 6534.43) < 0.1


def test_estimate_domain():
    for bad in (0.0, -0.001, 0.0051, 0.3):
        with pytest.raises(ValueError):
            estimate_N(bad)


def test_estimate_monotone_in_a():
    vals = [estimate_N(a) for a in np.linspace(0.0005, 0.005, 50)]
    assert all(x > y for x, y in zip(vals, vals[1:]))


# --------------------------------------------------------------------------
# Vandermonde inverse
# --------------------------------------------------------------------------


def test_vandermonde_two_nodes_exact():
    M = vandermonde_inverse([1.0, -1.0])
    assert np.allclose(M, [[0.5, 0.5], [0.5, -0.5]], atol=1e-15)


def test_vandermonde_identity_residual_random_sets():
    """1000 random well-conditioned sets: ||V V^-1 - I||_inf <= 1e-10."""
    rng = np.random.default_rng(20260817)
    worst = 0.0
    for _ in range(1000):
        nodes = sample_node_set(rng)
        V = vandermonde_matrix(nodes)
        M = vandermonde_inverse(nodes)
        err = float(np.max(np.sum(np.abs(V @ M - np.eye(len(nodes))), axis=1)))
        worst = max(worst, err)
    assert worst <= 1e-10, worst


@pytest.mark.parametrize("a", [0.005, 0.3, 1.0])
def test_vandermonde_identity_residual_quintic_nodes(a):
    nodes = np.array(find_roots(a).all_roots())
    V = vandermonde_matrix(nodes)
    M = vandermonde_inverse(nodes)
    err = float(np.max(np.sum(np.abs(V @ M - np.eye(5)), axis=1)))
    assert err <= 1e-10, err


def test_vandermonde_solves_residue_system():
    """Solving V c = (y_0..y_4) recovers the residue coefficients."""
    a = 0.25
    roots = find_roots(a)
    res = residue_coeffs(a)
    nodes = np.array(roots.all_roots())
    y = y_closed_sequence(a, 4)
    c = vandermonde_inverse(nodes) @ y  # row j dots y to the residue of node j
    want = [res.c_alpha, res.c_beta, np.conj(res.c_beta), res.c_gamma, np.conj(res.c_gamma)]
    remaining = list(c)
    for w in want:
        d, best = min((abs(w - r), k) for k, r in enumerate(remaining))
        assert d < 1e-12, (w, remaining)
        remaining.pop(best)


def test_vandermonde_rejects_near_duplicates():
    with pytest.raises(ValueError):
        vandermonde_inverse([1.0, 1.0 + 1e-14])


def test_vandermonde_node_cap():
    with pytest.raises(CapacityError):
        vandermonde_inverse(np.exp(2j * np.pi * np.arange(13) / 13))
    with pytest.raises(CapacityError):
        vandermonde_inverse([])


# --------------------------------------------------------------------------
# the battery
# --------------------------------------------------------------------------

COARSE = EstimateGrids(
    unit=(0.0, 1.0, 2e-2),
    large=(0.005, 0.999, 2e-2),
    small=(1e-4, 0.005, 1e-4),
)


def test_battery_all_pass_coarse():
    results = check_estimates(COARSE)
    assert [c.check_id for c in results] == list("abcdefghijklm")
    for c in results:
        assert c.passed, (c.check_id, c.worst_margin)
        assert c.worst_margin > 0, c.check_id


def test_battery_subset_and_validation():
    only = check_estimates(COARSE, only=["d", "i"])
    assert [c.check_id for c in only] == ["d", "i"]
    with pytest.raises(ValueError):
        check_estimates(COARSE, only=["z"])


def test_battery_margins_scale_free():
    """The Taylor-window checks report t^2-scaled margins: coarsening the
    grid must not collapse them toward zero."""
    fine = {c.check_id: c for c in check_estimates(only=["g", "h"])}
    coarse = {c.check_id: c for c in check_estimates(COARSE, only=["g", "h"])}
    for cid in ("g", "h"):
        assert fine[cid].passed and coarse[cid].passed
        assert fine[cid].worst_margin > 1e-5
        assert coarse[cid].worst_margin > 1e-5
