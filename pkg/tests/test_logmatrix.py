"""Logarithmic matrix approximants: admission gate, tower build,
stabilization, determinant identity, basis change, image condition."""

import random
from fractions import Fraction

import pytest

from padlog import (
    FrobeniusData,
    HypothesisFailed,
    NotFiltrationAdapted,
    PadicContext,
    XSeries,
    build_Mn,
    check_evaluation,
    check_hypotheses,
    conjugate_basis_check,
    conjugated_instance,
    det_Mn,
    det_closed_form,
    image_condition_at_zero,
    phi_cyclo,
    verify_stabilization,
)
from padlog.logmatrix import min_coeff_valuation

from instances import interleaved_gl4, pollack_fd, random_instance
from oracles import matches_rational, phi_oracle, pmul


def test_gate_accepts_half_slope_instance():
    fd = pollack_fd()
    report = check_hypotheses(fd)
    assert report.ok
    # characteristic polynomial of C_phi is x^2 + 1/p
    assert list(report.charpoly) == [Fraction(1, 3), Fraction(0), Fraction(1)]
    assert list(report.root_valuations) == [(Fraction(-1, 2), 2)]


def test_gate_rejects_identity():
    ctx = PadicContext(3, rel_prec=20, denom_budget=24)
    with pytest.raises(HypothesisFailed) as exc:
        FrobeniusData.create(ctx, [[1, 0], [0, 1]], d0=1)
    msg = str(exc.value)
    assert "eigenvalue valuation -1 (x1) outside (-1, 0]" in msg
    assert "1 is an eigenvalue of C_phi" in msg


def test_gate_rejects_unit_eigenvalue_one():
    # C = diag(1, 3) makes C_phi the identity
    ctx = PadicContext(3, rel_prec=20, denom_budget=24)
    with pytest.raises(HypothesisFailed) as exc:
        FrobeniusData.create(ctx, [[1, 0], [0, 3]], d0=1)
    assert "1 is an eigenvalue of C_phi" in str(exc.value)


def test_force_create_keeps_failing_report():
    ctx = PadicContext(3, rel_prec=20, denom_budget=24)
    fd = FrobeniusData.create(ctx, [[1, 0], [0, 1]], d0=1, force=True)
    assert not check_hypotheses(fd).ok


def test_m1_frozen_entries():
    fd = pollack_fd()
    ctx = fd.ctx
    m1 = build_Mn(fd, 1)
    zero01 = m1.raw[0][0].zero_status()[0]
    zero11 = m1.raw[1][1].zero_status()[0]
    assert zero01 == "zero" and zero11 == "zero"
    third = XSeries.from_fractions(ctx, [Fraction(-1, 3)])
    assert (m1.raw[0][1] - third).zero_status()[0] == "zero"
    want = phi_cyclo(ctx, 1) * XSeries.from_fractions(ctx, [Fraction(1, 3)])
    assert (m1.raw[1][0] - want).zero_status()[0] == "zero"
    # the unit of the scalar entry reduces to -1 modulo 3^20
    c = m1.raw[0][1].coeff(0)
    assert matches_rational(c, Fraction(-1, 3))


def test_value_at_zero_is_frobenius_matrix():
    for fd in (pollack_fd(), interleaved_gl4()):
        for n in (1, 2):
            assert check_evaluation(build_Mn(fd, n))["ok"]


def test_stabilization_pollack_all_pairs():
    fd = pollack_fd()
    for n in (1, 2):
        for m in range(n + 1, 4):
            assert verify_stabilization(fd, n, m)


def test_stabilization_random_instances():
    for seed in (0, 1):
        fd = random_instance(3, 2, 1, seed)
        assert verify_stabilization(fd, 1, 2)
    fd4 = random_instance(3, 4, 2, 0)
    assert verify_stabilization(fd4, 1, 2)


def test_determinant_identity():
    fd = pollack_fd()
    for n in (1, 2, 3):
        rep = det_Mn(fd, n)
        assert rep["raw_match"] and rep["reduced_match"]


def test_determinant_identity_random():
    fd = random_instance(5, 2, 1, 2)
    rep = det_Mn(fd, 2)
    assert rep["raw_match"]


def test_det_closed_form_against_independent_product():
    # rebuild det(C) p^{-(n+1)s} prod Phi_{p^k}^s with the division
    # oracle's cyclotomic coefficients and exact Fraction polynomials
    fd = pollack_fd()
    ctx = fd.ctx
    n = 2
    s = fd.scaled_dim
    prod = [Fraction(1, ctx.p ** ((n + 1) * s))]
    for k in range(1, n + 1):
        phik = [Fraction(c) for c in phi_oracle(ctx.p, k)]
        for _ in range(s):
            prod = pmul(prod, phik)
    closed = det_closed_form(fd, n)
    want = XSeries.from_fractions(ctx, prod)
    assert (closed - want).zero_status()[0] == "zero"


def test_min_coeff_valuation_bound():
    fd = pollack_fd()
    for n in (1, 2, 3):
        rep = min_coeff_valuation(build_Mn(fd, n))
        assert rep["ok"]
        assert rep["observed"] >= rep["bound"]


def test_conjugation_diagonal_unit_is_exact():
    fd = pollack_fd()
    rep = conjugate_basis_check(fd, [[2, 0], [0, 1]], levels=(1, 2))
    assert rep["adapted"] and rep["all_exact"] and rep["all_mod_omega"]


def test_conjugation_shear_mismatch_survives_reduction():
    fd = pollack_fd()
    rep = conjugate_basis_check(fd, [[1, 1], [0, 1]], levels=(1, 2))
    assert rep["adapted"]
    assert not rep["all_exact"]
    assert not rep["all_mod_omega"]
    assert rep["levels"][1]["witness"] is not None


def test_conjugation_rejects_non_adapted():
    fd = pollack_fd()
    with pytest.raises(NotFiltrationAdapted):
        conjugate_basis_check(fd, [[1, 0], [1, 1]])
    with pytest.raises(NotFiltrationAdapted):
        conjugated_instance(fd, [[3, 0], [0, 1]])  # det not a unit


def test_conjugated_instance_passes_gate():
    fd = pollack_fd()
    fd_w = conjugated_instance(fd, [[2, 1], [0, 1]])
    assert check_hypotheses(fd_w).ok


def test_image_condition_frozen_values():
    fd = pollack_fd()
    r3 = image_condition_at_zero(fd, [1], [3], trivial_character=True)
    r1 = image_condition_at_zero(fd, [1], [1], trivial_character=True)
    r0 = image_condition_at_zero(fd, [1], [0], trivial_character=True)
    assert r3.membership and not r1.membership and r0.membership
    assert r3.finite_index
    assert r3.details["dual_intersection_trivial"]


def test_image_condition_plain_character():
    fd = pollack_fd()
    res = image_condition_at_zero(fd, [1], [1])
    assert res.membership and res.finite_index


def test_random_instances_pass_full_battery():
    rng = random.Random(77)
    for _ in range(3):
        p = rng.choice((3, 5))
        size, d0 = rng.choice(((2, 1), (4, 2)))
        fd = random_instance(p, size, d0, rng.randrange(100))
        assert check_hypotheses(fd).ok
        m2 = build_Mn(fd, 2)
        assert check_evaluation(m2)["ok"]
        assert verify_stabilization(fd, 1, 2)
        assert min_coeff_valuation(m2)["ok"]
