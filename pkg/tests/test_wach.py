"""Connection-matrix towers and the gamma twist: exact recursion over
rational polynomials, integrality certification, structural identities."""

from fractions import Fraction

import pytest

from padlog import (
    GammaElement,
    InputError,
    PadicContext,
    PrecisionExhausted,
    XSeries,
    build_G_gamma,
    build_M_prime,
    build_Pn,
    verify_cocycle,
    verify_commutation,
    verify_p1_twist,
    verify_tower_congruence,
    wach_context,
)
from padlog.pollack import pollack_instance
from padlog.wach import (
    _binom_shift,
    _one_plus_pi_power,
    gamma_act_poly,
    phi_act_poly,
    q_poly,
)

from instances import random_instance
from oracles import binomial_power, pdivmod, pmul, ptrim


def wach_fd(p=3):
    return pollack_instance(wach_context(p))


def test_q_poly_is_level_one_cyclotomic():
    assert q_poly(3) == [Fraction(3), Fraction(3), Fraction(1)]
    assert q_poly(5) == [Fraction(c) for c in (5, 10, 10, 5, 1)]


def test_binom_shift_frozen():
    # (1 + pi)^4 - 1 = 4 pi + 6 pi^2 + 4 pi^3 + pi^4
    assert _binom_shift(4) == [Fraction(c) for c in (0, 4, 6, 4, 1)]


def test_phi_act_is_substitution():
    # phi(pi^2) = ((1+pi)^p - 1)^2
    p = 3
    shift = [Fraction(c) for c in binomial_power(p)]
    shift[0] -= 1
    want = pmul(ptrim(shift), ptrim(shift))
    assert phi_act_poly(p, [Fraction(0), Fraction(0), Fraction(1)]) == want


def test_gamma_act_requires_integer():
    ctx = PadicContext(3, rel_prec=10, denom_budget=12)
    g = GammaElement(3, ctx.integer(4))
    with pytest.raises(InputError):
        gamma_act_poly(g, [Fraction(1)])


def test_gamma_element_validation():
    with pytest.raises(InputError):
        GammaElement(3, 2)  # not 1 mod 3
    with pytest.raises(InputError):
        GammaElement(3, 0)
    ctx5 = PadicContext(5, rel_prec=10, denom_budget=12)
    with pytest.raises(InputError):
        GammaElement(3, ctx5.integer(4))  # wrong prime
    ctx = PadicContext(3, rel_prec=10, denom_budget=12)
    with pytest.raises(InputError):
        GammaElement(3, ctx.integer(2))  # not 1 mod 3
    assert GammaElement.default(3).c == 4


def test_p1_frozen_shapes():
    fd = wach_fd()
    data = build_Pn(fd, 1)
    q = q_poly(3)
    # qP = C diag(q, 1) = [[0, -1], [q, 0]]
    assert data["qP"] == [[[], [Fraction(-1)]], [q, []]]
    # P_inv = diag(1, q) C^{-1} = [[0, 1], [-q, 0]]
    assert data["P_inv"] == [[[], [Fraction(1)]],
                             [[-c for c in q], []]]
    assert data["q_n"] == q


def test_m_prime_level_one_diagonal():
    fd = wach_fd()
    tower = build_M_prime(fd, 1)
    M1 = tower.matrix(1)
    q_over_p = [c / 3 for c in q_poly(3)]
    assert M1 == [[q_over_p, []], [[], [Fraction(1)]]]


def test_m_prime_value_at_zero():
    fd = wach_fd()
    tower = build_M_prime(fd, 3)
    for k in (1, 2, 3):
        assert tower.value_at_zero_is_identity(k)


def test_tower_congruence_exact():
    fd = wach_fd()
    tower = build_M_prime(fd, 3)
    assert verify_tower_congruence(tower, 2, 1)
    assert verify_tower_congruence(tower, 3, 1)
    assert verify_tower_congruence(tower, 3, 2)
    with pytest.raises(InputError):
        verify_tower_congruence(tower, 1, 2)


def test_tower_congruence_is_sharp():
    # M'_2 - M'_1 is NOT zero mod omega_2, only mod omega_1
    fd = wach_fd()
    tower = build_M_prime(fd, 2)
    from padlog.series import omega_ints
    w2 = [Fraction(c) for c in omega_ints(3, 2)]
    diff = [
        [
            pdivmod(
                [a - b for a, b in
                 zip(tower.matrix(2)[i][j] + [Fraction(0)] * 40,
                     tower.matrix(1)[i][j] + [Fraction(0)] * 40)],
                w2,
            )[1]
            for j in range(2)
        ]
        for i in range(2)
    ]
    assert any(any(e) for row in diff for e in row)


def test_g_twist_exact_integral_identity_constant():
    fd = wach_fd()
    g = GammaElement.default(3)
    for n in (1, 2, 3):
        out = build_G_gamma(fd, n, g, 30)
        assert out["exact"]
        G = out["G"]
        for i in range(2):
            for j in range(2):
                e = G[i][j]
                c0 = e[0] if e else Fraction(0)
                assert c0 == Fraction(int(i == j))
                for c in e:
                    assert c.denominator % 3 != 0


def test_p1_twist_identity_mod_pi():
    fd = wach_fd()
    rep = verify_p1_twist(fd, GammaElement.default(3), 30)
    assert rep["identity_mod_pi"]


def test_commutation_low_levels():
    fd = wach_fd()
    g = GammaElement.default(3)
    for n in (1, 2):
        rep = verify_commutation(fd, n, g, 30)
        assert rep["ok"], rep["mismatch"]


def test_cocycle_identity():
    fd = wach_fd()
    rep = verify_cocycle(fd, 1, 4, 7, 24)
    assert rep["ok"]
    rep2 = verify_cocycle(fd, 2, 4, 4, 24)
    assert rep2["ok"]


def test_scalar_path_matches_exact_path():
    fd = wach_fd()
    ctx = fd.ctx
    exact = build_G_gamma(fd, 1, GammaElement(3, 4), 12)
    series = build_G_gamma(fd, 1, GammaElement(3, ctx.integer(4)), 12)
    assert exact["exact"] and not series["exact"]
    assert series["constant_is_identity"] and series["integral"]
    for i in range(2):
        for j in range(2):
            ref = XSeries.from_fractions(ctx, exact["G"][i][j]).truncate(12)
            diff = series["G"][i][j] - ref
            assert diff.zero_status()[0] == "zero"


def test_binomial_series_frozen_integer_exponent():
    ctx = wach_context(3)
    s = _one_plus_pi_power(ctx, ctx.integer(4), 8)
    # matches the exact polynomial through degree 4, zero afterwards
    want = _binom_shift(4)
    for k in range(8):
        target = want[k] if k < len(want) else Fraction(0)
        d = s.coeff(k) - ctx.from_rational(target)
        assert d.is_zero_rep


def test_binomial_series_precision_exhaustion():
    ctx = PadicContext(3, rel_prec=2, denom_budget=30)
    with pytest.raises(PrecisionExhausted):
        _one_plus_pi_power(ctx, ctx.integer(4), 12)


def test_wach_rejects_higher_r():
    ctx = wach_context(3)
    from padlog import FrobeniusData
    fd = random_instance(3, 4, 2, 0)
    fd2 = FrobeniusData.create(ctx, fd.C, d0=1, r=2, force=True)
    with pytest.raises(InputError):
        build_M_prime(fd2, 1)


def test_gl4_tower_also_works():
    fd = random_instance(3, 4, 2, 1)
    tower = build_M_prime(fd, 2)
    assert tower.value_at_zero_is_identity(1)
    assert tower.value_at_zero_is_identity(2)
    assert verify_tower_congruence(tower, 2, 1)
    out = build_G_gamma(fd, 1, GammaElement.default(3), 16)
    assert out["exact"]
