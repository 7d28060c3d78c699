"""The antidiagonal rank-two instance and its signed logarithms.

For the Frobenius matrix C = [[0, -1], [1, 0]] (trace zero, unit
determinant) the logarithmic approximants collapse to a checkerboard:
each M_n is antidiagonal, and the two nonzero entries are partial
products of the plus/minus logarithm series

    log_plus(X)  = (1/p) prod_{k >= 1} Phi_{p^{2k}}(1 + X) / p,
    log_minus(X) = (1/p) prod_{k >= 1} Phi_{p^{2k-1}}(1 + X) / p,

truncated to the factors of level at most n.  Concretely, with
E_n = prod of the even-level cyclotomics up to n, O_n the odd-level
ones, q = floor(n / 2) and t = ceil(n / 2):

    M_n = [[0,              -E_n / p^(q + 1)],
           [O_n / p^t,       0              ]]

and the partial products absorb the powers of p cleanly:

    M_n[0][1] = -log_plus_partial(q)        (q even-level factors)
    M_n[1][0] = p * log_minus_partial(t)    (t odd-level factors)

The sign bookkeeping for the induced coordinate functionals: the first
coordinate of a factored preimage pairs with the minus-signed map and
the second with the negative of the plus-signed one.

Everything is verified exactly; the checks in verify_antidiagonal
recompute both sides from scratch.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .logmatrix import FrobeniusData, build_Mn, check_evaluation
from .padic import PadicContext
from .series import XSeries, phi_cyclo

SIGN_NOTE = (
    "first factored coordinate pairs with the minus map, second with "
    "the negative of the plus map"
)


def pollack_instance(ctx: PadicContext) -> FrobeniusData:
    """The trace-zero rank-two instance C = [[0, -1], [1, 0]] with a
    one-dimensional filtration step."""
    return FrobeniusData.create(ctx, [[0, -1], [1, 0]], d0=1, r=1)


def log_plus_partial(ctx: PadicContext, n_factors: int,
                     trunc=None) -> XSeries:
    """Partial product of the plus logarithm: (1/p) times the product
    of Phi_{p^{2k}}(1 + X) / p for k = 1 .. n_factors."""
    return _log_partial(ctx, n_factors, even=True, trunc=trunc)


def log_minus_partial(ctx: PadicContext, n_factors: int,
                      trunc=None) -> XSeries:
    """Partial product of the minus logarithm: (1/p) times the product
    of Phi_{p^{2k-1}}(1 + X) / p for k = 1 .. n_factors."""
    return _log_partial(ctx, n_factors, even=False, trunc=trunc)


def _log_partial(ctx, n_factors, even, trunc):
    if n_factors < 0:
        raise InputError("n_factors must be nonnegative")
    out = XSeries.from_fractions(ctx, [Fraction(1, ctx.p)])
    for k in range(1, n_factors + 1):
        level = 2 * k if even else 2 * k - 1
        out = out * phi_cyclo(ctx, level)
        out = out.scale(Fraction(1, ctx.p))
    if trunc is not None:
        out = out.truncate(trunc)
    return out


def closed_form_matrix(fd: FrobeniusData, n: int):
    """The predicted value of M_n for the antidiagonal instance, as an
    exact 2 x 2 matrix of series, computed without the recursion."""
    _require_pollack(fd)
    ctx = fd.ctx
    if n < 1:
        raise InputError("n must be at least 1")
    q, t = n // 2, (n + 1) // 2
    even = XSeries.from_fractions(ctx, [Fraction(1)])
    odd = XSeries.from_fractions(ctx, [Fraction(1)])
    for k in range(1, n + 1):
        if k % 2 == 0:
            even = even * phi_cyclo(ctx, k)
        else:
            odd = odd * phi_cyclo(ctx, k)
    zero = XSeries.zero(ctx)
    upper = even.scale(Fraction(-1, ctx.p ** (q + 1)))
    lower = odd.scale(Fraction(1, ctx.p ** t))
    return [[zero, upper], [lower, zero]]


def _require_pollack(fd: FrobeniusData) -> None:
    want = ((Fraction(0), Fraction(-1)), (Fraction(1), Fraction(0)))
    if fd.C != want or fd.d0 != 1 or fd.r != 1:
        raise InputError(
            "this check applies to the antidiagonal instance "
            "[[0, -1], [1, 0]] with d0 = 1, r = 1")


def _series_is_zero(s: XSeries, cutoff: int):
    status, witness = s.zero_status(cutoff)
    return status, witness


def verify_antidiagonal(fd: FrobeniusData, n: int, cutoff: int = 1) -> dict:
    """Check M_n against the closed antidiagonal form.

    Confirms: the diagonal vanishes exactly, both off-diagonal entries
    match the even/odd cyclotomic products, the same entries are the
    partial signed logarithms (up to the stated scalings), and the
    value at zero is [[0, -1/p], [1, 0]].  Returns a report dict with
    an overall ``ok`` flag.
    """
    _require_pollack(fd)
    ctx = fd.ctx
    approx = build_Mn(fd, n)
    M = approx.raw
    predicted = closed_form_matrix(fd, n)
    report = {"n": n, "note": SIGN_NOTE}

    diag_ok = True
    for i in (0, 1):
        status, _ = _series_is_zero(M[i][i], cutoff)
        if status != "zero":
            diag_ok = False
    report["diagonal_zero"] = diag_ok

    entries_ok = True
    witnesses = {}
    for i in (0, 1):
        for j in (0, 1):
            status, witness = _series_is_zero(M[i][j] - predicted[i][j],
                                              cutoff)
            if status != "zero":
                entries_ok = False
                witnesses[f"{i},{j}"] = (status, witness)
    report["entries_match_closed_form"] = entries_ok
    if witnesses:
        report["mismatches"] = witnesses

    q, t = n // 2, (n + 1) // 2
    plus = log_plus_partial(ctx, q).scale(Fraction(-1))
    status_p, _ = _series_is_zero(M[0][1] - plus, cutoff)
    report["upper_is_minus_log_plus_partial"] = status_p == "zero"
    minus = log_minus_partial(ctx, t).scale(Fraction(ctx.p))
    status_m, _ = _series_is_zero(M[1][0] - minus, cutoff)
    report["lower_is_p_log_minus_partial"] = status_m == "zero"

    eval_report = check_evaluation(approx, cutoff=cutoff)
    report["value_at_zero_ok"] = eval_report["ok"]

    report["ok"] = (
        diag_ok
        and entries_ok
        and report["upper_is_minus_log_plus_partial"]
        and report["lower_is_p_log_minus_partial"]
        and report["value_at_zero_ok"]
    )
    return report
