"""Wach-style matrix towers over Z_p[[pi]] and their Galois twists.

The variable is written pi.  Frobenius acts by pi -> (1 + pi)^p - 1 and
the cyclotomic group element gamma_c by pi -> (1 + pi)^c - 1 with
c = 1 mod p.  With q = Phi_p(1 + pi) one has phi^{k-1}(q) =
Phi_{p^k}(1 + pi), and the level-k connection matrix is

    P_k = C * diag(I_{fil}, (1 / phi^{k-1}(q)) I)

whose inverse diag(I_{fil}, phi^{k-1}(q) I) * C^{-1} is an honest
polynomial matrix.  The tower approximants

    M'_n = C_phi^n * P_n^{-1} * ... * P_1^{-1}
         = C_phi * phi(M'_{n-1}) * P_1^{-1}

are exact polynomial matrices with M'_n(0) = I, congruent to each other
modulo (1 + pi)^{p^n} - 1.  The twist of gamma by the tower,

    G^(n) = (M'_n)^{-1} * gamma(M'_n),

is computed modulo a chosen power of pi.  For an integer c everything
runs in exact rational arithmetic: det M'_n has constant term exactly
1, so the inverse is an adjugate divided by a unit power series whose
expansion is a denominator-free recurrence.  The twist must come out
p-integral and congruent to I mod pi, and these claims are verified
rather than assumed.  A non-integer gamma (a scalar exponent) is
supported through a binomial series over the working precision.

The commutation relation linking consecutive levels,

    P_1 * phi(G^(n)) = G^(n+1) * gamma(P_1),

is checked with denominators cleared: both sides are multiplied by
q * gamma(q), turning the identity into one between polynomial-by-
truncated-series products that can be compared coefficient by
coefficient.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    InputError,
    IntegralityViolation,
    PrecisionExhausted,
)
from .linalg import (
    fpoly_add,
    fpoly_divmod,
    fpoly_mul,
    fpoly_scale,
    fpoly_trim,
)
from .logmatrix import FrobeniusData
from .padic import PadicContext, PadicScalar
from .series import XSeries, invert_series, omega_ints, phi_cyclo_ints


def wach_context(p: int, rel_prec: int = 60, denom_budget: int = 64):
    """A context generous enough for twist computations, whose
    intermediate values sink far below the unit ball before the final
    integrality is restored."""
    return PadicContext(p, rel_prec=rel_prec, denom_budget=denom_budget)


class GammaElement:
    """A group element gamma_c acting by pi -> (1 + pi)^c - 1.

    ``c`` is either a positive integer congruent to 1 mod p (the exact
    path) or a PadicScalar congruent to 1 mod p (the series path).
    """

    __slots__ = ("p", "c")

    def __init__(self, p: int, c):
        if isinstance(c, PadicScalar):
            if c.p != p:
                raise InputError("gamma scalar lives over a different prime")
            diff = c - c.ctx.one()
            if not diff.is_zero_rep and diff.valuation() < 1:
                raise InputError("gamma exponent must be 1 mod p")
        else:
            c = int(c)
            if c < 1 or c % p != 1:
                raise InputError(
                    "integer gamma exponent must be positive and 1 mod p")
        self.p = p
        self.c = c

    @classmethod
    def default(cls, p: int) -> "GammaElement":
        return cls(p, 1 + p)

    @property
    def is_integer(self) -> bool:
        return isinstance(self.c, int)

    def __repr__(self):
        return f"gamma({self.c!r})"


# ---------------------------------------------------------------------------
# exact polynomial layer (Fraction coefficients, [] = zero)
# ---------------------------------------------------------------------------


def _binom_shift(e: int):
    """(1 + pi)^e - 1 as an exact polynomial in pi."""
    out = [Fraction(math.comb(e, k)) for k in range(e + 1)]
    out[0] = Fraction(0)
    return fpoly_trim(out)


def _pcompose(f, g):
    """f(g(pi)) for polynomials with g(0) = 0."""
    if g and g[0] != 0:
        raise InputError("substitution requires zero constant term")
    acc = []
    for c in reversed(list(f)):
        acc = fpoly_add(fpoly_mul(acc, g), [Fraction(c)])
    return acc


def phi_act_poly(p: int, f):
    """Substitute pi -> (1 + pi)^p - 1 into a polynomial."""
    return _pcompose(f, _binom_shift(p))


def gamma_act_poly(gamma: GammaElement, f):
    """Substitute pi -> (1 + pi)^c - 1, integer exponent only."""
    if not gamma.is_integer:
        raise InputError("exact substitution needs an integer exponent")
    return _pcompose(f, _binom_shift(gamma.c))


def _pmat_from_frac(M):
    return [[[Fraction(x)] if x else [] for x in row] for row in M]


def _pmat_identity(d):
    return [[[Fraction(1)] if i == j else [] for j in range(d)]
            for i in range(d)]


def _pmat_mul(A, B):
    d, m, e = len(A), len(B), len(B[0])
    out = []
    for i in range(d):
        row = []
        for j in range(e):
            acc = []
            for k in range(m):
                acc = fpoly_add(acc, fpoly_mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(row)
    return out


def _pmat_sub(A, B):
    return [
        [fpoly_add(a, fpoly_scale(b, -1)) for a, b in zip(ra, rb)]
        for ra, rb in zip(A, B)
    ]


def _pmat_map(A, fn):
    return [[fn(e) for e in row] for row in A]


def _pdet(A):
    d = len(A)
    if d == 1:
        return list(A[0][0])
    acc = []
    for j in range(d):
        if not A[0][j]:
            continue
        minor = [[A[i][k] for k in range(d) if k != j] for i in range(1, d)]
        term = fpoly_mul(A[0][j], _pdet(minor))
        if j % 2:
            term = fpoly_scale(term, -1)
        acc = fpoly_add(acc, term)
    return acc


def _padj(A):
    d = len(A)
    if d == 1:
        return [[[Fraction(1)]]]
    out = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            minor = [
                [A[r][c] for c in range(d) if c != j]
                for r in range(d) if r != i
            ]
            cof = _pdet(minor)
            if (i + j) % 2:
                cof = fpoly_scale(cof, -1)
            out[j][i] = cof
    return out


def _pseries_inv(f, T: int):
    """Inverse of a polynomial with nonzero constant term, mod pi^T."""
    if not f or f[0] == 0:
        raise InputError("series inverse needs a nonzero constant term")
    c0 = Fraction(f[0])
    g = [Fraction(1) / c0]
    for k in range(1, T):
        acc = Fraction(0)
        for j in range(max(0, k - len(f) + 1), k):
            acc += g[j] * f[k - j]
        g.append(-acc / c0)
    return fpoly_trim(g)


def _ptrunc(f, T: int):
    return fpoly_trim(list(f)[:T])


def _pmat_trunc(A, T: int):
    return _pmat_map(A, lambda e: _ptrunc(e, T))


def _pmat_integral(A, p: int):
    """First non p-integral coefficient, or None when all are."""
    for i, row in enumerate(A):
        for j, e in enumerate(row):
            for k, c in enumerate(e):
                if Fraction(c).denominator % p == 0:
                    return {"entry": (i, j), "degree": k, "value": str(c)}
    return None


# ---------------------------------------------------------------------------
# tower construction
# ---------------------------------------------------------------------------


def _require_wach(fd: FrobeniusData) -> None:
    if fd.r != 1:
        raise InputError("the tower is implemented for r = 1 only")


def q_poly(p: int):
    """q = Phi_p(1 + pi) as an exact polynomial."""
    return [Fraction(c) for c in phi_cyclo_ints(p, 1)]


def q_level_poly(p: int, k: int):
    """phi^{k-1}(q) = Phi_{p^k}(1 + pi)."""
    return [Fraction(c) for c in phi_cyclo_ints(p, k)]


def build_Pn(fd: FrobeniusData, n: int) -> dict:
    """The level-n connection data.

    Returns the exact polynomial inverse ``P_inv`` =
    diag(I, phi^{n-1}(q) I) C^{-1}, the cleared form ``qP`` =
    C diag(phi^{n-1}(q) I, I) with q_n P_n = qP, and the scalar
    polynomial ``q_n`` itself.
    """
    _require_wach(fd)
    if n < 1:
        raise InputError("n must be at least 1")
    p = fd.ctx.p
    d, fil = fd.size, fd.fil_dim
    qn = q_level_poly(p, n)
    Cinv = _pmat_from_frac(fd.C_inv_frac())
    C = _pmat_from_frac(fd.C_frac())
    scale_right = [
        [qn if (i == j and i >= fil) else ([Fraction(1)] if i == j else [])
         for j in range(d)]
        for i in range(d)
    ]
    P_inv = _pmat_mul(scale_right, Cinv)
    scale_left = [
        [qn if (i == j and i < fil) else ([Fraction(1)] if i == j else [])
         for j in range(d)]
        for i in range(d)
    ]
    qP = _pmat_mul(C, scale_left)
    return {"P_inv": P_inv, "qP": qP, "q_n": qn}


class WachMatrixTower:
    """Exact polynomial approximants M'_1, ..., M'_n for one instance."""

    __slots__ = ("fd", "n", "levels")

    def __init__(self, fd: FrobeniusData, n: int, levels):
        self.fd = fd
        self.n = n
        self.levels = levels

    def matrix(self, k: int):
        if not 1 <= k <= self.n:
            raise InputError(f"level must be in 1..{self.n}")
        return self.levels[k - 1]

    def value_at_zero_is_identity(self, k: int) -> bool:
        M = self.matrix(k)
        d = len(M)
        for i in range(d):
            for j in range(d):
                want = Fraction(int(i == j))
                got = M[i][j][0] if M[i][j] else Fraction(0)
                if got != want:
                    return False
        return True


def build_M_prime(fd: FrobeniusData, n: int) -> WachMatrixTower:
    """Build the tower up to level n through the recursion
    M'_k = C_phi * phi(M'_{k-1}) * P_1^{-1}."""
    _require_wach(fd)
    if n < 1:
        raise InputError("n must be at least 1")
    p = fd.ctx.p
    P1_inv = build_Pn(fd, 1)["P_inv"]
    C_phi = _pmat_from_frac(fd.C_phi_frac())
    levels = []
    current = _pmat_identity(fd.size)
    for _ in range(n):
        moved = _pmat_map(current, lambda e: phi_act_poly(p, e))
        current = _pmat_mul(_pmat_mul(C_phi, moved), P1_inv)
        levels.append(current)
    return WachMatrixTower(fd, n, levels)


def verify_tower_congruence(tower: WachMatrixTower, m: int, n: int) -> bool:
    """Whether M'_m = M'_n modulo (1 + pi)^{p^n} - 1, exactly."""
    if not 1 <= n <= m <= tower.n:
        raise InputError("need 1 <= n <= m <= built level")
    wn = [Fraction(c) for c in omega_ints(tower.fd.ctx.p, n)]
    diff = _pmat_sub(tower.matrix(m), tower.matrix(n))
    for row in diff:
        for e in row:
            _, rem = fpoly_divmod(e, wn)
            if rem:
                return False
    return True


# ---------------------------------------------------------------------------
# the gamma twist
# ---------------------------------------------------------------------------


def build_G_gamma(fd: FrobeniusData, n: int, gamma: GammaElement,
                  trunc: int) -> dict:
    """G^(n) = (M'_n)^{-1} gamma(M'_n) mod pi^trunc.

    Integer exponents run exactly over rationals; the result must be
    p-integral with constant term I, and IntegralityViolation carries a
    witness otherwise.  Scalar exponents run over the working precision
    and raise PrecisionExhausted when the binomial series cannot
    certify the requested truncation.
    """
    _require_wach(fd)
    if trunc < 1:
        raise InputError("trunc must be positive")
    tower = build_M_prime(fd, n)
    M = tower.matrix(n)
    if gamma.is_integer:
        G = _twist_exact(fd, M, gamma, trunc)
        witness = _pmat_integral(G, fd.ctx.p)
        if witness is not None:
            raise IntegralityViolation(
                "twist has a non p-integral coefficient", witness=witness)
        const_ok = all(
            (G[i][j][0] if G[i][j] else Fraction(0)) == Fraction(int(i == j))
            for i in range(fd.size) for j in range(fd.size)
        )
        if not const_ok:
            raise IntegralityViolation(
                "twist is not congruent to I mod pi",
                witness={"constant_term": [[str(e[0]) if e else "0"
                                            for e in row] for row in G]})
        return {"G": G, "exact": True, "trunc": trunc, "n": n}
    G = _twist_series(fd, M, gamma, trunc)
    report = _certify_series_twist(fd, G)
    return {"G": G, "exact": False, "trunc": trunc, "n": n, **report}


def _twist_exact(fd, M, gamma, trunc):
    det = _pdet(M)
    if not det or det[0] != 1:
        raise InputError("tower determinant must have constant term 1")
    adj = _padj(M)
    inv_det = _pseries_inv(det, trunc)
    moved = _pmat_map(M, lambda e: _ptrunc(gamma_act_poly(gamma, e), trunc))
    Minv = _pmat_map(adj, lambda e: _ptrunc(fpoly_mul(e, inv_det), trunc))
    return _pmat_trunc(_pmat_mul(Minv, moved), trunc)


def _one_plus_pi_power(ctx: PadicContext, c: PadicScalar, T: int) -> XSeries:
    """(1 + pi)^c - 1 mod pi^T through the binomial series.

    The constant term vanishes identically and is stored as an exact
    zero; division by k! costs v_p(k!) digits, so the scalar must carry
    enough precision to keep every kept coefficient meaningful.
    """
    coeffs = [ctx.zero()]
    term = ctx.one()
    for k in range(1, T):
        factor = c - ctx.integer(k - 1)
        term = term * factor / ctx.integer(k)
        if term.is_zero_rep and term.prec <= 0:
            raise PrecisionExhausted(
                f"binomial coefficient at degree {k} lost all precision; "
                "raise rel_prec on the context")
        coeffs.append(term)
    return XSeries(ctx, coeffs, T)


def gamma_act_series(gamma: GammaElement, f: XSeries, trunc: int) -> XSeries:
    """Substitute pi -> (1 + pi)^c - 1 into a series, scalar exponent."""
    if gamma.is_integer:
        shift = XSeries.from_fractions(f.ctx, _binom_shift(gamma.c))
        return f.compose(shift).truncate(trunc)
    sub = _one_plus_pi_power(f.ctx, gamma.c, trunc)
    return f.truncate(trunc).compose(sub)


def _twist_series(fd, M, gamma, trunc):
    ctx = fd.ctx
    det = _pdet(M)
    adj = _padj(M)
    det_series = XSeries.from_fractions(ctx, det)
    inv_det = invert_series(det_series, trunc)
    out = []
    for i in range(fd.size):
        row = []
        for j in range(fd.size):
            acc = XSeries.zero(ctx, trunc)
            for k in range(fd.size):
                a = XSeries.from_fractions(ctx, adj[i][k]) * inv_det
                b = gamma_act_series(
                    gamma, XSeries.from_fractions(ctx, M[k][j]), trunc)
                acc = acc + a * b
            row.append(acc.truncate(trunc))
        out.append(row)
    return out


def _certify_series_twist(fd, G):
    """Constant term I and integrality, at working precision."""
    const_ok = True
    integral = True
    witness = None
    for i, row in enumerate(G):
        for j, e in enumerate(row):
            c0 = e.coeff(0) - fd.ctx.integer(int(i == j))
            if c0.zero_status() == "nonzero":
                const_ok = False
            for k in range(e.trunc if e.trunc is not None else len(e.coeffs)):
                c = e.coeff(k)
                if c.is_zero_rep:
                    if c.prec <= 0:
                        integral = False
                        witness = witness or (i, j, k)
                elif c.valuation() < 0:
                    integral = False
                    witness = witness or (i, j, k)
    return {"constant_is_identity": const_ok, "integral": integral,
            "witness": witness}


# ---------------------------------------------------------------------------
# structural identities
# ---------------------------------------------------------------------------


def verify_p1_twist(fd: FrobeniusData, gamma: GammaElement,
                    trunc: int) -> dict:
    """P_1 gamma(P_1^{-1}) must be congruent to I mod pi.

    Computed exactly for integer exponents: the product equals
    (1/q) * qP_1 * gamma(P_1^{-1}), and 1/q is expanded as
    (1/p) * inverse of (q/p), whose constant term is 1.
    """
    _require_wach(fd)
    if not gamma.is_integer:
        raise InputError("exact check needs an integer gamma exponent")
    p = fd.ctx.p
    data = build_Pn(fd, 1)
    q = q_poly(p)
    q_over_p = fpoly_scale(q, Fraction(1, p))
    inv_q = fpoly_scale(_pseries_inv(q_over_p, trunc), Fraction(1, p))
    moved = _pmat_map(data["P_inv"],
                      lambda e: _ptrunc(gamma_act_poly(gamma, e), trunc))
    prod = _pmat_mul(data["qP"], moved)
    prod = _pmat_map(prod, lambda e: _ptrunc(fpoly_mul(e, inv_q), trunc))
    d = fd.size
    const = [[(prod[i][j][0] if prod[i][j] else Fraction(0))
              for j in range(d)] for i in range(d)]
    ok = all(const[i][j] == Fraction(int(i == j))
             for i in range(d) for j in range(d))
    return {"identity_mod_pi": ok,
            "constant_term": [[str(x) for x in row] for row in const]}


def verify_commutation(fd: FrobeniusData, n: int, gamma: GammaElement,
                       trunc: int) -> dict:
    """Check P_1 phi(G^(n)) = G^(n+1) gamma(P_1) mod pi^trunc.

    Both sides are multiplied by q * gamma(q), clearing every
    denominator: the comparison is between exact truncated rational
    series.  Integer exponents only.
    """
    _require_wach(fd)
    if not gamma.is_integer:
        raise InputError("exact check needs an integer gamma exponent")
    p = fd.ctx.p
    Gn = build_G_gamma(fd, n, gamma, trunc)["G"]
    Gn1 = build_G_gamma(fd, n + 1, gamma, trunc)["G"]
    data = build_Pn(fd, 1)
    qP = data["qP"]
    q = q_poly(p)
    gq = gamma_act_poly(gamma, q)
    gqP = _pmat_map(qP, lambda e: gamma_act_poly(gamma, e))
    phi_G = _pmat_map(Gn, lambda e: _ptrunc(phi_act_poly(p, e), trunc))
    lhs = _pmat_mul(qP, phi_G)
    lhs = _pmat_map(lhs, lambda e: _ptrunc(fpoly_mul(e, gq), trunc))
    rhs = _pmat_mul(Gn1, gqP)
    rhs = _pmat_map(rhs, lambda e: _ptrunc(fpoly_mul(e, q), trunc))
    diff = _pmat_sub(lhs, rhs)
    mismatch = None
    for i, row in enumerate(diff):
        for j, e in enumerate(row):
            if e:
                mismatch = mismatch or {
                    "entry": (i, j),
                    "degree": next(k for k, c in enumerate(e) if c != 0),
                }
    return {"n": n, "trunc": trunc, "ok": mismatch is None,
            "mismatch": mismatch}


def verify_cocycle(fd: FrobeniusData, n: int, c1: int, c2: int,
                   trunc: int) -> dict:
    """G^(n)(gamma_1 gamma_2) = G^(n)(gamma_1) * gamma_1(G^(n)(gamma_2))."""
    _require_wach(fd)
    p = fd.ctx.p
    g1 = GammaElement(p, c1)
    g2 = GammaElement(p, c2)
    g12 = GammaElement(p, c1 * c2)
    lhs = build_G_gamma(fd, n, g12, trunc)["G"]
    G1 = build_G_gamma(fd, n, g1, trunc)["G"]
    G2 = build_G_gamma(fd, n, g2, trunc)["G"]
    moved = _pmat_map(G2, lambda e: _ptrunc(gamma_act_poly(g1, e), trunc))
    rhs = _pmat_trunc(_pmat_mul(G1, moved), trunc)
    diff = _pmat_sub(lhs, rhs)
    ok = all(not e for row in diff for e in row)
    return {"n": n, "trunc": trunc, "ok": ok}
