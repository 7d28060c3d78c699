"""Polynomials and truncated power series over certified p-adic scalars,
plus the finite-level cyclotomic machinery built on them.

An XSeries is either an exact polynomial (trunc is None, trailing
certified-exact zero coefficients stripped) or a series known modulo
X^trunc (coefficient list padded to exactly trunc entries).  The p-adic
uncertainty of each coefficient is tracked by the scalars themselves;
trunc tracks only the X-adic uncertainty.

Finite levels use omega_n = (1+X)^(p^n) - 1 and the cyclotomic factors
Phi_{p^k}(1+X); reduce_mod_omega produces LambdaNElement classes with
degree-reduced representatives.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .errors import InputError, NotInImage, PrecisionLoss
from .padic import INF, PadicContext, PadicScalar


class XSeries:
    __slots__ = ("ctx", "coeffs", "trunc")

    def __init__(self, ctx: PadicContext, coeffs, trunc=None):
        coeffs = list(coeffs)
        for c in coeffs:
            if not isinstance(c, PadicScalar) or c.ctx != ctx:
                raise InputError("coefficients must be scalars of the same context")
        if trunc is None:
            while coeffs and coeffs[-1].is_zero_rep and coeffs[-1].prec == INF:
                coeffs.pop()
        else:
            if not isinstance(trunc, int) or trunc < 1:
                raise InputError(f"trunc must be a positive int, got {trunc!r}")
            if len(coeffs) > trunc:
                coeffs = coeffs[:trunc]
            while len(coeffs) < trunc:
                coeffs.append(ctx.zero())
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, name, value):
        raise AttributeError("XSeries is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def from_ints(cls, ctx, ints, trunc=None):
        return cls(ctx, [ctx.integer(n) for n in ints], trunc)

    @classmethod
    def from_fractions(cls, ctx, fracs, trunc=None):
        return cls(ctx, [ctx.from_rational(q) for q in fracs], trunc)

    @classmethod
    def zero(cls, ctx, trunc=None):
        return cls(ctx, [], trunc)

    @classmethod
    def one(cls, ctx, trunc=None):
        return cls.from_ints(ctx, [1], trunc)

    @classmethod
    def x(cls, ctx, trunc=None):
        return cls.from_ints(ctx, [0, 1], trunc)

    # -- structure -----------------------------------------------------

    @property
    def is_exact_poly(self) -> bool:
        return self.trunc is None

    def coeff(self, j: int) -> PadicScalar:
        """Coefficient of X^j.  Beyond an exact polynomial's length this
        is an exact zero; at or past a finite trunc it is unknown."""
        if j < 0:
            raise InputError("negative index")
        if self.trunc is not None and j >= self.trunc:
            raise PrecisionLoss(f"coefficient {j} not known mod X^{self.trunc}")
        if j < len(self.coeffs):
            return self.coeffs[j]
        return self.ctx.zero()

    def degree(self, cutoff: int = 1) -> int:
        """Degree of the reduction, treating coefficients certified zero
        mod p^cutoff as zero.  Exact polynomials only.  Raises
        PrecisionLoss when a trailing coefficient is indeterminate, and
        returns -1 for the zero polynomial."""
        if not self.is_exact_poly:
            raise PrecisionLoss("degree of a truncated series is not defined")
        for j in range(len(self.coeffs) - 1, -1, -1):
            st = self.coeffs[j].zero_status(cutoff)
            if st == "nonzero":
                return j
            if st == "indeterminate":
                raise PrecisionLoss(
                    f"coefficient {j} has too few digits to certify zero"
                )
        return -1

    def eval_at_zero(self) -> PadicScalar:
        if self.trunc is None and not self.coeffs:
            return self.ctx.zero()
        return self.coeffs[0] if self.coeffs else self.ctx.zero()

    def eval_at(self, x: PadicScalar) -> PadicScalar:
        """Horner evaluation; exact polynomials only."""
        if not self.is_exact_poly:
            raise PrecisionLoss("cannot evaluate a truncated series at a point")
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- arithmetic ------------------------------------------------------

    def _join_trunc(self, other):
        if self.trunc is None:
            return other.trunc
        if other.trunc is None:
            return self.trunc
        return min(self.trunc, other.trunc)

    def _check(self, other):
        if not isinstance(other, XSeries):
            raise InputError("expected an XSeries operand")
        if other.ctx != self.ctx:
            raise InputError("mixed-context series arithmetic")

    def __add__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        self._check(other)
        t = self._join_trunc(other)
        n = max(len(self.coeffs), len(other.coeffs)) if t is None else t
        out = [self.coeff(j) + other.coeff(j) for j in range(n)]
        return XSeries(self.ctx, out, t)

    def __neg__(self):
        return XSeries(self.ctx, [-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        self._check(other)
        t = self._join_trunc(other)
        if t is None:
            n = len(self.coeffs) + len(other.coeffs)
            n = max(n - 1, 0)
        else:
            n = t
        out = []
        for j in range(n):
            acc = self.ctx.zero()
            lo = max(0, j - len(other.coeffs) + 1)
            hi = min(j, len(self.coeffs) - 1)
            for i in range(lo, hi + 1):
                acc = acc + self.coeffs[i] * other.coeffs[j - i]
            out.append(acc)
        return XSeries(self.ctx, out, t)

    def scale(self, a) -> "XSeries":
        if not isinstance(a, PadicScalar):
            a = self.ctx.from_rational(a)
        return XSeries(self.ctx, [a * c for c in self.coeffs], self.trunc)

    def shift_x(self, k: int) -> "XSeries":
        """Multiply by X^k."""
        if k < 0:
            raise InputError("shift_x needs k >= 0")
        t = None if self.trunc is None else self.trunc + k
        pad = [self.ctx.zero() for _ in range(k)]
        return XSeries(self.ctx, pad + list(self.coeffs), t)

    def truncate(self, T: int) -> "XSeries":
        if self.trunc is not None and self.trunc < T:
            raise PrecisionLoss(
                f"series known only mod X^{self.trunc}, cannot report mod X^{T}"
            )
        return XSeries(self.ctx, self.coeffs[:T], T)

    def compose(self, g: "XSeries") -> "XSeries":
        """Substitute g for X; g must have exactly-zero constant term."""
        self._check(g)
        if g.coeffs and not (g.coeffs[0].is_zero_rep and g.coeffs[0].prec == INF):
            raise InputError("composition requires g(0) = 0 exactly")
        t = self._join_trunc(g)
        acc = XSeries(self.ctx, [], t)
        for c in reversed(self.coeffs):
            acc = acc * g + XSeries(self.ctx, [c], t)
        return acc

    # -- predicates / io -------------------------------------------------

    def zero_status(self, cutoff: int = 1):
        """('nonzero', j) at the first certified-nonzero coefficient;
        ('indeterminate', j) if none but some coefficient is unresolved;
        otherwise ('zero', None).  Refers only to stored coefficients."""
        witness = None
        for j, c in enumerate(self.coeffs):
            st = c.zero_status(cutoff)
            if st == "nonzero":
                return ("nonzero", j)
            if st == "indeterminate" and witness is None:
                witness = j
        if witness is not None:
            return ("indeterminate", witness)
        return ("zero", None)

    def __eq__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.trunc == other.trunc
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx, self.trunc, self.coeffs))

    def __repr__(self):
        tail = "" if self.trunc is None else f" + O(X^{self.trunc})"
        terms = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero_rep and c.prec == INF:
                continue
            terms.append(f"({c!r})*X^{j}" if j else f"({c!r})")
        body = " + ".join(terms) if terms else "0"
        return body + tail


# -- polynomial division ------------------------------------------------


def poly_divmod(f: XSeries, g: XSeries, cutoff: int = 1):
    """Long division of exact polynomials: f = q*g + r with deg r < deg g.
    The leading coefficient of g must be certified nonzero."""
    if not (f.is_exact_poly and g.is_exact_poly):
        raise PrecisionLoss("polynomial division needs exact polynomials")
    dg = g.degree(cutoff)
    if dg < 0:
        raise InputError("division by the zero polynomial")
    lead = g.coeffs[dg]
    if lead.zero_status(cutoff) != "nonzero":
        raise PrecisionLoss("leading coefficient of divisor is not certified")
    ctx = f.ctx
    rem = list(f.coeffs)
    q = [ctx.zero() for _ in range(max(len(rem) - dg, 0))]
    lead_inv = lead.inv()
    for j in range(len(rem) - 1, dg - 1, -1):
        c = rem[j]
        if c.is_zero_rep and c.prec == INF:
            continue
        factor = c * lead_inv
        q[j - dg] = factor
        for i in range(dg):
            rem[j - dg + i] = rem[j - dg + i] - factor * g.coeffs[i]
        # the top term is eliminated structurally, not numerically
        rem[j] = ctx.zero()
    return XSeries(ctx, q), XSeries(ctx, rem[:dg])


def divide_exact(f: XSeries, g: XSeries, cutoff: int = 1) -> XSeries:
    """Exact polynomial quotient f/g.  Raises NotInImage when the
    remainder is certified nonzero and PrecisionLoss when it cannot be
    resolved at the given cutoff."""
    q, r = poly_divmod(f, g, cutoff)
    status, j = r.zero_status(cutoff)
    if status == "nonzero":
        raise NotInImage(f"division leaves certified-nonzero remainder at X^{j}")
    if status == "indeterminate":
        raise PrecisionLoss(f"remainder coefficient {j} unresolved at cutoff {cutoff}")
    return q


# -- cyclotomic levels ----------------------------------------------------


@lru_cache(maxsize=None)
def _phi_coeffs(p: int, k: int):
    if k < 1:
        raise InputError("phi_cyclo needs k >= 1")
    deg = (p - 1) * p ** (k - 1)
    out = [0] * (deg + 1)
    for i in range(p):
        e = i * p ** (k - 1)
        for j in range(e + 1):
            out[j] += math.comb(e, j)
    return tuple(out)


@lru_cache(maxsize=None)
def _omega_coeffs(p: int, n: int):
    if n < 0:
        raise InputError("omega needs n >= 0")
    e = p ** n
    out = [math.comb(e, j) for j in range(e + 1)]
    out[0] -= 1
    return tuple(out)


def phi_cyclo(ctx: PadicContext, k: int) -> XSeries:
    """Phi_{p^k}(1+X): sum of (1+X)^(i*p^(k-1)) over 0 <= i < p."""
    return XSeries.from_ints(ctx, _phi_coeffs(ctx.p, k))


def omega(ctx: PadicContext, n: int) -> XSeries:
    """(1+X)^(p^n) - 1, the level-n kernel polynomial."""
    return XSeries.from_ints(ctx, _omega_coeffs(ctx.p, n))


def phi_cyclo_ints(p: int, k: int):
    """Integer coefficient tuple of Phi_{p^k}(1+X)."""
    return _phi_coeffs(p, k)


def omega_ints(p: int, n: int):
    """Integer coefficient tuple of (1+X)^(p^n) - 1."""
    return _omega_coeffs(p, n)


class LambdaNElement:
    """Class in Z_p[X]/(omega_n), held as its degree-reduced representative."""

    __slots__ = ("ctx", "level", "rep")

    def __init__(self, ctx: PadicContext, level: int, rep: XSeries):
        if level < 0:
            raise InputError("level must be >= 0")
        if not rep.is_exact_poly:
            raise InputError("representative must be an exact polynomial")
        if len(rep.coeffs) > ctx.p ** level:
            raise InputError("representative not degree-reduced")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, name, value):
        raise AttributeError("LambdaNElement is immutable")

    def _check(self, other):
        if not isinstance(other, LambdaNElement):
            raise InputError("expected a LambdaNElement")
        if other.ctx != self.ctx or other.level != self.level:
            raise InputError("mixed levels or contexts")

    def __add__(self, other):
        if not isinstance(other, LambdaNElement):
            return NotImplemented
        self._check(other)
        return LambdaNElement(self.ctx, self.level, self.rep + other.rep)

    def __neg__(self):
        return LambdaNElement(self.ctx, self.level, -self.rep)

    def __sub__(self, other):
        if not isinstance(other, LambdaNElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LambdaNElement):
            return NotImplemented
        self._check(other)
        return reduce_mod_omega(self.rep * other.rep, self.level)

    def scale(self, a):
        return LambdaNElement(self.ctx, self.level, self.rep.scale(a))

    def project(self, m: int) -> "LambdaNElement":
        """Natural projection to a lower level m <= level."""
        if m > self.level:
            raise InputError("projection target above current level")
        return reduce_mod_omega(self.rep, m)

    def zero_status(self, cutoff: int = 1):
        return self.rep.zero_status(cutoff)

    def __eq__(self, other):
        if not isinstance(other, LambdaNElement):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.level == other.level
            and self.rep == other.rep
        )

    def __hash__(self):
        return hash((self.ctx, self.level, self.rep))

    def __repr__(self):
        return f"[{self.rep!r} mod omega_{self.level}]"


def reduce_mod_omega(f: XSeries, n: int) -> LambdaNElement:
    """Reduce an exact polynomial modulo omega_n."""
    if not f.is_exact_poly:
        raise PrecisionLoss("cannot reduce a truncated series modulo omega_n")
    w = omega(f.ctx, n)
    if len(f.coeffs) <= f.ctx.p ** n:
        return LambdaNElement(f.ctx, n, f)
    _, r = poly_divmod(f, w)
    return LambdaNElement(f.ctx, n, r)


def coefficient_valuation_profile(elem: LambdaNElement):
    """Per-block lower bounds on coefficient valuations.

    Block 0 is the constant term; block k covers degrees p^(k-1)..p^k-1.
    Zero representations contribute their absolute precision, so each
    entry is a certified lower bound, INF when the whole block is
    exactly zero.
    """
    p = elem.ctx.p
    n = elem.level
    bounds = []
    edges = [0, 1] + [p ** k for k in range(1, n + 1)]
    for b in range(n + 1):
        lo, hi = edges[b], edges[b + 1]
        best = INF
        for j in range(lo, min(hi, len(elem.rep.coeffs))):
            c = elem.rep.coeffs[j]
            val = c.prec if c.is_zero_rep else c.v
            best = min(best, val)
        bounds.append(best)
    return bounds


def invert_series(f: XSeries, T: int) -> XSeries:
    """Multiplicative inverse of f modulo X^T by the standard term
    recurrence; f(0) must be certified nonzero.  Denominator growth is
    bounded by the context budget, which raises if exceeded."""
    if f.trunc is not None and f.trunc < T:
        raise PrecisionLoss(f"need f mod X^{T}, have X^{f.trunc}")
    f0 = f.eval_at_zero()
    if f0.zero_status() != "nonzero":
        raise InputError("cannot invert a series with uncertified constant term")
    ctx = f.ctx
    f0_inv = f0.inv()
    out = [f0_inv]
    for j in range(1, T):
        acc = ctx.zero()
        for i in range(1, min(j, len(f.coeffs) - 1) + 1):
            acc = acc + f.coeffs[i] * out[j - i]
        out.append(-(f0_inv * acc))
    return XSeries(ctx, out, T)
