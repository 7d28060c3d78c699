"""Logarithmic matrix approximants.

From an admitted Frobenius matrix C (p-integral, unit determinant) the
tower of approximants is built as

    C_phi = C * diag(I, (1/p) I)
    C_k   = diag(I, Phi_{p^k}(1+X) I) * C^{-1}
    M_n   = C_phi^(n+1) * C_n * ... * C_1

with the unscaled block of size r*d0 and the scaled block of size
r*(d-d0).  The admission gate checks the Newton-polygon slope window
(-1, 0], that 1 is not an eigenvalue, and that det(C) is a unit.

The tower satisfies, and this module verifies: M_n(0) = C_phi,
M_m = M_n mod omega_n, the exact closed-form determinant, and the
coefficient valuation bound (n+1) * minval(C_phi).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DenominatorBudgetExceeded,
    HypothesisFailed,
    Indeterminate,
    InputError,
    NotFiltrationAdapted,
    NotInImage,
    SingularOperator,
)
from .linalg import (
    cofactor_det,
    frac_det,
    frac_identity,
    frac_inv,
    frac_mat,
    frac_charpoly,
    frac_rank,
    hull_root_valuations,
    mat_mul,
    newton_lower_hull,
    vp_frac,
    zp_solve_integral,
)
from .padic import INF, PadicContext
from .series import LambdaNElement, XSeries, phi_cyclo, reduce_mod_omega


# -- admission gate --------------------------------------------------------


@dataclass(frozen=True)
class HypothesisReport:
    charpoly: tuple
    hull: tuple
    root_valuations: tuple
    det_C: Fraction
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self):
        return {
            "charpoly": [str(c) for c in self.charpoly],
            "newton_hull": [[str(x), str(y)] for x, y in self.hull],
            "root_valuations": [
                [str(v), m] for v, m in self.root_valuations
            ],
            "det_C": str(self.det_C),
            "failures": list(self.failures),
            "ok": self.ok,
        }


@dataclass(frozen=True)
class FrobeniusData:
    """Admitted Frobenius input: the matrix C with block sizes.

    size = r*d total, fil_dim = r*d0 unscaled coordinates (the Fil^0
    block is spanned by the first fil_dim standard vectors).
    """

    ctx: PadicContext
    d: int
    d0: int
    r: int
    C: tuple

    @property
    def size(self) -> int:
        return self.r * self.d

    @property
    def fil_dim(self) -> int:
        return self.r * self.d0

    @property
    def scaled_dim(self) -> int:
        return self.size - self.fil_dim

    def C_frac(self):
        return [list(row) for row in self.C]

    def C_phi_frac(self):
        g = self.size
        f = self.fil_dim
        return [
            [self.C[i][j] if j < f else self.C[i][j] / self.ctx.p
             for j in range(g)]
            for i in range(g)
        ]

    def C_inv_frac(self):
        return frac_inv(self.C_frac())

    def min_val_C_phi(self):
        vals = [vp_frac(x, self.ctx.p)
                for row in self.C_phi_frac() for x in row]
        return min(vals)

    @classmethod
    def create(cls, ctx, C_rows, d0, r: int = 1, force: bool = False):
        C = tuple(tuple(Fraction(x) for x in row) for row in C_rows)
        g = len(C)
        if g == 0 or any(len(row) != g for row in C):
            raise InputError("C must be a nonempty square matrix")
        if r < 1 or g % r != 0:
            raise InputError(f"r={r} does not divide the matrix size {g}")
        d = g // r
        if not (0 <= d0 <= d):
            raise InputError(f"d0={d0} outside 0..{d}")
        fd = cls(ctx=ctx, d=d, d0=d0, r=r, C=C)
        report = check_hypotheses(fd)
        if not report.ok and not force:
            raise HypothesisFailed(
                "; ".join(report.failures), report=report
            )
        return fd

    def to_record(self):
        return {
            "p": self.ctx.p,
            "d": self.d,
            "d0": self.d0,
            "r": self.r,
            "C": [[str(x) for x in row] for row in self.C],
            "rel_prec": self.ctx.rel_prec,
            "denom_budget": self.ctx.denom_budget,
        }


def check_hypotheses(fd: FrobeniusData) -> HypothesisReport:
    """Admission checks on C and C_phi: p-integrality, unit determinant,
    slope window (-1, 0], and 1 not an eigenvalue."""
    p = fd.ctx.p
    failures = []
    if any(vp_frac(x, p) < 0 for row in fd.C for x in row):
        failures.append("C is not p-integral")
    det_C = frac_det(fd.C_frac())
    if vp_frac(det_C, p) != 0:
        failures.append(f"det(C) = {det_C} is not a p-adic unit")
    cphi = fd.C_phi_frac()
    cp = frac_charpoly(cphi)
    points = [(i, vp_frac(a, p)) for i, a in enumerate(cp)]
    hull = newton_lower_hull(points)
    roots = hull_root_valuations(hull)
    for val, mult in roots:
        if not (Fraction(-1) < val <= 0):
            failures.append(
                f"eigenvalue valuation {val} (x{mult}) outside (-1, 0]"
            )
    shifted = [[cphi[i][j] - Fraction(int(i == j)) for j in range(fd.size)]
               for i in range(fd.size)]
    if frac_det(shifted) == 0:
        failures.append("1 is an eigenvalue of C_phi")
    return HypothesisReport(
        charpoly=tuple(cp),
        hull=tuple(hull),
        root_valuations=tuple(roots),
        det_C=det_C,
        failures=tuple(failures),
    )


# -- tower construction ----------------------------------------------------


def _embed_matrix(ctx, M):
    """Fraction matrix -> matrix of constant exact polynomials."""
    return [[XSeries.from_fractions(ctx, [x]) for x in row] for row in M]


def build_Cn(fd: FrobeniusData, n: int):
    """C_n = diag(I, Phi_{p^n}(1+X) I) * C^{-1} over exact polynomials."""
    if n < 1:
        raise InputError("build_Cn needs n >= 1")
    ctx = fd.ctx
    phi = phi_cyclo(ctx, n)
    cinv = fd.C_inv_frac()
    out = []
    for i in range(fd.size):
        row = []
        for j in range(fd.size):
            e = XSeries.from_fractions(ctx, [cinv[i][j]])
            if i >= fd.fil_dim:
                e = e * phi
            row.append(e)
        out.append(row)
    return out


class LogMatrixApprox:
    """Level-n approximant: the raw polynomial matrix and its reduction
    modulo omega_n."""

    __slots__ = ("fd", "n", "raw", "reduced")

    def __init__(self, fd, n, raw, reduced):
        self.fd = fd
        self.n = n
        self.raw = raw
        self.reduced = reduced


def build_Mn(fd: FrobeniusData, n: int) -> LogMatrixApprox:
    """M_n = C_phi^(n+1) * C_n ... C_1, exact, plus its omega_n class."""
    if n < 0:
        raise InputError("build_Mn needs n >= 0")
    ctx = fd.ctx
    need = (n + 1) * max(0, -fd.min_val_C_phi())
    if need > ctx.denom_budget:
        raise DenominatorBudgetExceeded(
            f"level {n} needs denominator budget {need}, "
            f"context allows {ctx.denom_budget}"
        )
    acc = _embed_matrix(ctx, frac_identity(fd.size))
    for k in range(1, n + 1):
        acc = mat_mul(build_Cn(fd, k), acc)
    cphi = _embed_matrix(ctx, fd.C_phi_frac())
    for _ in range(n + 1):
        acc = mat_mul(cphi, acc)
    reduced = [[reduce_mod_omega(e, n) for e in row] for row in acc]
    return LogMatrixApprox(fd, n, acc, reduced)


# -- verification ----------------------------------------------------------


def evaluate_at_zero(approx: LogMatrixApprox):
    return [[e.eval_at_zero() for e in row] for row in approx.raw]


def check_evaluation(approx: LogMatrixApprox, cutoff: int = 1):
    """M_n(0) = C_phi: compare the constant terms against the exact
    embedding entry by entry."""
    ctx = approx.fd.ctx
    target = approx.fd.C_phi_frac()
    witness = None
    for i, row in enumerate(approx.raw):
        for j, e in enumerate(row):
            diff = e.eval_at_zero() - ctx.from_rational(target[i][j])
            st = diff.zero_status(cutoff)
            if st == "nonzero":
                return {"ok": False, "witness": (i, j, repr(diff))}
            if st == "indeterminate" and witness is None:
                witness = (i, j, repr(diff))
    if witness is not None:
        raise Indeterminate(
            f"evaluation check unresolved at {witness[:2]}", witness
        )
    return {"ok": True, "witness": None}


def stabilization_defect(lo: LogMatrixApprox, hi: LogMatrixApprox):
    """Entrywise omega_lo-reduction of hi.raw - lo.raw."""
    if lo.fd != hi.fd:
        raise InputError("approximants from different data")
    if hi.n < lo.n:
        lo, hi = hi, lo
    n = lo.n
    return [
        [reduce_mod_omega(eh - el, n) for eh, el in zip(rh, rl)]
        for rh, rl in zip(hi.raw, lo.raw)
    ]


def verify_stabilization(fd, n: int, m: int, cutoff: int = 1) -> bool:
    """True iff M_m = M_n mod omega_n with every coefficient certified.
    Raises Indeterminate when certification falls short."""
    if not (1 <= n <= m):
        raise InputError("need 1 <= n <= m")
    lo = build_Mn(fd, n)
    hi = lo if m == n else build_Mn(fd, m)
    defect = stabilization_defect(lo, hi)
    pending = None
    for i, row in enumerate(defect):
        for j, e in enumerate(row):
            st, idx = e.zero_status(cutoff)
            if st == "nonzero":
                return False
            if st == "indeterminate" and pending is None:
                pending = (i, j, idx)
    if pending is not None:
        raise Indeterminate(
            f"stabilization unresolved at entry {pending[:2]}, "
            f"coefficient {pending[2]}",
            pending,
        )
    return True


def det_closed_form(fd: FrobeniusData, n: int) -> XSeries:
    """det(C) * p^-(n+1)s * prod_{k<=n} Phi_{p^k}^s, s = scaled block size."""
    ctx = fd.ctx
    s = fd.scaled_dim
    det_C = frac_det(fd.C_frac())
    scale = det_C * Fraction(1, ctx.p ** ((n + 1) * s))
    out = XSeries.from_fractions(ctx, [scale])
    for k in range(1, n + 1):
        phi = phi_cyclo(ctx, k)
        for _ in range(s):
            out = out * phi
    return out


def det_Mn(fd: FrobeniusData, n: int, cutoff: int = 1):
    """Exact determinant of M_n and comparison with the closed form,
    both raw and modulo omega_n."""
    approx = build_Mn(fd, n)
    det_raw = cofactor_det(approx.raw)
    closed = det_closed_form(fd, n)
    diff = det_raw - closed
    st_raw, wit_raw = diff.zero_status(cutoff)
    reduced_diff = reduce_mod_omega(diff, n)
    st_red, wit_red = reduced_diff.zero_status(cutoff)
    report = {
        "n": n,
        "det": det_raw,
        "closed_form": closed,
        "raw_match": st_raw == "zero",
        "reduced_match": st_red == "zero",
        "witness": wit_raw if st_raw == "nonzero" else None,
    }
    if st_raw == "indeterminate" or st_red == "indeterminate":
        raise Indeterminate(
            f"determinant comparison unresolved at coefficient "
            f"{wit_raw if st_raw == 'indeterminate' else wit_red}",
            report,
        )
    return report


def min_coeff_valuation(approx: LogMatrixApprox):
    """Observed minimum coefficient valuation of the raw matrix against
    the guaranteed bound (n+1)*minval(C_phi)."""
    observed = INF
    for row in approx.raw:
        for e in row:
            for c in e.coeffs:
                v = c.prec if c.is_zero_rep else c.v
                observed = min(observed, v)
    bound = (approx.n + 1) * min(0, approx.fd.min_val_C_phi())
    return {"observed": observed, "bound": bound,
            "ok": observed >= bound}


# -- basis change ----------------------------------------------------------


def _validate_adapted(fd: FrobeniusData, B):
    p = fd.ctx.p
    B = frac_mat(B)
    if len(B) != fd.size or any(len(row) != fd.size for row in B):
        raise InputError(f"B must be {fd.size}x{fd.size}")
    if any(vp_frac(x, p) < 0 for row in B for x in row):
        raise NotFiltrationAdapted("B is not p-integral")
    if vp_frac(frac_det(B), p) != 0:
        raise NotFiltrationAdapted("det(B) is not a unit")
    for i in range(fd.fil_dim, fd.size):
        for j in range(fd.fil_dim):
            if B[i][j] != 0:
                raise NotFiltrationAdapted(
                    f"lower-left block entry ({i}, {j}) is nonzero"
                )
    return B


def conjugated_instance(fd: FrobeniusData, B) -> FrobeniusData:
    """The instance whose Frobenius matrix is B C_phi B^{-1} (read off
    through C_w = B C_phi B^{-1} diag(I, p))."""
    B = _validate_adapted(fd, B)
    middle = mat_mul(mat_mul(B, fd.C_phi_frac()), frac_inv(B))
    C_w = [
        [middle[i][j] * (1 if j < fd.fil_dim else fd.ctx.p)
         for j in range(fd.size)]
        for i in range(fd.size)
    ]
    return FrobeniusData.create(fd.ctx, C_w, fd.d0, fd.r)


def log_matrix_in_basis(approx: LogMatrixApprox, B):
    """The conjugation-defined transport B M_n B^{-1} of an approximant
    (the definitional construction for a new basis)."""
    ctx = approx.fd.ctx
    Bq = frac_mat(B)
    left = _embed_matrix(ctx, Bq)
    right = _embed_matrix(ctx, frac_inv(Bq))
    return mat_mul(left, mat_mul(approx.raw, right))


def conjugate_basis_check(fd: FrobeniusData, B, levels=(1, 2),
                          cutoff: int = 1):
    """Compare B M_{n,v} B^{-1} with the approximant rebuilt from the
    conjugated instance, exactly and modulo omega_n, per level.

    Returns a report; raises NotFiltrationAdapted when B lacks the
    adapted block form.
    """
    fd_w = conjugated_instance(fd, B)
    per_level = {}
    all_exact = True
    all_mod = True
    for n in levels:
        mv = build_Mn(fd, n)
        mw = build_Mn(fd_w, n)
        transported = log_matrix_in_basis(mv, B)
        exact_ok = True
        mod_ok = True
        witness = None
        for i in range(fd.size):
            for j in range(fd.size):
                diff = transported[i][j] - mw.raw[i][j]
                st, idx = diff.zero_status(cutoff)
                if st == "indeterminate":
                    raise Indeterminate(
                        f"conjugation comparison unresolved at level {n}, "
                        f"entry ({i}, {j}), coefficient {idx}"
                    )
                if st == "nonzero":
                    exact_ok = False
                    rst, ridx = reduce_mod_omega(diff, n).zero_status(cutoff)
                    if rst == "indeterminate":
                        raise Indeterminate(
                            f"reduced conjugation comparison unresolved at "
                            f"level {n}, entry ({i}, {j}), coefficient {ridx}"
                        )
                    if rst == "nonzero":
                        mod_ok = False
                        if witness is None:
                            witness = (i, j, ridx)
        per_level[n] = {
            "exact": exact_ok,
            "mod_omega": mod_ok,
            "witness": witness,
        }
        all_exact = all_exact and exact_ok
        all_mod = all_mod and mod_ok
    return {
        "adapted": True,
        "levels": per_level,
        "all_exact": all_exact,
        "all_mod_omega": all_mod,
        "ok": all_exact,
        "conjugated_C": fd_w.C,
    }


# -- image condition at zero -----------------------------------------------


class ImageConditionResult:
    """Membership verdict plus the pseudo-surjectivity rank criterion."""

    __slots__ = ("membership", "finite_index", "details")

    def __init__(self, membership, finite_index, details):
        self.membership = membership
        self.finite_index = finite_index
        self.details = details

    def __bool__(self):
        return self.membership

    def __repr__(self):
        return (f"ImageConditionResult(membership={self.membership}, "
                f"finite_index={self.finite_index})")


def image_condition_at_zero(fd: FrobeniusData, I, w,
                            trivial_character: bool = False):
    """Test whether w lies in the projected image lattice U_I.

    U_I = pr_I((1-phi)(1-phi/p)^{-1} Fil0) in the trivial-character
    case, pr_I(Fil0) otherwise, with Fil0 spanned by the first fil_dim
    standard vectors.  Membership is an exact p-integral linear solve;
    the finite-index flag reports whether pr_I restricted to the
    transported Fil0 has full rank |I|.
    """
    g = fd.size
    I = sorted(set(I))
    if not I or I[0] < 1 or I[-1] > g:
        raise InputError(f"index set must be a nonempty subset of 1..{g}")
    w = [Fraction(x) for x in w]
    if len(w) != len(I):
        raise InputError(f"w must have {len(I)} coordinates (one per index)")
    fil = [[Fraction(int(i == k)) for i in range(g)]
           for k in range(fd.fil_dim)]
    if trivial_character:
        phi = fd.C_phi_frac()
        one_minus_phi = [
            [Fraction(int(i == j)) - phi[i][j] for j in range(g)]
            for i in range(g)
        ]
        one_minus_phi_over_p = [
            [Fraction(int(i == j)) - phi[i][j] / fd.ctx.p for j in range(g)]
            for i in range(g)
        ]
        if frac_det(one_minus_phi) == 0:
            raise SingularOperator("1 - phi is singular")
        if frac_det(one_minus_phi_over_p) == 0:
            raise SingularOperator("1 - phi/p is singular")
        inv = frac_inv(one_minus_phi_over_p)
        op = mat_mul(one_minus_phi, inv)
        transported = [
            [sum(op[i][k] * v[k] for k in range(g)) for i in range(g)]
            for v in fil
        ]
    else:
        transported = fil
    columns = [[v[i - 1] for i in I] for v in transported]
    try:
        coeffs = zp_solve_integral(columns, w, fd.ctx.p)
        membership = True
    except NotInImage:
        coeffs = None
        membership = False
    proj_rank = frac_rank([[col[i] for col in columns]
                           for i in range(len(I))])
    finite_index = proj_rank == len(I)
    stack = [[Fraction(int(idx - 1 == i)) for i in range(g)] for idx in I]
    stack += [[Fraction(int(j == i)) for i in range(g)]
              for j in range(fd.fil_dim, g)]
    dual_ok = frac_rank(stack) == len(stack)
    return ImageConditionResult(
        membership,
        finite_index,
        {
            "I": I,
            "trivial_character": trivial_character,
            "coefficients": coeffs,
            "projected_rank": proj_rank,
            "dual_intersection_trivial": dual_ok,
        },
    )
