"""Matrix and polynomial utilities.

Two layers live here.  The generic layer works on any element type with
ring operator overloads (certified scalars, series, finite-level
classes, Fractions).  The exact layer works on Fractions and is the
decision engine: determinants, ranks, characteristic polynomials,
Newton polygons, and the two Z_(p)-aware routines (integral solve and
saturation) that the basis and factorization modules lean on.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import InputError, NotInImage, SingularOperator
from .padic import INF


# -- generic layer --------------------------------------------------------


def mat_shape(A):
    r = len(A)
    c = len(A[0]) if r else 0
    for row in A:
        if len(row) != c:
            raise InputError("ragged matrix")
    return r, c


def mat_mul(A, B):
    ra, ca = mat_shape(A)
    rb, cb = mat_shape(B)
    if ca != rb or ca == 0:
        raise InputError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    out = []
    for i in range(ra):
        row = []
        for j in range(cb):
            acc = A[i][0] * B[0][j]
            for k in range(1, ca):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A, v):
    return [r[0] for r in mat_mul(A, [[x] for x in v])]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_map(A, fn):
    return [[fn(a) for a in row] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def cofactor_det(A):
    """Laplace-expansion determinant; fine for the small sizes used here."""
    n, m = mat_shape(A)
    if n != m or n == 0:
        raise InputError("determinant needs a nonempty square matrix")
    if n == 1:
        return A[0][0]
    acc = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * cofactor_det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def mat_pow(A, e, identity):
    if e < 0:
        raise InputError("mat_pow needs e >= 0")
    out = identity
    base = A
    while e:
        if e & 1:
            out = mat_mul(out, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return out


# -- exact Fraction layer --------------------------------------------------


def frac_mat(rows):
    return [[Fraction(x) for x in row] for row in rows]


def frac_identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def vp_frac(q, p: int):
    """p-adic valuation of a rational; INF for zero."""
    q = Fraction(q)
    if q == 0:
        return INF
    v = 0
    n = q.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def fp_rank(rows, p: int) -> int:
    """Rank over the residue field F_p of a matrix of p-integral
    rationals."""
    M = []
    for row in rows:
        out = []
        for x in row:
            q = Fraction(x)
            if q.denominator % p == 0:
                raise InputError(f"entry {q} is not p-integral")
            out.append(q.numerator * pow(q.denominator, -1, p) % p)
        M.append(out)
    if not M:
        return 0
    rank = 0
    r = 0
    cols = len(M[0])
    for c in range(cols):
        piv = next((i for i in range(r, len(M)) if M[i][c] % p), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        rank += 1
        r += 1
        if r == len(M):
            break
    return rank


def frac_rank(A) -> int:
    M = [row[:] for row in frac_mat(A)]
    if not M:
        return 0
    rows, cols = len(M), len(M[0])
    rank = 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        rank += 1
        r += 1
        if r == rows:
            break
    return rank


def frac_det(A):
    M = [row[:] for row in frac_mat(A)]
    n = len(M)
    if n == 0 or any(len(row) != n for row in M):
        raise InputError("determinant needs a nonempty square matrix")
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return det


def frac_inv(A):
    M = [row[:] for row in frac_mat(A)]
    n = len(M)
    aug = [M[i] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise SingularOperator("matrix is not invertible")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def frac_solve(A, b):
    """Solve the square system A x = b over the rationals."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(bb)]
         for row, bb in zip(frac_mat(A), b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise SingularOperator("singular system")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]


def frac_nullspace(A):
    """Basis of the right kernel of A over the rationals."""
    M = [row[:] for row in frac_mat(A)]
    if not M:
        return []
    rows, cols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            vec[pc] = -M[ri][fc]
        basis.append(vec)
    return basis


def frac_charpoly(A):
    """det(x I - A) by the trace recurrence; returns [a_0, ..., a_d]
    with a_d = 1."""
    n = len(A)
    M = frac_mat(A)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    N = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # N <- A (N + a_{k-1} I); on the first pass N = A
        if k == 1:
            N = [row[:] for row in M]
        else:
            for i in range(n):
                N[i][i] += coeffs[n - k + 1]
            N = mat_mul(M, N)
        tr = sum(N[i][i] for i in range(n))
        coeffs[n - k] = -tr / k
    return coeffs


# -- Newton polygon --------------------------------------------------------


def newton_lower_hull(points):
    """Lower convex hull of (i, v(a_i)) pairs; INF entries are skipped.
    Returns the hull vertices sorted by abscissa."""
    finite = sorted((i, Fraction(v)) for i, v in points if v != INF)
    if len(finite) < 2:
        return finite
    hull = []
    for pt in finite:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # pop the middle point when it sits on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def hull_root_valuations(hull):
    """Root valuations with multiplicity: each hull segment of slope s
    and width w contributes w roots of valuation -s."""
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        w = x2 - x1
        slope = Fraction(y2 - y1, w)
        out.append((-slope, int(w)))
    return out


# -- Fraction polynomials --------------------------------------------------


def fpoly_trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def fpoly_add(f, g):
    n = max(len(f), len(g))
    return fpoly_trim([
        (f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)
        for i in range(n)
    ])


def fpoly_scale(f, a):
    a = Fraction(a)
    return fpoly_trim([a * c for c in f])


def fpoly_mul(f, g):
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return fpoly_trim(out)


def fpoly_divmod(f, g):
    """Division with remainder; g must have an invertible (nonzero)
    leading coefficient."""
    f = [Fraction(c) for c in fpoly_trim(f)]
    g = [Fraction(c) for c in fpoly_trim(g)]
    if not g:
        raise InputError("division by zero polynomial")
    dg = len(g) - 1
    lead = g[-1]
    q = [Fraction(0)] * max(len(f) - dg, 0)
    rem = f[:]
    for j in range(len(rem) - 1, dg - 1, -1):
        if rem[j] == 0:
            continue
        factor = rem[j] / lead
        q[j - dg] = factor
        for i in range(dg + 1):
            rem[j - dg + i] -= factor * g[i]
    return fpoly_trim(q), fpoly_trim(rem[:dg])


def fpoly_eval(f, x):
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * Fraction(x) + Fraction(c)
    return acc


# -- Z_(p) reductions ------------------------------------------------------


def _min_val_pivot(A, p, start_r, start_c, rows, cols):
    best = None
    for i in range(start_r, rows):
        for j in range(start_c, cols):
            if A[i][j] == 0:
                continue
            v = vp_frac(A[i][j], p)
            if best is None or v < best[0]:
                best = (v, i, j)
    return best


def smith_zp(A, p: int):
    """Diagonalize A over Z_(p) with unimodular (p-integral, unit
    determinant) transforms: returns dict with D = P A Q, P, Q, Qinv,
    and the list of (index, valuation) pivots.

    Min-valuation pivoting keeps every multiplier p-integral, so P, Q,
    Qinv all lie in GL over Z_(p).
    """
    D = [row[:] for row in frac_mat(A)]
    rows = len(D)
    cols = len(D[0]) if rows else 0
    P = frac_identity(rows)
    Q = frac_identity(cols)
    Qinv = frac_identity(cols)
    pivots = []
    k = 0
    while k < min(rows, cols):
        found = _min_val_pivot(D, p, k, k, rows, cols)
        if found is None:
            break
        v, pi, pj = found
        if pi != k:
            D[k], D[pi] = D[pi], D[k]
            P[k], P[pi] = P[pi], P[k]
        if pj != k:
            for row in D:
                row[k], row[pj] = row[pj], row[k]
            for row in Q:
                row[k], row[pj] = row[pj], row[k]
            Qinv[k], Qinv[pj] = Qinv[pj], Qinv[k]
        piv = D[k][k]
        for i in range(k + 1, rows):
            if D[i][k] != 0:
                f = D[i][k] / piv
                D[i] = [x - f * y for x, y in zip(D[i], D[k])]
                P[i] = [x - f * y for x, y in zip(P[i], P[k])]
        for j in range(k + 1, cols):
            if D[k][j] != 0:
                g = D[k][j] / piv
                # col_j -= g * col_k mirrors as Qinv row_k += g * row_j
                for row in D:
                    row[j] -= g * row[k]
                for row in Q:
                    row[j] -= g * row[k]
                Qinv[k] = [x + g * y for x, y in zip(Qinv[k], Qinv[j])]
        pivots.append((k, v))
        k += 1
    return {"D": D, "P": P, "Q": Q, "Qinv": Qinv, "pivots": pivots}


def zp_solve_integral(columns, target, p: int):
    """Find x with sum_i x_i * columns[i] = target and every x_i
    p-integral, or raise NotInImage.  Exact Fraction arithmetic."""
    if not columns:
        raise InputError("no columns given")
    n = len(columns[0])
    A = [[Fraction(columns[j][i]) for j in range(len(columns))]
         for i in range(n)]
    b = [Fraction(t) for t in target]
    snf = smith_zp(A, p)
    D, P, Q = snf["D"], snf["P"], snf["Q"]
    rank = len(snf["pivots"])
    Pb = [sum(P[i][j] * b[j] for j in range(n)) for i in range(n)]
    y = [Fraction(0)] * len(columns)
    for k in range(rank):
        y[k] = Pb[k] / D[k][k]
        if vp_frac(y[k], p) < 0:
            raise NotInImage(
                f"solution needs p^{vp_frac(y[k], p)} at pivot {k}"
            )
    for i in range(rank, n):
        if Pb[i] != 0:
            raise NotInImage(f"inconsistent row {i}: residual {Pb[i]}")
    x = [sum(Q[i][k] * y[k] for k in range(len(columns)))
         for i in range(len(columns))]
    for i, xi in enumerate(x):
        if vp_frac(xi, p) < 0:
            raise NotInImage(f"coefficient {i} is not p-integral: {xi}")
    return x


def zp_saturate(rows_in, p: int):
    """Basis of the saturation of the row span inside Z_(p)^n: returns
    integer rows with unit elementary divisors spanning the same
    rational subspace."""
    W = frac_mat(rows_in)
    if not W:
        return []
    snf = smith_zp(W, p)
    basis = [snf["Qinv"][k] for k, _ in snf["pivots"]]
    out = []
    for row in basis:
        den = lcm(*(x.denominator for x in row)) if row else 1
        if den % p == 0:
            raise InputError("saturation produced a non-unit denominator")
        out.append([int(x * den) for x in row])
    return out
