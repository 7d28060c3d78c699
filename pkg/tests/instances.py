"""Deterministic test fixtures: admitted instances and helpers.

Random instances are produced by seeded rejection sampling against the
admission gate, so a fixed seed always yields the same matrix.
"""

from __future__ import annotations

import random

from padlog import FrobeniusData, PadicContext, check_hypotheses


def pollack_fd(p: int = 3, rel_prec: int = 20,
               denom_budget: int = 24) -> FrobeniusData:
    ctx = PadicContext(p, rel_prec=rel_prec, denom_budget=denom_budget)
    return FrobeniusData.create(ctx, [[0, -1], [1, 0]], d0=1, r=1)


INTERLEAVED_GL4 = [
    [0, 0, -1, 0],
    [0, 0, 0, -1],
    [1, 0, 0, 0],
    [0, 1, 0, 0],
]


def interleaved_gl4(p: int = 3, rel_prec: int = 20,
                    denom_budget: int = 24) -> FrobeniusData:
    """Two antidiagonal blocks woven together; all slopes are -1/2."""
    ctx = PadicContext(p, rel_prec=rel_prec, denom_budget=denom_budget)
    return FrobeniusData.create(ctx, INTERLEAVED_GL4, d0=2, r=1)


def random_instance(p: int, size: int, d0: int, seed: int,
                    rel_prec: int = 20,
                    denom_budget: int = 24) -> FrobeniusData:
    """First gate-passing matrix in a seeded stream of candidates."""
    rng = random.Random(f"{p}-{size}-{d0}-{seed}")
    ctx = PadicContext(p, rel_prec=rel_prec, denom_budget=denom_budget)
    for _ in range(5000):
        C = [[rng.randrange(-6, 7) for _ in range(size)]
             for _ in range(size)]
        fd = FrobeniusData.create(ctx, C, d0=d0, r=1, force=True)
        if check_hypotheses(fd).ok:
            return fd
    raise AssertionError(
        f"no admitted instance found for p={p}, size={size}, seed={seed}")


def random_polynomial_vector(fd, rng, max_deg: int = 4):
    """A random coefficient vector of exact small polynomials."""
    from padlog import XSeries

    return [
        XSeries.from_ints(
            fd.ctx,
            [rng.randrange(-9, 10) for _ in range(rng.randrange(1, max_deg))],
        )
        for _ in range(fd.size)
    ]


def random_adapted_B(fd, rng):
    """A random filtration-adapted basis change: block upper triangular
    over Z_p with unit-determinant diagonal blocks."""
    g, f = fd.size, fd.fil_dim

    def unit_block(k):
        while True:
            M = [[rng.randrange(-4, 5) for _ in range(k)] for _ in range(k)]
            det = _det_int(M)
            if det != 0 and det % fd.ctx.p != 0:
                return M

    top = unit_block(f)
    bottom = unit_block(g - f)
    corner = [[rng.randrange(-4, 5) for _ in range(g - f)] for _ in range(f)]
    B = [[0] * g for _ in range(g)]
    for i in range(f):
        for j in range(f):
            B[i][j] = top[i][j]
        for j in range(g - f):
            B[i][f + j] = corner[i][j]
    for i in range(g - f):
        for j in range(g - f):
            B[f + i][f + j] = bottom[i][j]
    return B


def _det_int(M) -> int:
    n = len(M)
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        minor = [[M[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = M[0][j] * _det_int(minor)
        total += -term if j % 2 else term
    return total
