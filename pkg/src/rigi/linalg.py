"""Exact linear algebra over the integers and over prime fields.

Matrices are plain lists of rows of Python ints. Nothing here touches
floating point.
"""

from __future__ import annotations

from typing import List, Sequence

Matrix = List[List[int]]

# 2**61 - 1 is a Mersenne prime.
PRIME = (1 << 61) - 1


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix, by fraction-free (Bareiss) elimination."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(work)):
            if work[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        p = work[rank][col]
        for i in range(rank + 1, len(work)):
            a = work[i][col]
            row = work[i]
            prow = work[rank]
            for j in range(col, ncols):
                # exact division is the Bareiss invariant
                row[j] = (p * row[j] - a * prow[j]) // prev
        prev = p
        rank += 1
        if rank == len(work):
            break
    return rank


def rank_mod(rows: Sequence[Sequence[int]], p: int = PRIME) -> int:
    """Rank of a matrix over GF(p)."""
    return len(_echelon_mod([list(r) for r in rows], p)[1])


def _echelon_mod(work: Matrix, p: int):
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    for row in work:
        for j, x in enumerate(row):
            row[j] = x % p
    ncols = len(work[0]) if work else 0
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        if r == len(work):
            break
        pivot = None
        for i in range(r, len(work)):
            if work[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = pow(work[r][col], p - 2, p)
        prow = [(x * inv) % p for x in work[r]]
        work[r] = prow
        for i in range(len(work)):
            if i != r and work[i][col]:
                f = work[i][col]
                row = work[i]
                for j in range(col, ncols):
                    if prow[j]:
                        row[j] = (row[j] - f * prow[j]) % p
        pivots.append(col)
        r += 1
    return work, pivots


def nullspace_mod(rows: Sequence[Sequence[int]], ncols: int, p: int = PRIME) -> Matrix:
    """Basis of the right kernel {x : A x = 0} over GF(p)."""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    work, pivots = _echelon_mod([list(r) for r in rows], p)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-work[i][free]) % p
        basis.append(vec)
    return basis


def det_mod(rows: Sequence[Sequence[int]], p: int = PRIME) -> int:
    """Determinant of a square matrix over GF(p)."""
    work = [[x % p for x in r] for r in rows]
    n = len(work)
    det = 1
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if work[i][col]:
                pivot = i
                break
        if pivot is None:
            return 0
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        pv = work[col][col]
        det = (det * pv) % p
        inv = pow(pv, p - 2, p)
        for i in range(col + 1, n):
            f = (work[i][col] * inv) % p
            if f:
                row = work[i]
                prow = work[col]
                for j in range(col, n):
                    row[j] = (row[j] - f * prow[j]) % p
    return det % p


def mat_vec_mod(rows: Sequence[Sequence[int]], vec: Sequence[int], p: int = PRIME) -> List[int]:
    return [sum(a * b for a, b in zip(r, vec)) % p for r in rows]


def inv_mod(x: int, p: int = PRIME) -> int:
    x %= p
    if x == 0:
        raise ZeroDivisionError("zero has no inverse mod p")
    return pow(x, p - 2, p)


def interpolate_mod(xs: Sequence[int], ys: Sequence[int], p: int = PRIME) -> List[int]:
    """Lagrange interpolation; coefficients low degree first."""
    n = len(xs)
    coeffs = [0] * n
    for i in range(n):
        # numerator polynomial prod_{j != i} (x - x_j)
        num = [1]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            num = [((num[k - 1] if k > 0 else 0) - xs[j] * (num[k] if k < len(num) else 0)) % p
                   for k in range(len(num) + 1)]
            denom = (denom * (xs[i] - xs[j])) % p
        scale = ys[i] * inv_mod(denom, p) % p
        for k in range(n):
            coeffs[k] = (coeffs[k] + scale * num[k]) % p
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def roots_mod(coeffs: Sequence[int], p: int = PRIME) -> List[int]:
    """All roots in GF(p) of the polynomial with the given (low-first) coefficients."""
    from sympy.polys.domains import ZZ
    from sympy.polys.galoistools import gf_factor_sqf, gf_monic, gf_sqf_part, gf_strip

    f = gf_strip([int(c) % p for c in reversed(coeffs)])
    if len(f) <= 1:
        return []
    f = gf_sqf_part(gf_monic(f, p, ZZ)[1], p, ZZ)
    _, factors = gf_factor_sqf(f, p, ZZ)
    return sorted(int((-fac[1]) % p) for fac in factors if len(fac) == 2)
