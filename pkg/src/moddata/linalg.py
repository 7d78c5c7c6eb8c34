"""Small exact matrices over cyclotomic fields.

Matrices are immutable tuples of tuples of CycloNum.  Everything here is
sized for the index sets of modular data (at most a few dozen rows), so
the algorithms are straightforward cubic ones.
"""

from __future__ import annotations

from math import lcm

from . import cyclo
from .cyclo import CycloNum
from .errors import NonInvertibleInput


def mat_identity(m: int, conductor: int = 1) -> tuple:
    one = cyclo.one(conductor)
    z = cyclo.zero(conductor)
    return tuple(
        tuple(one if i == j else z for j in range(m)) for i in range(m)
    )


def mat_mul(a, b) -> tuple:
    m = len(a)
    inner = len(b)
    cols = len(b[0])
    out = []
    for i in range(m):
        ai = a[i]
        row = []
        for j in range(cols):
            acc = ai[0] * b[0][j]
            for k in range(1, inner):
                acc = acc + ai[k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_mul_diag(a, diag) -> tuple:
    """Right-multiplication by a diagonal matrix, given as a vector."""
    return tuple(
        tuple(x * diag[j] for j, x in enumerate(row)) for row in a
    )


def mat_scale(a, c) -> tuple:
    return tuple(tuple(x * c for x in row) for row in a)


def mat_eq(a, b) -> bool:
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        for x, y in zip(ra, rb):
            if x != y:
                return False
    return True


def mat_transpose(a) -> tuple:
    return tuple(tuple(row[i] for row in a) for i in range(len(a[0])))


def diag_matrix(entries) -> tuple:
    m = len(entries)
    z = cyclo.zero(1)
    return tuple(
        tuple(entries[i] if i == j else z for j in range(m)) for i in range(m)
    )


def perm_matrix(perm, conductor: int = 1) -> tuple:
    """Permutation matrix with entry 1 at (perm[j], j)."""
    m = len(perm)
    one = cyclo.one(conductor)
    z = cyclo.zero(conductor)
    return tuple(
        tuple(one if i == perm[j] else z for j in range(m)) for i in range(m)
    )


def common_conductor(*matrices) -> int:
    m = 1
    for a in matrices:
        for row in a:
            for x in row:
                m = lcm(m, x.conductor)
    return m


def mat_lift(a, conductor: int) -> tuple:
    return tuple(
        tuple(x.lift(conductor) for x in row) for row in a
    )


def mat_key(a) -> tuple:
    """Hashable key of a matrix whose entries share one conductor."""
    return tuple(tuple(x.coeffs for x in row) for row in a)


def mat_inverse(a) -> tuple:
    """Exact inverse by Gauss-Jordan elimination.

    Raises NonInvertibleInput on a singular matrix.
    """
    m = len(a)
    conductor = common_conductor(a)
    work = [list(row) for row in mat_lift(a, conductor)]
    inv = [list(row) for row in mat_identity(m, conductor)]
    for col in range(m):
        pivot = None
        for r in range(col, m):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            raise NonInvertibleInput("matrix is singular")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = work[col][col].inverse()
        work[col] = [x * scale for x in work[col]]
        inv[col] = [x * scale for x in inv[col]]
        for r in range(m):
            if r == col or not work[r][col]:
                continue
            factor = work[r][col]
            work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
            inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)
