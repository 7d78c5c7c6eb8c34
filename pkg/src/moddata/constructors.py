"""Concrete modular data and number-theoretic generators.

Provides the cyclic datum attached to the nonstandard R-matrix on an
odd-order cyclic group ring, the two-label semion datum, classical
quadratic Gauss sums with their square table, and the standard
3-cocycle on a cyclic group together with a generic cocycle checker.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import cyclo
from .cyclo import CycloNum, root_of_unity
from .datum import ModularDatum
from .errors import EvenOrder, NotAUnit
from .report import CheckReport


def radford_datum(n: int, zeta_exponent: int = 1) -> ModularDatum:
    """Cyclic datum of odd order n: labels Z_n with a* = -a, Verlinde
    entries z^(-2ab) and Dehn entries z^(a^2), all dimensions 1.

    Its Gaussian sum is the classical quadratic Gauss sum.  The
    construction only exists for odd n.  zeta_exponent selects the
    primitive root used; other choices give Galois-conjugate data.
    """
    n = int(n)
    if n < 1 or n % 2 == 0:
        raise EvenOrder(f"cyclic datum requires odd positive order, got {n}")
    if gcd(zeta_exponent, n) != 1:
        raise NotAUnit(f"{zeta_exponent} is not a unit modulo {n}")
    e = zeta_exponent % n
    labels = tuple(str(a) for a in range(n))
    star = tuple((-a) % n for a in range(n))
    s_matrix = tuple(
        tuple(root_of_unity(n, (-2 * a * b * e) % n) for b in range(n))
        for a in range(n)
    )
    t_diag = tuple(root_of_unity(n, (a * a * e) % n) for a in range(n))
    return ModularDatum(
        labels=labels, unit="0", star=star, s_matrix=s_matrix, t_diag=t_diag
    )


def trivial_datum() -> ModularDatum:
    return radford_datum(1)


def semion_datum() -> ModularDatum:
    """Two labels, identity involution, S = [[1,1],[1,-1]], T = diag(1, i).

    Exponent 4, global dimension 2; the smallest datum whose squared
    Gaussian sum differs in sign from the squared reciprocal sum.
    """
    one = cyclo.one(1)
    i4 = root_of_unity(4, 1)
    return ModularDatum(
        labels=("0", "1"),
        unit="0",
        star=(0, 1),
        s_matrix=((one, one), (one, -one)),
        t_diag=(one, i4),
    )


def classical_gauss_sum(n: int, multiplier: int = 1) -> CycloNum:
    """Quadratic Gauss sum: the sum of z^(multiplier * i^2) over i < n,
    with z the fixed primitive n-th root of unity."""
    n = int(n)
    if n < 1:
        raise ValueError(f"need a positive modulus, got {n}")
    if gcd(multiplier, n) != 1:
        raise NotAUnit(f"{multiplier} is not a unit modulo {n}")
    acc = cyclo.zero(n)
    for i in range(n):
        acc = acc + root_of_unity(n, (multiplier * i * i) % n)
    return acc


def verify_gauss_lemma(n: int) -> CheckReport:
    """Square table of the classical Gauss sum by residue of n mod 4,
    the product with the reciprocal sum, and (for odd n) the twist of
    the sum by each unit against the Jacobi symbol."""
    rep = CheckReport(f"gauss-sum-laws-{n}")
    g = classical_gauss_sum(n)
    g_rec = classical_gauss_sum(n, n - 1) if n > 1 else classical_gauss_sum(1)
    g2 = g * g
    r = n % 4
    if r == 0:
        two_i_n = 2 * n * root_of_unity(4, 1)
        rep.add("square-table", g2 == two_i_n or g2 == -two_i_n, value=g2)
    elif r == 1:
        rep.add("square-table", g2 == n, value=g2)
    elif r == 2:
        rep.add("square-table", g2.is_zero(), value=g2)
    else:
        rep.add("square-table", g2 == -n, value=g2)
    product = g * g_rec
    expected = {0: 2 * n, 1: n, 2: 0, 3: n}[r]
    rep.add("reciprocal-product", product == expected, value=product)
    if n % 2 == 1:
        w = None
        for q in range(1, n):
            if gcd(q, n) != 1:
                continue
            if cyclo.galois_apply(g, q) != g * cyclo.jacobi_symbol(q, n):
                w = q
                break
        rep.add("unit-twist-jacobi", w is None, w)
    return rep


@dataclass(frozen=True)
class CocycleFn:
    """Normalized 3-cocycle on the cyclic group of order n, tabulated."""

    n: int
    table: tuple

    def value(self, i: int, j: int, k: int) -> CycloNum:
        return self.table[i % self.n][j % self.n][k % self.n]


def verify_3cocycle(c: CocycleFn):
    """Generic checker: normalization and the 3-cocycle identity.

    Returns (True, None) or (False, witness) where the witness is the
    first failing index tuple.
    """
    n = c.n
    one = cyclo.one(1)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if (i == 0 or j == 0 or k == 0) and c.value(i, j, k) != one:
                    return False, (i, j, k)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    lhs = (
                        c.value(j, k, l)
                        * c.value(i, (j + k) % n, l)
                        * c.value(i, j, k)
                    )
                    rhs = c.value((i + j) % n, k, l) * c.value(i, j, (k + l) % n)
                    if lhs != rhs:
                        return False, (i, j, k, l)
    return True, None


def cocycle_omega(n: int, zeta_exponent: int = 1) -> CocycleFn:
    """The 3-cocycle (i, j, k) -> sigma(i, j)^k on Z_n, where sigma is
    the carry 2-cocycle valued at the chosen n-th root of unity:
    sigma(i, j) = z^e when the representatives i + j wrap past n, else 1.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"need a positive order, got {n}")
    zeta = root_of_unity(n, zeta_exponent)
    one = cyclo.one(n)
    table = tuple(
        tuple(
            tuple(
                (zeta ** k if i + j >= n else one) for k in range(n)
            )
            for j in range(n)
        )
        for i in range(n)
    )
    c = CocycleFn(n=n, table=table)
    ok, witness = verify_3cocycle(c)
    if not ok:
        raise AssertionError(f"cocycle identity failed at {witness}")
    return c
