"""Modular data: the (I, o, *, S, T) quintuple and its defining axioms.

A modular datum consists of a finite label set with a unit label, an
involution on the labels, a symmetric Verlinde matrix S and a diagonal
Dehn matrix T of finite order.  This module validates the five defining
axioms, derives the standard invariants (global dimension, exponent,
Gaussian sums), verifies the elementary identities that follow from the
axioms, and builds Kronecker products.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Optional

from . import cyclo, linalg
from .cyclo import CycloNum
from .errors import InvalidDatum
from .report import CheckReport


@dataclass(frozen=True)
class ModularDatum:
    """Labels, unit label, star involution (as index permutation),
    Verlinde matrix and Dehn diagonal."""

    labels: tuple
    unit: str
    star: tuple
    s_matrix: tuple
    t_diag: tuple

    def __post_init__(self):
        m = len(self.labels)
        if m == 0:
            raise ValueError("label set must be nonempty")
        if len(set(self.labels)) != m:
            raise ValueError("labels must be distinct")
        if self.unit not in self.labels:
            raise ValueError(f"unit {self.unit!r} not among labels")
        if len(self.star) != m or sorted(self.star) != list(range(m)):
            raise ValueError("star must be a permutation of the label indices")
        if len(self.s_matrix) != m or any(len(r) != m for r in self.s_matrix):
            raise ValueError("S must be a square matrix over the labels")
        if len(self.t_diag) != m:
            raise ValueError("T must have one diagonal entry per label")

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def o(self) -> int:
        return self.labels.index(self.unit)

    def s(self, i: int, j: int) -> CycloNum:
        return self.s_matrix[i][j]

    def t(self, i: int) -> CycloNum:
        return self.t_diag[i]

    def dim(self, i: int) -> CycloNum:
        return self.s_matrix[i][self.o]

    def conjugation_matrix(self) -> tuple:
        """C with entry 1 at (i, i*)."""
        m = self.size
        one = cyclo.one(1)
        z = cyclo.zero(1)
        return tuple(
            tuple(one if j == self.star[i] else z for j in range(m))
            for i in range(m)
        )


@dataclass(frozen=True)
class DatumStats:
    """Cheaply derived quantities; no axiom re-verification."""

    n: CycloNum
    n_int: Optional[int]
    dims: tuple
    dims_int: Optional[tuple]
    N: int
    N_o: int
    g: CycloNum
    g_rec: CycloNum
    t_o: CycloNum
    n_o: CycloNum
    normalized: bool
    integral: bool


@dataclass(frozen=True)
class DatumReport:
    """Derived quantities of a validated datum."""

    n: CycloNum
    N: int
    N_o: int
    dims: tuple
    g: CycloNum
    g_rec: CycloNum
    normalized: bool
    integral: bool


def basic_stats(d: ModularDatum) -> DatumStats:
    """Global dimension (as sum of squared dimensions), exponents and
    Gaussian sums.  Raises InvalidDatum if some Dehn entry is not a root
    of unity or some dimension vanishes."""
    o = d.o
    dims = tuple(d.dim(i) for i in range(d.size))
    if any(x.is_zero() for x in dims):
        raise InvalidDatum("a first-column entry of S vanishes")
    n = cyclo.zero(1)
    g = cyclo.zero(1)
    g_rec = cyclo.zero(1)
    N = 1
    t_o = d.t(o)
    ord_o = cyclo.root_of_unity_order(t_o)
    if ord_o is None:
        raise InvalidDatum("t_o is not a root of unity")
    N_o = 1
    for i in range(d.size):
        t_i = d.t(i)
        order = cyclo.root_of_unity_order(t_i)
        if order is None:
            raise InvalidDatum(f"t_{i} is not a root of unity")
        N = lcm(N, order)
        order_rel = cyclo.root_of_unity_order(t_i / t_o)
        N_o = lcm(N_o, order_rel)
        sq = dims[i] * dims[i]
        n = n + sq
        g = g + sq * t_i
        g_rec = g_rec + sq / t_i
    dims_int = tuple(cyclo.is_integer(x) for x in dims)
    integral = all(v is not None and v > 0 for v in dims_int)
    n_int = cyclo.is_integer(n)
    normalized = d.s(o, o) == 1 and t_o == 1
    return DatumStats(
        n=n,
        n_int=n_int,
        dims=dims,
        dims_int=dims_int if integral else None,
        N=N,
        N_o=N_o,
        g=g,
        g_rec=g_rec,
        t_o=t_o,
        n_o=dims[o],
        normalized=normalized,
        integral=integral,
    )


def _global_dimension_from_square(d: ModularDatum):
    """The constant n with S^2 = nC, or (None, witness) when no such
    constant exists."""
    m = d.size
    s2 = linalg.mat_mul(d.s_matrix, d.s_matrix)
    n = s2[d.o][d.star[d.o]]
    for i in range(m):
        for k in range(m):
            expected = n if k == d.star[i] else cyclo.zero(1)
            if s2[i][k] != expected:
                return None, (i, k, s2[i][k])
    if n.is_zero():
        return None, ("n", "zero")
    return n, None


def _axioms_1_to_4(d: ModularDatum) -> CheckReport:
    """Axioms that do not require the fusion table; see validate_axioms."""
    rep = CheckReport("axioms")
    m = d.size
    o = d.o

    # structural invariants of the quintuple itself
    involutive = all(d.star[d.star[i]] == i for i in range(m))
    rep.add("structure-star-involution", involutive)

    # axiom 1: S symmetric, T of finite order
    sym_witness = None
    for i in range(m):
        for j in range(i + 1, m):
            if d.s(i, j) != d.s(j, i):
                sym_witness = (i, j)
                break
        if sym_witness:
            break
    rep.add("axiom1-s-symmetric", sym_witness is None, sym_witness)
    t_orders = [cyclo.root_of_unity_order(t) for t in d.t_diag]
    bad_t = next((i for i, r in enumerate(t_orders) if r is None), None)
    rep.add("axiom1-t-finite-order", bad_t is None, bad_t)

    # axiom 2: t invariant under star, first column nonzero, unit self-dual
    w = next((i for i in range(m) if d.t(d.star[i]) != d.t(i)), None)
    rep.add("axiom2-t-star-invariant", w is None, w)
    w = next((i for i in range(m) if d.s(i, o).is_zero()), None)
    rep.add("axiom2-dimensions-nonzero", w is None, w)
    rep.add("axiom2-unit-self-dual", d.star[o] == o)

    # axiom 3: S^2 = nC for some nonzero n
    n, witness3 = _global_dimension_from_square(d)
    rep.add("axiom3-s-squared", n is not None, witness3, value=n)

    # axiom 4, constant form: g * T^-1 S T^-1 = (n_o / t_o^2) * S T S,
    # cleared of denominators to avoid inversions (valid iff every t_i != 0)
    evaluable = all(not t.is_zero() for t in d.t_diag)
    if not evaluable:
        rep.add("axiom4-proportionality", False, "T is not invertible")
    else:
        dims = [d.s(i, o) for i in range(m)]
        g = cyclo.zero(1)
        for i in range(m):
            g = g + dims[i] * dims[i] * d.t(i)
        n_o = dims[o]
        t_o2 = d.t(o) * d.t(o)
        sts = linalg.mat_mul(
            linalg.mat_mul_diag(d.s_matrix, d.t_diag), d.s_matrix
        )
        witness4 = None
        for i in range(m):
            for j in range(m):
                lhs = g * d.s(i, j) * t_o2
                rhs = n_o * d.t(i) * d.t(j) * sts[i][j]
                if lhs != rhs:
                    witness4 = (i, j)
                    break
            if witness4:
                break
        rep.add("axiom4-proportionality", witness4 is None, witness4, value=g)
    return rep


def validate_axioms(d: ModularDatum) -> CheckReport:
    """Check the five defining axioms in order, recording witnesses.

    Total: any well-formed ModularDatum yields a report, never a crash.
    Later axioms that cannot be evaluated once an earlier one failed are
    reported as failures with an explanatory witness.
    """
    rep = _axioms_1_to_4(d)
    n = rep["axiom3-s-squared"].value

    # axiom 5: Verlinde numbers are nonnegative integers
    if n is None:
        rep.add("axiom5-verlinde-integrality", False,
                "no global dimension available")
    else:
        from . import fusion

        try:
            table = fusion.fusion_coefficients(d)
        except InvalidDatum as exc:
            rep.add("axiom5-verlinde-integrality", False, str(exc))
        else:
            rep.add(
                "axiom5-verlinde-integrality",
                not table.violations,
                [(i, j, k) for i, j, k, _ in table.violations[:8]],
            )
    return rep


def derive_report(d: ModularDatum) -> DatumReport:
    """Derived quantities with the global dimension cross-checked against
    the matrix square of S."""
    stats = basic_stats(d)
    n, witness = _global_dimension_from_square(d)
    if n is None:
        raise InvalidDatum(f"S^2 is not a multiple of C: witness {witness}")
    if n != stats.n:
        raise InvalidDatum(
            "global dimension from S^2 disagrees with the sum of squared "
            "dimensions"
        )
    return DatumReport(
        n=n,
        N=stats.N,
        N_o=stats.N_o,
        dims=stats.dims,
        g=stats.g,
        g_rec=stats.g_rec,
        normalized=stats.normalized,
        integral=stats.integral,
    )


def require_valid(d: ModularDatum) -> CheckReport:
    rep = validate_axioms(d)
    if not rep.passed:
        failed = ", ".join(c.name for c in rep.failures())
        raise InvalidDatum(f"datum fails: {failed}")
    return rep


def verify_structural_identities(d: ModularDatum) -> CheckReport:
    """The elementary identities that every valid datum satisfies:
    star-symmetry of S, commutation of C with S and T, the unit row of
    the fusion table, reconstruction of S from the fusion table, and the
    product of the two Gaussian sums."""
    require_valid(d)
    from . import fusion

    rep = CheckReport("structural-identities")
    m = d.size
    o = d.o
    star = d.star
    stats = basic_stats(d)

    w = None
    for i in range(m):
        for j in range(m):
            if d.s(star[i], star[j]) != d.s(i, j):
                w = (i, j)
                break
        if w:
            break
    rep.add("s-star-symmetry", w is None, w)
    w = next((j for j in range(m) if d.dim(star[j]) != d.dim(j)), None)
    rep.add("dims-star-invariant", w is None, w)

    c = d.conjugation_matrix()
    rep.add(
        "c-commutes-with-s",
        linalg.mat_eq(linalg.mat_mul(c, d.s_matrix),
                      linalg.mat_mul(d.s_matrix, c)),
    )
    t_mat = linalg.diag_matrix(d.t_diag)
    rep.add(
        "c-commutes-with-t",
        linalg.mat_eq(linalg.mat_mul(c, t_mat), linalg.mat_mul(t_mat, c)),
    )

    table = fusion.fusion_coefficients(d)
    w = None
    for i in range(m):
        for j in range(m):
            if (
                table.coeff(o, i, j) != (1 if i == j else 0)
                or table.coeff(i, o, j) != (1 if i == j else 0)
                or table.coeff(i, j, o) != (1 if star[i] == j else 0)
            ):
                w = (i, j)
                break
        if w:
            break
    rep.add("unit-row-and-duality", w is None, w)

    # s_ij = (t_o / (t_i t_j)) * sum_k N_ik^j n_k t_k
    w = None
    for i in range(m):
        for j in range(m):
            acc = cyclo.zero(1)
            for k in range(m):
                nijk = table.coeff(i, k, j)
                if nijk:
                    acc = acc + nijk * stats.dims[k] * d.t(k)
            if d.s(i, j) * d.t(i) * d.t(j) != stats.t_o * acc:
                w = (i, j)
                break
        if w:
            break
    rep.add("s-from-fusion-table", w is None, w)

    rep.add(
        "gauss-product",
        stats.g * stats.g_rec == stats.n * stats.n_o * stats.n_o,
        value=stats.g,
    )
    return rep


def kronecker_product(d1: ModularDatum, d2: ModularDatum) -> ModularDatum:
    """Product datum on the Cartesian product of the index sets."""
    require_valid(d1)
    require_valid(d2)
    labels = tuple(
        f"({a},{b})" for a in d1.labels for b in d2.labels
    )
    m2 = d2.size
    star = tuple(
        d1.star[i] * m2 + d2.star[j]
        for i in range(d1.size)
        for j in range(d2.size)
    )
    s_matrix = tuple(
        tuple(
            d1.s(i1, j1) * d2.s(i2, j2)
            for j1 in range(d1.size)
            for j2 in range(d2.size)
        )
        for i1 in range(d1.size)
        for i2 in range(d2.size)
    )
    t_diag = tuple(
        d1.t(i1) * d2.t(i2)
        for i1 in range(d1.size)
        for i2 in range(d2.size)
    )
    return ModularDatum(
        labels=labels,
        unit=f"({d1.unit},{d2.unit})",
        star=star,
        s_matrix=s_matrix,
        t_diag=t_diag,
    )


def power_identity_check(d: ModularDatum) -> CheckReport:
    """Root-of-unity powers of the ratio of the two Gaussian sums: the
    2Nm-th power is always 1; the 2N-th for integral data; the N-th for
    integral data of even exponent."""
    stats = basic_stats(d)
    rep = CheckReport("power-identities")
    ratio = stats.g / stats.g_rec
    m = d.size
    rep.add("ratio-power-2Nm", ratio ** (2 * stats.N * m) == 1)
    if stats.integral:
        rep.add("ratio-power-2N", ratio ** (2 * stats.N) == 1)
        if stats.N % 2 == 0:
            rep.add("ratio-power-N", ratio ** stats.N == 1)
    return rep
