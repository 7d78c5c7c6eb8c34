"""Extensions of modular data and congruence levels.

An extension fixes a generalized rank D (a fourth root of the squared
global dimension) and a multiplicative central charge (a cube root of
g / (n_o t_o D)); the rescaled matrices S/D and T/(t_o ell) then satisfy
the defining relations of the modular group and generate an honest
linear representation.  Whether that representation (or the projective
one of the raw matrices) factors through the reduction of the modular
group modulo M is decided by a Cayley-graph consistency check over the
finite group: assign each group element the matrix of its defining word
along a breadth-first search and verify every remaining edge.  An
assignment consistent along all edges is exactly a homomorphism from
the finite group, so the check is sound and complete.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import Optional

from . import cyclo, linalg
from .cyclo import CycloNum, root_of_unity
from .datum import ModularDatum, basic_stats
from .errors import (
    ChargeNotRootOfUnity,
    ChargeOrderTooLarge,
    InvalidExtension,
    NotIntegral,
    TooLarge,
)
from .report import CheckReport

DEFAULT_MAX_GROUP_ORDER = 1_000_000


# -- extended data ----------------------------------------------------------


@dataclass(frozen=True)
class ExtendedDatum:
    """A datum together with a chosen generalized rank and central charge."""

    datum: ModularDatum
    rank: CycloNum
    charge: CycloNum
    is_rank: bool


@dataclass(frozen=True)
class RankOption:
    value: CycloNum
    is_rank: bool


def enumerate_ranks(d: ModularDatum):
    """The four solutions of D^4 = n^2, namely +-sqrt(n) and +-i sqrt(n),
    flagged by whether D^2 = n."""
    stats = basic_stats(d)
    if stats.n_int is None or stats.n_int <= 0:
        raise NotIntegral("ranks require a positive integer global dimension")
    r = cyclo.sqrt_integer(stats.n_int)
    i4 = root_of_unity(4, 1)
    out = []
    for value in (r, -r, i4 * r, -(i4 * r)):
        sq = value * value
        if sq * sq != stats.n * stats.n:
            raise InvalidExtension("candidate rank fails its defining power")
        out.append(RankOption(value=value, is_rank=sq == stats.n))
    return out


def enumerate_charges(d: ModularDatum, rank: CycloNum):
    """The three cube roots of g / (n_o t_o D), found by exhaustive search
    through the roots of unity of the compatible order."""
    stats = basic_stats(d)
    sq = rank * rank
    if sq * sq != stats.n * stats.n:
        raise InvalidExtension("not a generalized rank: fourth power differs")
    w = stats.g / (stats.n_o * stats.t_o * rank)
    order = cyclo.root_of_unity_order(w)
    if order is None:
        raise ChargeNotRootOfUnity(
            "g/(n_o t_o D) is not a root of unity; invalid datum/rank pair"
        )
    bound = 3 * order
    found = []
    for j in range(bound):
        for candidate in (root_of_unity(bound, j), -root_of_unity(bound, j)):
            if candidate ** 3 == w and all(candidate != c for c in found):
                found.append(candidate)
    if len(found) != 3:
        raise ChargeNotRootOfUnity(
            f"expected 3 cube roots, found {len(found)}"
        )
    return found


def make_extension(d: ModularDatum, rank: CycloNum, charge: CycloNum) -> ExtendedDatum:
    stats = basic_stats(d)
    sq = rank * rank
    if sq * sq != stats.n * stats.n:
        raise InvalidExtension("fourth power of the rank is not n^2")
    if charge ** 3 != stats.g / (stats.n_o * stats.t_o * rank):
        raise InvalidExtension("cube of the charge is not g/(n_o t_o D)")
    if cyclo.root_of_unity_order(charge) is None:
        raise InvalidExtension("central charge is not a root of unity")
    return ExtendedDatum(
        datum=d, rank=rank, charge=charge, is_rank=sq == stats.n
    )


def extension_family(d: ModularDatum):
    """All twelve extensions: four generalized ranks times three charges."""
    out = []
    for option in enumerate_ranks(d):
        for charge in enumerate_charges(d, option.value):
            out.append(
                ExtendedDatum(
                    datum=d,
                    rank=option.value,
                    charge=charge,
                    is_rank=option.is_rank,
                )
            )
    return out


def homogeneous_matrices(e: ExtendedDatum):
    """S' = S/D and T' = T/(t_o ell), verified to satisfy the defining
    relations of the modular group: S'^4 = E and (T'S')^3 = S'^2."""
    d = e.datum
    stats = basic_stats(d)
    s_prime = linalg.mat_scale(d.s_matrix, e.rank.inverse())
    scale = (stats.t_o * e.charge).inverse()
    t_prime_diag = tuple(t * scale for t in d.t_diag)
    t_prime = linalg.diag_matrix(t_prime_diag)
    s2 = linalg.mat_mul(s_prime, s_prime)
    s4 = linalg.mat_mul(s2, s2)
    if not linalg.mat_eq(s4, linalg.mat_identity(d.size)):
        raise InvalidExtension("S'^4 is not the identity")
    ts = tuple(
        tuple(t_prime_diag[i] * x for x in row)
        for i, row in enumerate(s_prime)
    )
    ts3 = linalg.mat_mul(linalg.mat_mul(ts, ts), ts)
    if not linalg.mat_eq(ts3, s2):
        raise InvalidExtension("(T'S')^3 is not S'^2")
    return s_prime, t_prime


def extension_family_check(d: ModularDatum) -> CheckReport:
    """Any two extensions differ by a twelfth root of unity twisting the
    charge and its cube dividing the rank, and every twelfth root of
    unity maps an extension to another extension."""
    rep = CheckReport("extension-family")
    family = extension_family(d)
    rep.add("family-size-twelve", len(family) == 12, value=len(family))
    base = family[0]
    w = None
    for idx, other in enumerate(family):
        zeta = other.charge / base.charge
        if zeta ** 12 != 1 or other.rank * zeta ** 3 != base.rank:
            w = idx
            break
    rep.add("related-by-twelfth-roots", w is None, w)

    def in_family(rank, charge):
        return any(
            e.rank == rank and e.charge == charge for e in family
        )

    w = None
    for k in range(12):
        zeta = root_of_unity(12, k)
        if not in_family(base.rank / zeta ** 3, zeta * base.charge):
            w = k
            break
    rep.add("closed-under-twisting", w is None, w)
    return rep


def additive_charge(e: ExtendedDatum) -> int:
    """The residue c mod 24 with ell equal to the c-th power of the fixed
    primitive 24th root of unity.  For integral data of odd exponent
    extended by an honest rank, c is verified to be even."""
    if e.charge ** 24 != 1:
        raise ChargeOrderTooLarge("central charge is not a 24th root of unity")
    c = next(
        (k for k in range(24) if e.charge == root_of_unity(24, k)), None
    )
    if c is None:
        raise ChargeOrderTooLarge(
            "central charge is not a power of the canonical 24th root"
        )
    stats = basic_stats(e.datum)
    if stats.integral and stats.N % 2 == 1 and e.is_rank and c % 2 != 0:
        raise InvalidExtension(
            f"odd-exponent datum with a rank has odd additive charge {c}"
        )
    return c


# -- the modular group and its reductions -----------------------------------

_S_WORD = ((0, -1), (1, 0))
_T_WORD = ((1, 1), (0, 1))


def _mat2_mul(a, b, modulus):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0]) % modulus,
        (a[0][0] * b[0][1] + a[0][1] * b[1][1]) % modulus,
        (a[1][0] * b[0][0] + a[1][1] * b[1][0]) % modulus,
        (a[1][0] * b[0][1] + a[1][1] * b[1][1]) % modulus,
    )


def _flat_mul(a, b, modulus):
    return (
        (a[0] * b[0] + a[1] * b[2]) % modulus,
        (a[0] * b[1] + a[1] * b[3]) % modulus,
        (a[2] * b[0] + a[3] * b[2]) % modulus,
        (a[2] * b[1] + a[3] * b[3]) % modulus,
    )


def d_matrix(q: int, r: int):
    """The word s t^r s^-1 t^q s t^r in the generators of the modular
    group, in closed form [[q, qr-1], [1-qr, r(2-qr)]].

    The closed form is checked against the literal generator product,
    and the transpose/inversion relations of these words against the
    s-generator are verified as integer matrix identities.
    """
    closed = ((q, q * r - 1), (1 - q * r, r * (2 - q * r)))

    def mul(a, b):
        return (
            (
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ),
            (
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ),
        )

    s = _S_WORD
    s_inv = ((0, 1), (-1, 0))
    t_r = ((1, r), (0, 1))
    t_q = ((1, q), (0, 1))
    word = mul(mul(mul(mul(mul(s, t_r), s_inv), t_q), s), t_r)
    if word != closed:
        raise AssertionError("closed form disagrees with the generator word")

    def transpose(a):
        return ((a[0][0], a[1][0]), (a[0][1], a[1][1]))

    def inverse(a):
        # determinant one
        return ((a[1][1], -a[0][1]), (-a[1][0], a[0][0]))

    g = closed
    if mul(s, inverse(g)) != mul(transpose(g), s):
        raise AssertionError("s g^-1 = g^T s failed")
    minus = ((-q, q * r - 1), (1 - q * r, -r * (2 - q * r)))
    if d_matrix_raw(-q, -r) != minus:
        raise AssertionError("negated parameters disagree")
    if mul(s, inverse(g)) != mul(minus, inverse(s)) or mul(
        s, inverse(g)
    ) != mul(transpose(g), s):
        raise AssertionError("word inversion relations failed")
    return closed


def d_matrix_raw(q: int, r: int):
    return ((q, q * r - 1), (1 - q * r, r * (2 - q * r)))


def sl2_order(modulus: int) -> int:
    order = modulus**3
    for p, _ in cyclo.factorize(modulus):
        order = order * (p * p - 1) // (p * p)
    return order


@dataclass(frozen=True)
class SL2Mod:
    """The special linear group of 2x2 matrices modulo M, enumerated by a
    breadth-first closure from the identity under the two generators and
    their inverses.  Elements are flat (a, b, c, d) tuples."""

    modulus: int
    elements: tuple
    generators: dict

    @property
    def order(self) -> int:
        return len(self.elements)


@lru_cache(maxsize=None)
def _sl2_elements(modulus: int):
    identity = (1 % modulus, 0, 0, 1 % modulus)
    gens = {
        "s": tuple(x % modulus for x in (0, -1, 1, 0)),
        "t": tuple(x % modulus for x in (1, 1, 0, 1)),
        "S": tuple(x % modulus for x in (0, 1, -1, 0)),
        "T": tuple(x % modulus for x in (1, -1, 0, 1)),
    }
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    gen_list = [gens[k] for k in ("s", "t", "S", "T")]
    while queue:
        g = queue.popleft()
        for x in gen_list:
            h = _flat_mul(g, x, modulus)
            if h not in seen:
                seen.add(h)
                order.append(h)
                queue.append(h)
    return tuple(order), gens


def sl2_enumerate(modulus: int, max_group_order: int = DEFAULT_MAX_GROUP_ORDER) -> SL2Mod:
    """Enumerate the reduced modular group, guarded by the exact order
    formula so oversized requests fail before any work is done."""
    modulus = int(modulus)
    if modulus < 1:
        raise ValueError(f"modulus must be positive, got {modulus}")
    predicted = sl2_order(modulus)
    if predicted > max_group_order:
        raise TooLarge(
            f"group order {predicted} exceeds bound {max_group_order}"
        )
    elements, gens = _sl2_elements(modulus)
    if len(elements) != predicted:
        raise AssertionError(
            f"enumerated {len(elements)} elements, formula says {predicted}"
        )
    return SL2Mod(modulus=modulus, elements=elements, generators=gens)


@lru_cache(maxsize=None)
def _cayley_data(modulus: int):
    """Breadth-first data over the generators s and t only: element list
    in discovery order, the full edge list in that order, and parent
    links for reconstructing defining words.

    Positive words in s and t exhaust the finite group, and an
    assignment consistent along every (element, generator) edge is a
    homomorphism, so two generators suffice for the consistency check.
    """
    identity = (1 % modulus, 0, 0, 1 % modulus)
    gens = (
        tuple(x % modulus for x in (0, -1, 1, 0)),
        tuple(x % modulus for x in (1, 1, 0, 1)),
    )
    index = {identity: 0}
    elements = [identity]
    parents = [(-1, "")]
    edges = []
    queue = deque([0])
    while queue:
        gi = queue.popleft()
        g = elements[gi]
        for gen_idx, x in enumerate(gens):
            h = _flat_mul(g, x, modulus)
            hi = index.get(h)
            if hi is None:
                hi = len(elements)
                index[h] = hi
                elements.append(h)
                parents.append((gi, "st"[gen_idx]))
                queue.append(hi)
            edges.append((gi, gen_idx, hi))
    return tuple(elements), tuple(edges), tuple(parents)


def _word_of(parents, idx: int) -> str:
    letters = []
    while idx > 0:
        idx, letter = parents[idx][0], parents[idx][1]
        letters.append(letter)
    return "".join(reversed(letters))


@dataclass(frozen=True)
class Witness:
    """First inconsistent edge of the consistency search."""

    element: tuple
    word: str
    assigned: tuple
    computed: tuple

    def to_json(self):
        from .report import jsonable

        return {
            "element": [list(self.element[:2]), list(self.element[2:])],
            "word": self.word,
            "assigned": jsonable(self.assigned),
            "computed": jsonable(self.computed),
        }


@dataclass(frozen=True)
class CongruenceReport:
    modulus: int
    linear_factors: Optional[bool]
    projective_factors: Optional[bool]
    witness: Optional[Witness] = None


def _proj_normalize(mat):
    for row in mat:
        for x in row:
            if not x.is_zero():
                scale = x.inverse()
                return linalg.mat_scale(mat, scale)
    raise InvalidExtension("zero matrix has no projective representative")


def factor_check(
    s_mat,
    t_mat,
    modulus: int,
    mode: str = "linear",
    max_group_order: int = DEFAULT_MAX_GROUP_ORDER,
) -> CongruenceReport:
    """Decide whether mapping the two generators to the given matrices
    factors through the reduced modular group of the given modulus.

    Every group element is assigned the matrix of its defining word in a
    breadth-first search; each remaining Cayley edge must then agree
    exactly (linear mode) or up to a scalar (projective mode, realized
    by keeping every assigned matrix scaled so its first nonzero entry
    is one).  The first disagreeing edge, in search order, becomes the
    witness.
    """
    if mode not in ("linear", "projective"):
        raise ValueError(f"unknown mode {mode!r}")
    projective = mode == "projective"
    linalg.mat_inverse(s_mat)
    linalg.mat_inverse(t_mat)
    group = sl2_enumerate(modulus, max_group_order)
    elements, edges, parents = _cayley_data(modulus)
    if len(elements) != group.order:
        raise AssertionError("two-generator closure missed group elements")
    m = len(s_mat)
    conductor = lcm(
        linalg.common_conductor(s_mat), linalg.common_conductor(t_mat)
    )
    s_lift = linalg.mat_lift(s_mat, conductor)
    t_lift = linalg.mat_lift(t_mat, conductor)
    t_diag = None
    if all(
        t_lift[i][j].is_zero()
        for i in range(m)
        for j in range(m)
        if i != j
    ):
        t_diag = tuple(t_lift[i][i] for i in range(m))

    identity = linalg.mat_identity(m, conductor)
    if projective:
        identity = _proj_normalize(identity)
    assigned = {0: (identity, linalg.mat_key(identity))}
    products = {}

    def step(matrix, key, gen_idx):
        cached = products.get((key, gen_idx))
        if cached is not None:
            return cached
        if gen_idx == 0:
            out = linalg.mat_mul(matrix, s_lift)
        elif t_diag is not None:
            out = linalg.mat_mul_diag(matrix, t_diag)
        else:
            out = linalg.mat_mul(matrix, t_lift)
        if projective:
            out = _proj_normalize(out)
        result = (out, linalg.mat_key(out))
        products[(key, gen_idx)] = result
        return result

    for gi, gen_idx, hi in edges:
        matrix, key = assigned[gi]
        out, out_key = step(matrix, key, gen_idx)
        existing = assigned.get(hi)
        if existing is None:
            assigned[hi] = (out, out_key)
        elif existing[1] != out_key:
            witness = Witness(
                element=elements[hi],
                word=_word_of(parents, gi) + "st"[gen_idx],
                assigned=existing[0],
                computed=out,
            )
            if projective:
                return CongruenceReport(
                    modulus=modulus,
                    linear_factors=None,
                    projective_factors=False,
                    witness=witness,
                )
            return CongruenceReport(
                modulus=modulus,
                linear_factors=False,
                projective_factors=None,
                witness=witness,
            )
    if projective:
        return CongruenceReport(
            modulus=modulus, linear_factors=None, projective_factors=True
        )
    return CongruenceReport(
        modulus=modulus, linear_factors=True, projective_factors=True
    )


@dataclass(frozen=True)
class CongruenceClassification:
    modulus: int
    projective: bool
    congruence: bool
    minimal_level: Optional[int]
    levels_checked: tuple
    exhausted: bool


def default_level_candidates(d: ModularDatum):
    """Ascending divisors of 24 times the normalized exponent; covers the
    levels that occur for the built-in examples but is configurable since
    no general bound is known."""
    stats = basic_stats(d)
    return cyclo.divisors(24 * stats.N_o)


def congruence_classify(
    e: ExtendedDatum,
    level_candidates=None,
    max_group_order: int = DEFAULT_MAX_GROUP_ORDER,
) -> CongruenceClassification:
    """Projective factoring of the raw matrices and linear factoring of
    the homogeneous ones at the normalized exponent, plus the minimal
    linear level among the candidates."""
    d = e.datum
    stats = basic_stats(d)
    projective = factor_check(
        d.s_matrix,
        linalg.diag_matrix(d.t_diag),
        stats.N_o,
        "projective",
        max_group_order,
    ).projective_factors
    s_prime, t_prime = homogeneous_matrices(e)
    congruence = factor_check(
        s_prime, t_prime, stats.N_o, "linear", max_group_order
    ).linear_factors
    candidates = (
        list(level_candidates)
        if level_candidates is not None
        else default_level_candidates(d)
    )
    minimal = None
    checked = []
    for level in candidates:
        checked.append(level)
        outcome = factor_check(
            s_prime, t_prime, level, "linear", max_group_order
        )
        if outcome.linear_factors:
            minimal = level
            break
    return CongruenceClassification(
        modulus=stats.N_o,
        projective=bool(projective),
        congruence=bool(congruence),
        minimal_level=minimal,
        levels_checked=tuple(checked),
        exhausted=minimal is None,
    )


def lift_search(
    d: ModularDatum,
    modulus: int,
    max_group_order: int = DEFAULT_MAX_GROUP_ORDER,
):
    """Filter the twelve-member extension family down to those whose
    homogeneous matrices factor linearly at the given level.  The search
    is exhaustive, so an empty result proves no extension lifts there."""
    survivors = []
    for e in extension_family(d):
        s_prime, t_prime = homogeneous_matrices(e)
        outcome = factor_check(
            s_prime, t_prime, modulus, "linear", max_group_order
        )
        if outcome.linear_factors:
            survivors.append(e)
    return survivors
