"""Exact arithmetic in cyclotomic fields.

An element of the M-th cyclotomic field is stored on the power basis
1, z, ..., z^(phi(M)-1) of Q[x]/(Phi_M(x)), where z is a fixed primitive
M-th root of unity and Phi_M the M-th cyclotomic polynomial.  The
representation is canonical, so two elements at the same conductor are
equal iff their coefficient vectors agree.  Binary operations lift both
operands to the lcm of their conductors; nothing ever reduces a conductor.

All values are immutable and all functions are pure.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import (
    BadConductor,
    BadModulus,
    DivisionByZero,
    NotAUnit,
    TooLarge,
)

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is optional
    _Q = Fraction

_RAT_TYPES = (int, Fraction, type(_Q(0)))

# Largest conductor for which a basis will be materialized; guards against
# runaway lcm growth.  The CLI exposes this bound via --conductor-limit.
_conductor_limit = 100_000


def set_conductor_limit(limit: int) -> None:
    global _conductor_limit
    _conductor_limit = int(limit)


def get_conductor_limit() -> int:
    return _conductor_limit


def rational(num, den=1):
    """Exact rational with canonical form (gcd 1, positive denominator)."""
    return _Q(num, den)


def euler_phi(m: int) -> int:
    phi = 1
    for p, e in factorize(m):
        phi *= (p - 1) * p ** (e - 1)
    return phi


def factorize(n: int):
    """Prime factorization [(p, e), ...] by trial division."""
    n = int(n)
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def divisors(n: int):
    out = [1]
    for p, e in factorize(n):
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def _poly_divexact(num, den):
    # Exact division of integer polynomials; den must be monic here.
    num = list(num)
    deg_d = len(den) - 1
    quot = [0] * (len(num) - deg_d)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + deg_d]
        if c == 0:
            continue
        quot[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("polynomial division was not exact")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple:
    """Integer coefficients of Phi_m, low degree first.

    Computed by exact division of x^m - 1 by Phi_d over all proper
    divisors d of m.
    """
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m):
        if d < m:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_rows(m: int) -> tuple:
    """Sparse reduction of z^k modulo Phi_m for every exponent needed.

    Row k holds ((index, int_coeff), ...) with z^k = sum coeff * z^index.
    Rows cover k up to max(m, 2*phi - 1) - 1, enough both for exponent
    arithmetic mod m and for reducing products of basis vectors.
    """
    if m > _conductor_limit:
        raise TooLarge(f"conductor {m} exceeds limit {_conductor_limit}")
    phi_poly = cyclotomic_polynomial(m)
    phi = len(phi_poly) - 1
    top = max(m, 2 * phi - 1)
    dense = []
    for k in range(phi):
        row = [0] * phi
        row[k] = 1
        dense.append(row)
    for k in range(phi, top):
        prev = dense[k - 1]
        row = [0] * phi
        for i in range(phi - 1):
            row[i + 1] = prev[i]
        carry = prev[phi - 1]
        if carry:
            # z^phi = -(lower part of Phi_m), since Phi_m is monic
            for i in range(phi):
                row[i] -= carry * phi_poly[i]
        dense.append(row)
    return tuple(
        tuple((i, c) for i, c in enumerate(row) if c) for row in dense
    )


class CycloNum:
    """Element of the cyclotomic field of the given conductor."""

    __slots__ = ("conductor", "coeffs")
    __hash__ = None  # equality crosses conductors; use coeff keys instead

    def __init__(self, conductor: int, coeffs):
        conductor = int(conductor)
        if conductor < 1:
            raise BadConductor(f"conductor must be positive, got {conductor}")
        phi = euler_phi(conductor)
        coeffs = tuple(_Q(c) for c in coeffs)
        if len(coeffs) != phi:
            raise ValueError(
                f"need {phi} coefficients at conductor {conductor}, "
                f"got {len(coeffs)}"
            )
        self.conductor = conductor
        self.coeffs = coeffs

    # -- construction helpers -------------------------------------------

    @staticmethod
    def _make(conductor, coeffs_tuple):
        x = object.__new__(CycloNum)
        x.conductor = conductor
        x.coeffs = coeffs_tuple
        return x

    # -- basic predicates ------------------------------------------------

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # -- conversions -------------------------------------------------------

    def lift(self, conductor: int) -> "CycloNum":
        return lift_conductor(self, conductor)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            return other
        if isinstance(other, _RAT_TYPES):
            return from_rational(other, self.conductor)
        return None

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            if self.conductor == other.conductor:
                return self.coeffs == other.coeffs
            m = lcm(self.conductor, other.conductor)
            return self.lift(m).coeffs == other.lift(m).coeffs
        if isinstance(other, _RAT_TYPES):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = _common(self, other)
        return CycloNum._make(
            a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = _common(self, other)
        return CycloNum._make(
            a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs))
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other.__sub__(self)

    def __neg__(self):
        return CycloNum._make(self.conductor, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, _RAT_TYPES):
            q = _Q(other)
            return CycloNum._make(
                self.conductor, tuple(c * q for c in self.coeffs)
            )
        if not isinstance(other, CycloNum):
            return NotImplemented
        a, b = _common(self, other)
        m = a.conductor
        phi = len(a.coeffs)
        rows = _power_rows(m)
        nz_a = [(i, c) for i, c in enumerate(a.coeffs) if c]
        nz_b = [(j, c) for j, c in enumerate(b.coeffs) if c]
        if len(nz_a) > len(nz_b):
            nz_a, nz_b = nz_b, nz_a
        acc = [_Q(0)] * (2 * phi - 1 if phi > 1 else 1)
        for i, ca in nz_a:
            for j, cb in nz_b:
                acc[i + j] += ca * cb
        out = acc[:phi]
        for k in range(phi, len(acc)):
            c = acc[k]
            if c:
                for idx, r in rows[k]:
                    out[idx] += c * r
        return CycloNum._make(m, tuple(out))

    def __rmul__(self, other):
        if isinstance(other, _RAT_TYPES):
            return self.__mul__(other)
        return NotImplemented

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse via the extended Euclidean algorithm
        against the cyclotomic polynomial over the rationals."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        m = self.conductor
        phi_poly = [_Q(c) for c in cyclotomic_polynomial(m)]
        a = list(self.coeffs)
        # invariant: r0 = s0 * a (mod Phi), r1 = s1 * a (mod Phi)
        r0, r1 = phi_poly, a
        s0, s1 = [_Q(0)], [_Q(1)]
        while any(r1):
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        deg = _poly_degree(r0)
        if deg != 0:
            # cannot happen: Phi_m is irreducible over Q
            raise ArithmeticError("gcd with cyclotomic polynomial not constant")
        c = r0[0]
        inv = [si / c for si in s0]
        phi = len(self.coeffs)
        out = inv[:phi] + [_Q(0)] * (phi - len(inv))
        return CycloNum._make(m, tuple(out))

    def __truediv__(self, other):
        if isinstance(other, _RAT_TYPES):
            q = _Q(other)
            if q == 0:
                raise DivisionByZero("division by zero")
            return self.__mul__(1 / q)
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self.__mul__(other.inverse())

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other.__truediv__(self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = one(self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- display -----------------------------------------------------------

    def __repr__(self):
        return f"CycloNum({self.conductor}, {self!s})"

    def __str__(self):
        m = self.conductor
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = f"z{m}" if i == 1 else f"z{m}^{i}"
                if c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append(f"-{mono}")
                else:
                    terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


# -- polynomial helpers over the rationals (dense lists) -------------------


def _poly_degree(p):
    for i in range(len(p) - 1, -1, -1):
        if p[i]:
            return i
    return -1


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = a + [_Q(0)] * (n - len(a))
    b = b + [_Q(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_mul(a, b):
    out = [_Q(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = list(a)
    db = _poly_degree(b)
    if db < 0:
        raise DivisionByZero("polynomial division by zero")
    lead = b[db]
    q = [_Q(0)] * max(len(a) - db, 1)
    for i in range(_poly_degree(a) - db, -1, -1):
        c = a[i + db] / lead
        if not c:
            continue
        q[i] = c
        for j in range(db + 1):
            a[i + j] -= c * b[j]
    return q, a


# -- public constructors and operations ------------------------------------


@lru_cache(maxsize=None)
def zero(conductor: int = 1) -> CycloNum:
    phi = euler_phi(conductor)
    return CycloNum._make(conductor, tuple([_Q(0)] * phi))


@lru_cache(maxsize=None)
def one(conductor: int = 1) -> CycloNum:
    phi = euler_phi(conductor)
    return CycloNum._make(conductor, tuple([_Q(1)] + [_Q(0)] * (phi - 1)))


def from_rational(value, conductor: int = 1) -> CycloNum:
    phi = euler_phi(conductor)
    return CycloNum._make(
        conductor, tuple([_Q(value)] + [_Q(0)] * (phi - 1))
    )


def root_of_unity(m: int, k: int) -> CycloNum:
    """The k-th power of the fixed primitive m-th root of unity."""
    m = int(m)
    if m < 1:
        raise BadConductor(f"order must be positive, got {m}")
    phi = euler_phi(m)
    row = _power_rows(m)[k % m]
    coeffs = [_Q(0)] * phi
    for idx, c in row:
        coeffs[idx] = _Q(c)
    return CycloNum._make(m, tuple(coeffs))


def lift_conductor(x: CycloNum, conductor: int) -> CycloNum:
    """Represent x at a larger conductor; value-preserving."""
    m = x.conductor
    conductor = int(conductor)
    if conductor % m != 0:
        raise BadConductor(f"{m} does not divide {conductor}")
    if conductor == m:
        return x
    scale = conductor // m
    phi = euler_phi(conductor)
    rows = _power_rows(conductor)
    out = [_Q(0)] * phi
    for i, c in enumerate(x.coeffs):
        if not c:
            continue
        for idx, r in rows[(i * scale) % conductor]:
            out[idx] += c * r
    return CycloNum._make(conductor, tuple(out))


def _common(a: CycloNum, b: CycloNum):
    if a.conductor == b.conductor:
        return a, b
    m = lcm(a.conductor, b.conductor)
    return a.lift(m), b.lift(m)


def galois_apply(x: CycloNum, q: int) -> CycloNum:
    """Image of x under the field automorphism sending z to z^q."""
    m = x.conductor
    if gcd(q, m) != 1:
        raise NotAUnit(f"{q} is not a unit modulo {m}")
    q %= m
    if q == 1:
        return x
    phi = len(x.coeffs)
    rows = _power_rows(m)
    out = [_Q(0)] * phi
    for i, c in enumerate(x.coeffs):
        if not c:
            continue
        for idx, r in rows[(i * q) % m]:
            out[idx] += c * r
    return CycloNum._make(m, tuple(out))


def root_of_unity_order(x: CycloNum):
    """Multiplicative order of x, or None if x is not a root of unity.

    The roots of unity at conductor m all have order dividing lcm(2, m),
    so 2m successive powers decide the question.
    """
    m = x.conductor
    unit = one(m)
    y = x
    for d in range(1, 2 * m + 1):
        if y == unit:
            return d
        y = y * x
    return None


def is_rational(x: CycloNum):
    """Rational value of x, or None if x has a nonconstant coordinate."""
    if any(x.coeffs[1:]):
        return None
    return x.coeffs[0]


def is_integer(x: CycloNum):
    """Integer value of x, or None."""
    r = is_rational(x)
    if r is None or r.denominator != 1:
        return None
    return int(r.numerator)


def _sqrt_prime(p: int) -> CycloNum:
    """Square root of a prime, built from quadratic Gauss sums."""
    if p == 2:
        return root_of_unity(8, 1) + root_of_unity(8, 7)
    g = zero(p)
    for i in range(p):
        g = g + root_of_unity(p, (i * i) % p)
    if p % 4 == 1:
        return g
    return g / root_of_unity(4, 1)


def sqrt_integer(n: int) -> CycloNum:
    """An exact element whose square is n, at conductor dividing 8n."""
    n = int(n)
    if n < 1:
        raise ValueError(f"need a positive integer, got {n}")
    k = 1
    odd_primes = []
    for p, e in factorize(n):
        k *= p ** (e // 2)
        if e % 2:
            odd_primes.append(p)
    result = from_rational(k)
    for p in odd_primes:
        result = result * _sqrt_prime(p)
    return result


def jacobi_symbol(q: int, n: int) -> int:
    """Jacobi symbol (q|n) for odd positive n, by quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise BadModulus(f"modulus must be odd and positive, got {n}")
    q %= n
    sign = 1
    while True:
        if n == 1:
            return sign
        if q == 0:
            return 0
        while q % 4 == 0:
            q //= 4
        if q % 2 == 0:
            q //= 2
            if n % 8 in (3, 5):
                sign = -sign
        if q == 1:
            return sign
        if q % 4 == 3 and n % 4 == 3:
            sign = -sign
        q, n = n % q, q


# -- serialization -----------------------------------------------------------


def to_json(x: CycloNum) -> dict:
    """Wire form {"conductor": m, "coeffs": ["p/q", ...]} with phi(m)
    entries; denominators of 1 are omitted from the strings."""
    return {
        "conductor": x.conductor,
        "coeffs": [str(c) for c in x.coeffs],
    }


def from_json(obj) -> CycloNum:
    if not isinstance(obj, dict):
        raise ValueError("expected an object with conductor and coeffs")
    m = obj.get("conductor")
    coeffs = obj.get("coeffs")
    if not isinstance(m, int) or m < 1:
        raise ValueError("conductor must be a positive integer")
    if not isinstance(coeffs, list):
        raise ValueError("coeffs must be a list")
    phi = euler_phi(m)
    if len(coeffs) != phi:
        raise ValueError(f"need {phi} coefficients at conductor {m}")
    vals = []
    for c in coeffs:
        if isinstance(c, bool) or not isinstance(c, (int, str)):
            raise ValueError(f"coefficient {c!r} is not an integer or string")
        vals.append(_Q(c))
    return CycloNum(m, vals)
