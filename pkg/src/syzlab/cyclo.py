"""Exact scalars: arbitrary-precision rationals and cyclotomic numbers.

Rationals are ``fractions.Fraction`` (already reduced, positive
denominator). Irrational values live in Q(zeta_N) represented on the power
basis 1, z, ..., z^(phi(N)-1) modulo the N-th cyclotomic polynomial.
Arithmetic between different conductors lifts both operands to the lcm on
demand; results that turn out rational are demoted to Fraction, so a
Cyclotomic instance produced by arithmetic is always irrational.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import InvalidInput, LimitExceeded

DEFAULT_CONDUCTOR_LIMIT = 64

Scalar = object  # int | Fraction | Cyclotomic


def totient(n: int) -> int:
    count = 0
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            count += 1
    return count


def _poly_trim(coeffs):
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_divmod_exact(num, den):
    """Quotient of integer polynomials known to divide exactly (ascending coeffs)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % den[-1] == 0
        c //= den[-1]
        q[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    assert not _poly_trim(num), "division was not exact"
    return q


@lru_cache(maxsize=None)
def _cyclotomic_poly_cached(n: int):
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divmod_exact(num, _cyclotomic_poly_cached(d))
    return tuple(num)


def cyclotomic_polynomial(n: int, limit: int = DEFAULT_CONDUCTOR_LIMIT):
    """Integer coefficients of the n-th cyclotomic polynomial, ascending degree."""
    if n < 1:
        raise InvalidInput(f"conductor must be positive, got {n}")
    if n > limit:
        raise LimitExceeded(f"conductor {n} exceeds limit {limit}")
    return list(_cyclotomic_poly_cached(n))


def _reduce_mod_phi(coeffs, n):
    """Remainder of a Fraction-coefficient polynomial modulo Phi_n, padded to phi(n)."""
    phi = _cyclotomic_poly_cached(n)
    deg = len(phi) - 1
    coeffs = list(coeffs)
    for k in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[k]
        if c:
            for j in range(deg):
                coeffs[k - deg + j] -= c * phi[j]
        coeffs.pop()
    coeffs += [Fraction(0)] * (deg - len(coeffs))
    return [Fraction(c) for c in coeffs]


def _poly_ext_gcd_mod(a, n):
    """u with u*a = 1 modulo Phi_n, both over Q. a must be nonzero mod Phi_n."""
    phi = [Fraction(c) for c in _cyclotomic_poly_cached(n)]
    r0, r1 = phi, _poly_trim([Fraction(c) for c in a])
    s0, s1 = [], [Fraction(1)]
    while r1:
        q = []
        r = list(r0)
        while len(r) >= len(r1):
            c = r[-1] / r1[-1]
            d = len(r) - len(r1)
            while len(q) <= d:
                q.append(Fraction(0))
            q[d] += c
            for j, x in enumerate(r1):
                r[d + j] -= c * x
            _poly_trim(r)
        new_s = list(s0)
        for i, qc in enumerate(q):
            if not qc:
                continue
            for j, sc in enumerate(s1):
                while len(new_s) <= i + j:
                    new_s.append(Fraction(0))
                new_s[i + j] -= qc * sc
        _poly_trim(new_s)
        r0, r1 = r1, r
        s0, s1 = s1, new_s
    assert len(r0) == 1, "element not invertible modulo an irreducible polynomial?"
    inv_lead = 1 / r0[0]
    return [c * inv_lead for c in s0]


class Cyclotomic:
    """Element of Q(zeta_N) on the power basis, fully reduced modulo Phi_N."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        self.conductor = conductor
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != totient(conductor):
            raise InvalidInput(
                f"conductor {conductor} needs {totient(conductor)} coefficients, "
                f"got {len(self.coeffs)}"
            )

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def _normalized(conductor, coeffs):
        """Demote to Fraction when the reduced element is rational."""
        if all(c == 0 for c in coeffs[1:]):
            return coeffs[0] if coeffs else Fraction(0)
        el = Cyclotomic.__new__(Cyclotomic)
        el.conductor = conductor
        el.coeffs = tuple(coeffs)
        return el

    @staticmethod
    def from_poly(conductor, coeffs):
        return Cyclotomic._normalized(conductor, _reduce_mod_phi(coeffs, conductor))

    def lift(self, m: int):
        """Coefficients of the same element in Q(zeta_m); requires conductor | m."""
        if m == self.conductor:
            return list(self.coeffs)
        if m % self.conductor != 0:
            raise InvalidInput(f"cannot lift conductor {self.conductor} to {m}")
        step = m // self.conductor
        raw = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            raw[i * step] = c
        return _reduce_mod_phi(raw, m)

    def _pair(self, other):
        if isinstance(other, Cyclotomic):
            if other.conductor == self.conductor:
                return self.conductor, list(self.coeffs), list(other.coeffs)
            m = lcm(self.conductor, other.conductor)
            return m, self.lift(m), other.lift(m)
        if isinstance(other, (int, Fraction)):
            rc = [Fraction(0)] * len(self.coeffs)
            rc[0] = Fraction(other)
            return self.conductor, list(self.coeffs), rc
        return None

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        n, a, b = p
        return Cyclotomic._normalized(n, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._normalized(self.conductor, [-c for c in self.coeffs])

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        n, a, b = p
        return Cyclotomic._normalized(n, [x - y for x, y in zip(a, b)])

    def __rsub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        n, a, b = p
        return Cyclotomic._normalized(n, [y - x for x, y in zip(a, b)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Fraction(0)
            return Cyclotomic._normalized(
                self.conductor, [c * other for c in self.coeffs]
            )
        p = self._pair(other)
        if p is None:
            return NotImplemented
        n, a, b = p
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
        return Cyclotomic._normalized(n, _reduce_mod_phi(prod, n))

    __rmul__ = __mul__

    def inverse(self):
        u = _poly_ext_gcd_mod(self.coeffs, self.conductor)
        return Cyclotomic._normalized(self.conductor, _reduce_mod_phi(u, self.conductor))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while k:
            if k & 1:
                result = base * result
            base = base * base
            k >>= 1
        return result

    def galois(self, k: int):
        """Image under zeta -> zeta^k for gcd(k, N) = 1."""
        k %= self.conductor
        if gcd(k, self.conductor) != 1:
            raise InvalidInput(f"{k} is not coprime to conductor {self.conductor}")
        raw = [Fraction(0)] * self.conductor
        for i, c in enumerate(self.coeffs):
            raw[(i * k) % self.conductor] += c
        return Cyclotomic._normalized(
            self.conductor, _reduce_mod_phi(raw, self.conductor)
        )

    def conjugate(self):
        return self.galois(self.conductor - 1)

    # -- comparison -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            # Arithmetic demotes rational values, but hand-built instances
            # may still hold one.
            return all(c == 0 for c in self.coeffs[1:]) and self.coeffs[0] == other
        if isinstance(other, Cyclotomic):
            n, a, b = self._pair(other)
            return a == b
        return NotImplemented

    __hash__ = None  # values are not dict keys; use wire encoding for that

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z{self.conductor}^{i}" if i else f"{c}")
        return " + ".join(terms) if terms else "0"


def zeta(n: int, limit: int = DEFAULT_CONDUCTOR_LIMIT) -> Scalar:
    """A primitive n-th root of unity."""
    cyclotomic_polynomial(n, limit)  # conductor limit check
    if n == 1:
        return Fraction(1)
    if n == 2:
        return Fraction(-1)
    coeffs = [Fraction(0)] * totient(n)
    coeffs[1] = Fraction(1)
    return Cyclotomic(n, coeffs)


def as_rational(x: Scalar):
    """The Fraction value of x, or None when x is irrational."""
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Cyclotomic):
        if all(c == 0 for c in x.coeffs[1:]):
            return x.coeffs[0]
        return None
    raise TypeError(f"not a scalar: {x!r}")


def as_integer(x: Scalar):
    """The int value of x, or None when x is not a rational integer."""
    q = as_rational(x)
    if q is None or q.denominator != 1:
        return None
    return q.numerator


def conjugate(x: Scalar) -> Scalar:
    if isinstance(x, Cyclotomic):
        return x.conjugate()
    return x


def bit_size(x: Scalar) -> int:
    """Rough coefficient size, used for pivot selection."""
    if isinstance(x, int):
        return x.bit_length()
    if isinstance(x, Fraction):
        return x.numerator.bit_length() + x.denominator.bit_length()
    return sum(
        c.numerator.bit_length() + c.denominator.bit_length() for c in x.coeffs
    )


def scalar_key(x: Scalar):
    """Canonical hashable key; equal scalars share a key."""
    q = as_rational(x)
    if q is not None:
        return (q.numerator, q.denominator)
    return (x.conductor, tuple((c.numerator, c.denominator) for c in x.coeffs))


# -- wire encoding ---------------------------------------------------------------
# A bare [num, den] pair is a rational; cyclotomics carry their conductor.


def encode_scalar(x: Scalar):
    q = as_rational(x)
    if q is not None:
        return [q.numerator, q.denominator]
    return {
        "conductor": x.conductor,
        "coeffs": [[c.numerator, c.denominator] for c in x.coeffs],
    }


def decode_scalar(obj, limit: int = DEFAULT_CONDUCTOR_LIMIT) -> Scalar:
    if isinstance(obj, bool):
        raise InvalidInput(f"not a scalar encoding: {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, list):
        if len(obj) != 2 or not all(isinstance(v, int) for v in obj):
            raise InvalidInput(f"rational encoding must be [num, den], got {obj!r}")
        if obj[1] <= 0:
            raise InvalidInput(f"denominator must be positive in {obj!r}")
        return Fraction(obj[0], obj[1])
    if isinstance(obj, dict):
        try:
            n = obj["conductor"]
            coeffs = obj["coeffs"]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"bad cyclotomic encoding: {obj!r}") from exc
        if not isinstance(n, int) or n < 1:
            raise InvalidInput(f"bad conductor in {obj!r}")
        cyclotomic_polynomial(n, limit)
        vals = [decode_scalar(c, limit) for c in coeffs]
        if len(vals) != totient(n):
            raise InvalidInput(
                f"conductor {n} needs {totient(n)} coefficients, got {len(vals)}"
            )
        return Cyclotomic._normalized(n, [Fraction(v) for v in vals])
    raise InvalidInput(f"not a scalar encoding: {obj!r}")
