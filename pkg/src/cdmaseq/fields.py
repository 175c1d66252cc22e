"""Exact arithmetic over GF(2)[x], GF(2^k), Z_p and GF(p^2).

Polynomials over GF(2) and elements of GF(2^k) are both carried as Python
ints used as bitsets: bit ``i`` holds the coefficient of ``x^i`` (or of
``alpha^i`` for field elements).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import LogOfZero, NonPrimitiveModulus, NotAnOddPrime, SequenceDesignError

# Degree of the zero polynomial. Comparisons work, arithmetic is never done on it.
ZERO_DEGREE = -math.inf

MAX_FIELD_DEGREE = 24


# --------------------------------------------------------------------------
# small number theory helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def multiplicative_order(a: int, p: int) -> int:
    order = p - 1
    for q in prime_factors(p - 1):
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


# --------------------------------------------------------------------------
# GF(2)[x]


def _clmul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    out = 0
    while b:
        low = b & -b
        out ^= a << (low.bit_length() - 1)
        b ^= low
    return out


def _clmod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _cldivmod(a: int, m: int) -> tuple[int, int]:
    dm = m.bit_length()
    q = 0
    while a.bit_length() >= dm:
        s = a.bit_length() - dm
        q |= 1 << s
        a ^= m << s
    return q, a


def _clpowmod(base: int, e: int, m: int) -> int:
    result = 1
    base = _clmod(base, m)
    while e:
        if e & 1:
            result = _clmod(_clmul(result, base), m)
        base = _clmod(_clmul(base, base), m)
        e >>= 1
    return _clmod(result, m)


_TERM = re.compile(r"^(?:(1)|x(?:\^(\d+))?)$")


@dataclass(frozen=True, order=True)
class Poly2:
    """Polynomial over GF(2); ``bits`` bit i is the coefficient of x^i."""

    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("coefficient bitset must be non-negative")

    @classmethod
    def from_coefficients(cls, coeffs) -> Poly2:
        """Build from an ascending coefficient iterable (c_0, c_1, ...)."""
        bits = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                bits |= 1 << i
        return cls(bits)

    @classmethod
    def from_exponents(cls, exponents) -> Poly2:
        bits = 0
        for e in exponents:
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def parse(cls, text: str) -> Poly2:
        """Parse ``"1101"`` (ascending bit string) or ``"x^3+x+1"``."""
        text = text.strip().replace(" ", "")
        if not text:
            raise ValueError("empty polynomial text")
        if set(text) <= {"0", "1"}:
            return cls.from_coefficients(int(ch) for ch in text)
        bits = 0
        for term in text.split("+"):
            m = _TERM.match(term)
            if m is None:
                raise ValueError(f"cannot parse polynomial term {term!r}")
            if m.group(1):
                bits ^= 1
            else:
                bits ^= 1 << int(m.group(2) or 1)
        return cls(bits)

    @property
    def degree(self) -> int | float:
        return self.bits.bit_length() - 1 if self.bits else ZERO_DEGREE

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def coefficients(self) -> list[int]:
        """Ascending coefficient list; empty for the zero polynomial."""
        return [(self.bits >> i) & 1 for i in range(self.bits.bit_length())]

    def exponents(self) -> list[int]:
        """Exponents with a nonzero coefficient, highest first."""
        return [i for i in range(self.bits.bit_length() - 1, -1, -1) if (self.bits >> i) & 1]

    def to_bitstring(self) -> str:
        return "".join(str(c) for c in self.coefficients()) or "0"

    def __str__(self) -> str:
        if not self.bits:
            return "0"
        terms = []
        for e in self.exponents():
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return "+".join(terms)

    def __add__(self, other: Poly2) -> Poly2:
        return Poly2(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: Poly2) -> Poly2:
        return Poly2(_clmul(self.bits, other.bits))

    def __divmod__(self, other: Poly2) -> tuple[Poly2, Poly2]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q, r = _cldivmod(self.bits, other.bits)
        return Poly2(q), Poly2(r)

    def __floordiv__(self, other: Poly2) -> Poly2:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly2) -> Poly2:
        return divmod(self, other)[1]

    def reciprocal(self) -> Poly2:
        """x^deg * p(1/x): the coefficient list reversed."""
        if not self.bits:
            return self
        n = self.bits.bit_length()
        return Poly2(int(format(self.bits, f"0{n}b")[::-1], 2))

    def substitute_power(self, n: int) -> Poly2:
        """Return p(x^n)."""
        bits = 0
        for e in self.exponents():
            bits |= 1 << (e * n)
        return Poly2(bits)


def poly_gcd(a: Poly2, b: Poly2) -> Poly2:
    """Greatest common divisor in GF(2)[x] (monic by construction)."""
    x, y = a.bits, b.bits
    while y:
        x, y = y, _clmod(x, y)
    return Poly2(x)


# --------------------------------------------------------------------------
# GF(2^k)

# One primitive polynomial per degree, low-weight choices.
PRIMITIVE_POLYNOMIALS: dict[int, Poly2] = {
    k: Poly2.from_exponents(exps)
    for k, exps in {
        2: (2, 1, 0),
        3: (3, 1, 0),
        4: (4, 1, 0),
        5: (5, 2, 0),
        6: (6, 1, 0),
        7: (7, 1, 0),
        8: (8, 4, 3, 2, 0),
        9: (9, 4, 0),
        10: (10, 3, 0),
        11: (11, 2, 0),
        12: (12, 6, 4, 1, 0),
        13: (13, 4, 3, 1, 0),
        14: (14, 10, 6, 1, 0),
        15: (15, 1, 0),
        16: (16, 12, 3, 1, 0),
        17: (17, 3, 0),
        18: (18, 7, 0),
        19: (19, 5, 2, 1, 0),
        20: (20, 3, 0),
        21: (21, 2, 0),
        22: (22, 1, 0),
        23: (23, 5, 0),
        24: (24, 7, 2, 1, 0),
    }.items()
}


def is_primitive(modulus: Poly2) -> bool:
    """True when x has multiplicative order 2^k - 1 modulo ``modulus``."""
    k = modulus.degree
    if modulus.is_zero or k < 1 or not modulus.bits & 1:
        return False
    n = (1 << k) - 1
    if _clpowmod(0b10, n, modulus.bits) != 1:
        return False
    return all(_clpowmod(0b10, n // q, modulus.bits) != 1 for q in prime_factors(n))


@dataclass(frozen=True, eq=False)
class BinaryFieldTable:
    """Exp/log tables for GF(2^k) generated by the root alpha of ``modulus``."""

    k: int
    modulus: Poly2
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        """Size of the multiplicative group, 2^k - 1."""
        return (1 << self.k) - 1

    def alpha_power(self, i: int) -> int:
        return int(self.exp[i % self.order])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % self.order])

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 0
        return int(self.exp[(int(self.log[a]) * e) % self.order])

    def inverse(self, a: int) -> int:
        return self.power(a, -1)


def _field_mul(a: int, b: int, modulus: int) -> int:
    return _clmod(_clmul(a, b), modulus)


def build_binary_field(k: int, modulus: Poly2 | None = None) -> BinaryFieldTable:
    """Build exp/log tables for GF(2^k).

    Raises:
        NonPrimitiveModulus: if the modulus root has order below 2^k - 1.
    """
    if not 2 <= k <= MAX_FIELD_DEGREE:
        raise SequenceDesignError(f"field degree k={k} outside 2..{MAX_FIELD_DEGREE}")
    if modulus is None:
        modulus = PRIMITIVE_POLYNOMIALS[k]
    if modulus.degree != k:
        raise SequenceDesignError(f"modulus {modulus} does not have degree {k}")
    return _build_binary_field(k, modulus)


@lru_cache(maxsize=32)
def _build_binary_field(k: int, modulus: Poly2) -> BinaryFieldTable:
    if not is_primitive(modulus):
        raise NonPrimitiveModulus(f"{modulus} is not primitive over GF(2)")
    n = (1 << k) - 1
    m = modulus.bits
    exp = np.zeros(n, dtype=np.int64)
    exp[0] = 1
    filled = 1
    # Doubling: exp[f:2f] = alpha^f * exp[0:f]; multiplication by a fixed
    # element is GF(2)-linear, so it is applied bit-plane by bit-plane.
    while filled < n:
        step = min(filled, n - filled)
        c = _clpowmod(0b10, filled, m)
        src = exp[:step]
        out = np.zeros(step, dtype=np.int64)
        for j in range(k):
            out ^= ((src >> j) & 1) * _field_mul(c, 1 << j, m)
        exp[filled:filled + step] = out
        filled += step
    log = np.full(n + 1, -1, dtype=np.int64)
    log[exp] = np.arange(n, dtype=np.int64)
    exp.setflags(write=False)
    log.setflags(write=False)
    return BinaryFieldTable(k, modulus, exp, log)


def discrete_log(x: int, table: BinaryFieldTable) -> int:
    if x == 0:
        raise LogOfZero("discrete log of zero is undefined")
    return int(table.log[x])


def trace_to_subfield(x: int, table: BinaryFieldTable, sub_k: int) -> int:
    """Relative trace GF(2^k) -> GF(2^sub_k): sum of x^(2^(sub_k*i))."""
    if sub_k < 1 or table.k % sub_k:
        raise SequenceDesignError(f"sub_k={sub_k} does not divide k={table.k}")
    if x == 0:
        return 0
    lx = int(table.log[x])
    n = table.order
    acc = 0
    for i in range(table.k // sub_k):
        acc ^= int(table.exp[(lx << (sub_k * i)) % n])
    return acc


def trace_vector(xs: np.ndarray, table: BinaryFieldTable, sub_k: int) -> np.ndarray:
    """Vectorized :func:`trace_to_subfield` over an array of field elements."""
    if sub_k < 1 or table.k % sub_k:
        raise SequenceDesignError(f"sub_k={sub_k} does not divide k={table.k}")
    xs = np.asarray(xs, dtype=np.int64)
    nz = xs != 0
    lx = table.log[np.where(nz, xs, 1)]
    acc = np.zeros_like(xs)
    for i in range(table.k // sub_k):
        acc ^= table.exp[(lx * pow(2, sub_k * i, table.order)) % table.order]
    return np.where(nz, acc, 0)


# --------------------------------------------------------------------------
# Z_p and GF(p^2)


def _require_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise NotAnOddPrime(f"{p} is not an odd prime")


@dataclass(frozen=True)
class PrimeField:
    p: int
    g: int

    def log_table(self) -> dict[int, int]:
        """Map x -> log_g(x) for x in Z_p^*."""
        out, x = {}, 1
        for i in range(self.p - 1):
            out[x] = i
            x = x * self.g % self.p
        return out


def primitive_root(p: int) -> int:
    """Smallest generator of Z_p^*."""
    _require_odd_prime(p)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in prime_factors(p - 1)):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


def prime_field(p: int) -> PrimeField:
    return PrimeField(p, primitive_root(p))


def is_quadratic_residue(a: int, p: int) -> bool:
    a %= p
    return a != 0 and pow(a, (p - 1) // 2, p) == 1


@dataclass(frozen=True)
class QuadExtField:
    """GF(p^2) as pairs (a, b) = a + b*x modulo x^2 - t."""

    p: int
    t: int
    theta: tuple[int, int]

    def mul(self, u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
        p = self.p
        return ((u[0] * v[0] + self.t * u[1] * v[1]) % p, (u[0] * v[1] + u[1] * v[0]) % p)

    def power(self, u: tuple[int, int], e: int) -> tuple[int, int]:
        result = (1, 0)
        while e:
            if e & 1:
                result = self.mul(result, u)
            u = self.mul(u, u)
            e >>= 1
        return result

    def theta_powers(self, count: int) -> list[tuple[int, int]]:
        out, x = [], (1, 0)
        for _ in range(count):
            out.append(x)
            x = self.mul(x, self.theta)
        return out


def build_quad_ext(p: int) -> QuadExtField:
    """Pick the smallest non-residue t and the first primitive a + b*x."""
    _require_odd_prime(p)
    t = next(t for t in range(2, p) if not is_quadratic_residue(t, p))
    n = p * p - 1
    probe = QuadExtField(p, t, (0, 1))
    for a in range(p):
        for b in range(1, p):
            if all(probe.power((a, b), n // q) != (1, 0) for q in prime_factors(n)):
                return QuadExtField(p, t, (a, b))
    raise AssertionError("unreachable: GF(p^2)^* is cyclic")
