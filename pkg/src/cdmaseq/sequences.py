"""Periodic binary sequences and the base sequence generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import HallNotDefined, NonPrimitiveModulus, NotAnOddPrime, SequenceDesignError
from .fields import PRIMITIVE_POLYNOMIALS, Poly2, is_prime, is_primitive, multiplicative_order


@dataclass(frozen=True, eq=False)
class BinarySequence:
    """One period of a binary sequence.

    ``bits`` is a read-only uint8 array over {0, 1}. The bipolar view maps
    bit b to (-1)^b.
    """

    bits: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.bits, dtype=np.uint8).ravel()
        if arr.size < 1:
            raise SequenceDesignError("a sequence needs at least one element")
        if np.any(arr > 1):
            raise SequenceDesignError("sequence entries must be 0 or 1")
        arr.setflags(write=False)
        object.__setattr__(self, "bits", arr)

    @classmethod
    def from_string(cls, text: str) -> BinarySequence:
        text = "".join(text.split()).replace(",", "")
        if not text or set(text) - {"0", "1"}:
            raise SequenceDesignError(f"not a 0/1 string: {text[:20]!r}")
        return cls(np.frombuffer(text.encode(), dtype=np.uint8) - ord("0"))

    def __len__(self) -> int:
        return int(self.bits.size)

    def __iter__(self):
        return (int(b) for b in self.bits)

    def __getitem__(self, i: int) -> int:
        return int(self.bits[i % len(self)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinarySequence):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash(self.bits.tobytes())

    def __str__(self) -> str:
        return (self.bits + ord("0")).tobytes().decode()

    def __repr__(self) -> str:
        s = str(self)
        return f"BinarySequence({s if len(s) <= 40 else s[:37] + '...'}, L={len(self)})"

    def __xor__(self, other: BinarySequence) -> BinarySequence:
        if len(self) != len(other):
            raise SequenceDesignError("length mismatch")
        return BinarySequence(self.bits ^ other.bits)

    @property
    def weight(self) -> int:
        return int(self.bits.sum())

    def bipolar(self) -> np.ndarray:
        return 1 - 2 * self.bits.astype(np.int64)

    @cached_property
    def packed(self) -> int:
        """Bits as a Python int with bit i = s_i."""
        return int.from_bytes(np.packbits(self.bits, bitorder="little").tobytes(), "little")

    def is_constant(self) -> bool:
        return bool(np.all(self.bits == self.bits[0]))


def shift(s: BinarySequence, tau: int) -> BinarySequence:
    """Left cyclic shift: result[i] = s[(i + tau) mod L]."""
    return BinarySequence(np.roll(s.bits, -(tau % len(s))))


def decimate(s: BinarySequence, n: int) -> BinarySequence:
    """result[i] = s[n*i mod L]."""
    if n < 1:
        raise SequenceDesignError("decimation factor must be >= 1")
    L = len(s)
    return BinarySequence(s.bits[(np.arange(L, dtype=np.int64) * n) % L])


def complement(s: BinarySequence) -> BinarySequence:
    return BinarySequence(s.bits ^ 1)


def m_sequence(modulus: Poly2 | int, seed=None) -> BinarySequence:
    """Maximal-length LFSR sequence.

    ``modulus`` is either a primitive Poly2 of degree k or the degree k
    itself (the built-in polynomial is used). The sequence obeys
    s[i+k] = sum_{j<k} c_j s[i+j] where c_j are the modulus coefficients.
    The default seed is 0...01.
    """
    if isinstance(modulus, int):
        modulus = PRIMITIVE_POLYNOMIALS[modulus]
    if not is_primitive(modulus):
        raise NonPrimitiveModulus(f"{modulus} is not primitive")
    k = int(modulus.degree)
    if seed is None:
        seed = [0] * (k - 1) + [1]
    elif isinstance(seed, str):
        seed = [int(c) for c in seed]
    seed = [int(b) & 1 for b in seed]
    if len(seed) != k:
        raise SequenceDesignError(f"seed must have {k} bits")
    if not any(seed):
        raise SequenceDesignError("seed must be nonzero")
    n = (1 << k) - 1
    taps = [j for j in range(k) if (modulus.bits >> j) & 1]
    # Fibonacci register held as an int: bit j is s[i+j].
    state = sum(b << j for j, b in enumerate(seed))
    tapmask = sum(1 << j for j in taps)
    out = np.empty(n, dtype=np.uint8)
    for i in range(n):
        out[i] = state & 1
        fb = (state & tapmask).bit_count() & 1
        state = (state >> 1) | (fb << (k - 1))
    return BinarySequence(out)


def legendre(p: int) -> BinarySequence:
    """s_0 = 0 and s_i = 1 exactly when i is a nonzero quadratic residue mod p."""
    if p < 3 or not is_prime(p):
        raise NotAnOddPrime(f"{p} is not an odd prime")
    bits = np.zeros(p, dtype=np.uint8)
    bits[(np.arange(1, p, dtype=np.int64) ** 2) % p] = 1
    return BinarySequence(bits)


def hall_parameter(p: int) -> int | None:
    """Return a with p = 4a^2 + 27, or None."""
    if p < 27 or (p - 27) % 4:
        return None
    a2 = (p - 27) // 4
    a = int(round(a2 ** 0.5))
    return a if a * a == a2 else None


def hall(p: int) -> BinarySequence:
    """Hall sextic residue sequence: indicator of C0 u C1 u C3.

    The classes are C_i = {g^(6j+i)}, with g the smallest primitive root
    for which 3 lies in C1; only that normalisation gives a difference set.
    """
    if not is_prime(p) or hall_parameter(p) is None:
        raise HallNotDefined(f"{p} is not a prime of the form 4a^2+27")
    for g in range(2, p):
        if multiplicative_order(g, p) == p - 1 and _log_mod(3, g, p) % 6 == 1:
            break
    else:  # pragma: no cover - excluded by the theory of Hall sets
        raise HallNotDefined(f"no generator puts 3 in the first sextic class mod {p}")
    bits = np.zeros(p, dtype=np.uint8)
    x = 1
    for e in range(p - 1):
        if e % 6 in (0, 1, 3):
            bits[x] = 1
        x = x * g % p
    return BinarySequence(bits)


def _log_mod(a: int, g: int, p: int) -> int:
    x = 1
    for e in range(p - 1):
        if x == a % p:
            return e
        x = x * g % p
    raise ValueError(f"{a} is not a power of {g} mod {p}")


def is_pseudonoise(s: BinarySequence) -> bool:
    """True when every off-peak bipolar autocorrelation equals -1."""
    from .analysis import autocorrelation_spectrum

    spec = autocorrelation_spectrum(s)
    return bool(np.all(spec[1:] == -1))
