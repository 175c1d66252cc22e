"""Shift-sequence families with Hamming correlation 2 and their sequence families.

Families A, B and C are shift sequences (hop patterns) built from Z_p,
GF(p^2) and Fermat-prime discrete logs. Substituting a pseudonoise column
at the given shifts and unfolding by CRT turns each pattern into a binary
sequence. The converse direction reads hop patterns off Kasami and
No-Kumar arrays.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Optional

import numpy as np

from .arrays import BLANK, DotGrid, ShiftSequence, extract_shift_sequence, fold, rotate_ccw, substitute_columns, to_shift_sequence, unfold
from .errors import DimensionMismatch, FermatPrimeRequired, NotCoprime, SequenceDesignError
from .families import FamilyKind, SequenceFamily, kasami_array_family, kasami_dims, kasami_family, no_kumar_family
from .fields import build_quad_ext, is_prime, prime_field, primitive_root
from .sequences import BinarySequence

HopPattern = ShiftSequence

# 7 x 9 hop patterns as published for the length-63 Kasami set; '-' = no hop.
# Pattern C repeats B verbatim in the source listing.
REFERENCE_HOP_PATTERNS_7x9 = {
    "A": "0,0,3,2,5,6,5,2,3",
    "B": "5,-,-,5,6,4,0,4,6",
    "C": "5,-,-,5,6,4,0,4,6",
    "D": "5,-,4,-,5,0,2,2,0",
    "E": "0,0,1,4,6,-,6,4,1",
    "F": "0,2,3,5,3,2,0,1,1",
    "G": "3,0,3,-,6,2,2,6,-",
    "H": "5,3,3,5,2,6,4,6,2",
}


def reference_hop_patterns() -> dict[str, ShiftSequence]:
    return {k: ShiftSequence.from_csv(v, 7) for k, v in REFERENCE_HOP_PATTERNS_7x9.items()}


class ShiftKind(str, enum.Enum):
    MT_A = "mt-a"
    MT_B = "mt-b"
    MT_C = "mt-c"
    KASAMI_HOP = "kasami-hop"
    NOKUMAR_HOP = "nokumar-hop"


_SEQUENCE_KIND = {
    ShiftKind.MT_A: FamilyKind.MT_A,
    ShiftKind.MT_B: FamilyKind.MT_B,
    ShiftKind.MT_C: FamilyKind.MT_C,
    ShiftKind.KASAMI_HOP: FamilyKind.KASAMI,
    ShiftKind.NOKUMAR_HOP: FamilyKind.NOKUMAR,
}


@dataclass
class ShiftFamily:
    kind: ShiftKind
    patterns: list[ShiftSequence]
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.patterns:
            raise SequenceDesignError("empty shift family")
        dims = {(p.n_cols, p.row_modulus) for p in self.patterns}
        if len(dims) != 1:
            raise DimensionMismatch(f"patterns disagree on (n_cols, row_modulus): {dims}")

    @property
    def n_cols(self) -> int:
        return self.patterns[0].n_cols

    @property
    def row_modulus(self) -> int:
        return self.patterns[0].row_modulus

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    @cached_property
    def max_coincidence(self) -> int:
        """Largest doubly periodic Hamming coincidence over all pairs, peaks excluded."""
        value = family_max_coincidence(self.patterns)
        self.params["max_coincidence"] = value
        return value

    def to_text(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        head = f"# kind={self.kind.value} cols={self.n_cols} modulus={self.row_modulus} {params}".rstrip()
        return head + "\n" + "".join(p.to_csv() + "\n" for p in self.patterns)

    @classmethod
    def from_text(cls, text: str) -> ShiftFamily:
        kind, modulus, params = None, None, {}
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    k, _, v = tok.partition("=")
                    if k == "kind":
                        kind = ShiftKind(v)
                    elif k == "modulus":
                        modulus = int(v)
                    elif k != "cols":
                        params[k] = v
                continue
            rows.append(line)
        if kind is None or modulus is None:
            raise SequenceDesignError("shift family header must carry kind= and modulus=")
        return cls(kind, [ShiftSequence.from_csv(r, modulus) for r in rows], params)


# --------------------------------------------------------------------------
# Hamming correlation of hop patterns


def _pattern_arrays(p: ShiftSequence) -> tuple[np.ndarray, np.ndarray]:
    vals = np.array([-1 if x is None else x for x in p.values], dtype=np.int64)
    return vals, vals >= 0


def hop_hamming_spectrum(a: ShiftSequence, b: ShiftSequence) -> np.ndarray:
    """H[s, d] = #{j : a[j+s] and b[j] defined, a[j+s] = b[j] + d (mod m)}."""
    if (a.n_cols, a.row_modulus) != (b.n_cols, b.row_modulus):
        raise DimensionMismatch("hop patterns differ in slots or frequency modulus")
    n, m = a.n_cols, a.row_modulus
    av, am = _pattern_arrays(a)
    bv, bm = _pattern_arrays(b)
    out = np.zeros((n, m), dtype=np.int64)
    for s in range(n):
        ra, rm = np.roll(av, -s), np.roll(am, -s)
        both = rm & bm
        out[s] = np.bincount((ra[both] - bv[both]) % m, minlength=m)
    return out


def hop_hamming_max(a: ShiftSequence, b: ShiftSequence, exclude_trivial: bool = True) -> tuple[int, tuple[int, int]]:
    """Maximum coincidence and its (time shift, frequency shift)."""
    spec = hop_hamming_spectrum(a, b)
    if exclude_trivial and a == b:
        spec[0, 0] = -1
    flat = int(np.argmax(spec))
    s, d = divmod(flat, spec.shape[1])
    return int(spec[s, d]), (s, d)


def family_max_coincidence(patterns) -> int:
    best = 0
    for i, j in combinations_with_replacement(range(len(patterns)), 2):
        a, b = patterns[i], patterns[j]
        spec = hop_hamming_spectrum(a, b)
        if i == j:
            spec[0, 0] = 0
        best = max(best, int(spec.max()))
    return best


# --------------------------------------------------------------------------
# Family A: exponential quadratic over Z_p


def family_a_shifts(p: int) -> ShiftFamily:
    """Member b: f_b(j) = b*g^(2j) + g^j mod p, j = 0..p-2, for b in Z_p."""
    if p < 5 or not is_prime(p):
        raise SequenceDesignError(f"Family A needs a prime p >= 5 (got {p})")
    g = primitive_root(p)
    powers = [pow(g, j, p) for j in range(p - 1)]
    patterns = [
        ShiftSequence(tuple((b * x * x + x) % p for x in powers), p)
        for b in range(p)
    ]
    return ShiftFamily(ShiftKind.MT_A, patterns, {"p": p, "g": g})


# --------------------------------------------------------------------------
# Family B: rational map a/b of theta^j in GF(p^2)


def family_b_base(p: int) -> ShiftSequence:
    """f(j) = a/b for theta^j = a + b x, j = 0..p; BLANK where b = 0."""
    ext = build_quad_ext(p)
    vals: list[Optional[int]] = []
    for a, b in ext.theta_powers(p + 1):
        vals.append(BLANK if b == 0 else a * pow(b, -1, p) % p)
    return ShiftSequence(tuple(vals), p)


def family_b_shifts(p: int) -> ShiftFamily:
    """Members c*f for c in Z_p^*; p - 1 patterns of length p + 1."""
    if p < 3 or not is_prime(p):
        raise SequenceDesignError(f"Family B needs an odd prime (got {p})")
    base = family_b_base(p)
    ext = build_quad_ext(p)
    patterns = [
        ShiftSequence(tuple(None if x is None else c * x % p for x in base.values), p)
        for c in range(1, p)
    ]
    return ShiftFamily(ShiftKind.MT_B, patterns, {"p": p, "t": ext.t, "theta": f"{ext.theta[0]}+{ext.theta[1]}x"})


# --------------------------------------------------------------------------
# Family C: Fermat prime discrete logs, reduced mod 2^n - 1


def _fermat_q(n: int) -> int:
    q = (1 << n) + 1
    if n < 1 or not is_prime(q):
        raise FermatPrimeRequired(f"2^{n}+1 = {q} is not prime")
    return q


def family_c_grid(n: int) -> ShiftSequence:
    """Pre-rotation pattern: e_j = log_g(j) over Z_q, values mod 2^n - 1.

    j = 0 and the single j with log_g(j) = 2^n - 1 are BLANK, leaving one
    dot in every row.
    """
    q = _fermat_q(n)
    rows = (1 << n) - 1
    logs = prime_field(q).log_table()
    vals = [BLANK] + [logs[j] if logs[j] < rows else BLANK for j in range(1, q)]
    return ShiftSequence(tuple(vals), rows)


def family_c_rotated(n: int) -> ShiftSequence:
    """Rotate the pre-rotation dot grid anticlockwise and read it column-wise."""
    return to_shift_sequence(rotate_ccw(DotGrid.from_shift_sequence(family_c_grid(n))))


def family_c_base(n: int) -> ShiftSequence:
    """h(k) = g^k mod q for k = 0..2^n-2.

    Equal to :func:`family_c_rotated` up to a column translate and a
    vertical offset, so both unfold to cyclic shifts of one sequence.
    """
    q = _fermat_q(n)
    g = primitive_root(q)
    return ShiftSequence(tuple(pow(g, k, q) for k in range((1 << n) - 1)), q)


def family_c_shifts(n: int) -> ShiftFamily:
    """The 2^n - 1 cyclic column translates of :func:`family_c_base`."""
    base = family_c_base(n)
    patterns = [base.translate(c) for c in range(base.n_cols)]
    q = base.row_modulus
    return ShiftFamily(ShiftKind.MT_C, patterns, {"n": n, "q": q, "g": primitive_root(q)})


# --------------------------------------------------------------------------
# sequences from shift families


def mt_sequence_family(shifts: ShiftFamily, column: BinarySequence, fill: int = 0) -> SequenceFamily:
    """Substitute ``column`` at every pattern's shifts and unfold by CRT."""
    if len(column) != shifts.row_modulus:
        raise DimensionMismatch(
            f"column length {len(column)} != row modulus {shifts.row_modulus}"
        )
    if math.gcd(shifts.row_modulus, shifts.n_cols) != 1:
        raise NotCoprime(f"gcd({shifts.row_modulus}, {shifts.n_cols}) != 1")
    members = [unfold(substitute_columns(p, column, fill)) for p in shifts.patterns]
    params = dict(shifts.params)
    params.update({"rows": shifts.row_modulus, "cols": shifts.n_cols, "fill": fill})
    return SequenceFamily(_SEQUENCE_KIND[shifts.kind], members, params)


def kasami_hop_family(m: int, source: str = "kasami", r: int = 1) -> ShiftFamily:
    """Hop patterns read off the folded Kasami or No-Kumar members.

    2^m patterns with 2^m + 1 slots over 2^m - 1 frequencies; BLANK marks
    constant columns.
    """
    source = source.lower().replace("-", "")
    if source == "kasami":
        fam, kind = kasami_family(m), ShiftKind.KASAMI_HOP
    elif source == "nokumar":
        fam, kind = no_kumar_family(m, r), ShiftKind.NOKUMAR_HOP
    else:
        raise SequenceDesignError(f"unknown hop source {source!r}")
    u, v = kasami_dims(m)
    base = fam.params["_array_family"].base_column
    patterns = [extract_shift_sequence(fold(s, u, v), base) for s in fam.members]
    params = {"m": m}
    if kind is ShiftKind.NOKUMAR_HOP:
        params["r"] = r
    return ShiftFamily(kind, patterns, params)
