"""Periodic correlation, linear complexity and the recursion-polynomial check."""

from __future__ import annotations

import json
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .arrays import BinaryArray, fold
from .errors import DimensionMismatch, OracleDisagreement, SequenceDesignError
from .fields import Poly2, poly_gcd
from .sequences import BinarySequence

log = logging.getLogger(__name__)


# --------------------------------------------------------------------------
# correlation


def _rotl(x: int, tau: int, L: int, mask: int) -> int:
    """Packed left cyclic shift: bit i of the result is bit (i + tau) mod L."""
    tau %= L
    if tau == 0:
        return x
    return ((x >> tau) | (x << (L - tau))) & mask


def autocorrelation(s: BinarySequence, tau: int) -> int:
    return crosscorrelation(s, s, tau)


def crosscorrelation(a, b, *shifts: int) -> int:
    """Bipolar periodic cross-correlation.

    For sequences: ``crosscorrelation(a, b, tau)`` is sum_i a_i b_{i+tau}.
    For arrays: ``crosscorrelation(A, B, h, v)`` sums a_ij * b_{i+v, j+h}
    with h the horizontal (column) and v the vertical (row) shift.
    """
    if isinstance(a, BinaryArray):
        h, v = shifts
        return array_crosscorrelation(a, b, h, v)
    (tau,) = shifts
    L = len(a)
    if len(b) != L:
        raise DimensionMismatch(f"length mismatch {L} vs {len(b)}")
    mask = (1 << L) - 1
    return L - 2 * (a.packed ^ _rotl(b.packed, tau, L, mask)).bit_count()


def array_crosscorrelation(a: BinaryArray, b: BinaryArray, h: int, v: int) -> int:
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    rolled = np.roll(b.cells, (-(v % b.rows), -(h % b.cols)), axis=(0, 1))
    return a.cells.size - 2 * int(np.count_nonzero(a.cells ^ rolled))


def array_autocorrelation(a: BinaryArray, h: int, v: int) -> int:
    return array_crosscorrelation(a, a, h, v)


def cross_spectrum(a: BinarySequence, b: BinarySequence, method: str = "packed") -> np.ndarray:
    """All L values crosscorrelation(a, b, tau), tau = 0..L-1.

    ``method="packed"`` uses XOR/popcount on packed ints; ``"fft"`` uses
    a float FFT rounded to integers. Both are exact for L below ~10^7.
    """
    L = len(a)
    if len(b) != L:
        raise DimensionMismatch(f"length mismatch {L} vs {len(b)}")
    if method == "fft":
        fa = np.fft.rfft(a.bipolar().astype(np.float64))
        fb = np.fft.rfft(b.bipolar().astype(np.float64))
        return np.rint(np.fft.irfft(np.conj(fa) * fb, n=L)).astype(np.int64)
    if method != "packed":
        raise ValueError(f"unknown correlation method {method!r}")
    mask = (1 << L) - 1
    x, y = a.packed, b.packed
    out = np.empty(L, dtype=np.int64)
    for tau in range(L):
        out[tau] = L - 2 * (x ^ _rotl(y, tau, L, mask)).bit_count()
    return out


def autocorrelation_spectrum(s: BinarySequence, method: str = "packed") -> np.ndarray:
    return cross_spectrum(s, s, method)


def array_cross_spectrum(a: BinaryArray, b: BinaryArray) -> np.ndarray:
    """theta[v, h] for every vertical shift v and horizontal shift h (2-D FFT)."""
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    fa = np.fft.fft2(a.bipolar().astype(np.float64))
    fb = np.fft.fft2(b.bipolar().astype(np.float64))
    return np.rint(np.fft.ifft2(np.conj(fa) * fb).real).astype(np.int64)


@dataclass
class CorrelationReport:
    peak: int
    max_offpeak_auto: int
    max_cross: int
    value_histogram: dict[int, int]
    argmax_auto: tuple[int, int] | None = None  # (member, shift)
    argmax_cross: tuple[int, int, int] | None = None  # (member a, member b, shift)
    members: int = 0
    length: int = 0

    @property
    def max_correlation(self) -> int:
        return max(self.max_offpeak_auto, self.max_cross)

    @property
    def support(self) -> set[int]:
        return set(self.value_histogram)

    def to_dict(self) -> dict:
        return {
            "peak": self.peak,
            "max_offpeak_auto": self.max_offpeak_auto,
            "max_cross": self.max_cross,
            "histogram": {str(k): v for k, v in sorted(self.value_histogram.items())},
            "argmax_auto": list(self.argmax_auto) if self.argmax_auto else None,
            "argmax_cross": list(self.argmax_cross) if self.argmax_cross else None,
            "members": self.members,
            "length": self.length,
        }


def _pair_spectrum(args):
    a, b, method = args
    return cross_spectrum(BinarySequence(a), BinarySequence(b), method)


def family_correlation_report(members, method: str = "packed", workers: int = 1) -> CorrelationReport:
    """Exhaustive scan over unordered member pairs and all shifts.

    Self pairs skip tau = 0. ``members`` may be a SequenceFamily or any
    sequence of BinarySequence. Results do not depend on ``workers``.
    """
    members = list(getattr(members, "members", members))
    if not members:
        raise SequenceDesignError("empty family")
    L = len(members[0])
    if any(len(m) != L for m in members):
        raise DimensionMismatch("family members differ in length")
    pairs = [(i, j) for i in range(len(members)) for j in range(i, len(members))]
    jobs = [(members[i].bits, members[j].bits, method) for i, j in pairs]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            spectra = list(pool.map(_pair_spectrum, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        spectra = [_pair_spectrum(job) for job in jobs]

    hist: Counter = Counter()
    best_auto, arg_auto = 0, None
    best_cross, arg_cross = 0, None
    for (i, j), spec in zip(pairs, spectra):
        if i == j:
            vals = spec[1:]
            if vals.size:
                t = int(np.argmax(np.abs(vals)))
                if arg_auto is None or abs(int(vals[t])) > best_auto:
                    best_auto, arg_auto = abs(int(vals[t])), (i, t + 1)
        else:
            vals = spec
            t = int(np.argmax(np.abs(vals)))
            if arg_cross is None or abs(int(vals[t])) > best_cross:
                best_cross, arg_cross = abs(int(vals[t])), (i, j, t)
        uniq, counts = np.unique(vals, return_counts=True)
        for val, cnt in zip(uniq.tolist(), counts.tolist()):
            hist[val] += cnt
    return CorrelationReport(
        peak=L,
        max_offpeak_auto=best_auto,
        max_cross=best_cross,
        value_histogram=dict(sorted(hist.items())),
        argmax_auto=arg_auto,
        argmax_cross=arg_cross,
        members=len(members),
        length=L,
    )


def array_family_correlation_report(arrays: Sequence[BinaryArray]) -> CorrelationReport:
    """Same scan as :func:`family_correlation_report`, in the 2-D domain."""
    hist: Counter = Counter()
    best_auto = best_cross = 0
    for i in range(len(arrays)):
        for j in range(i, len(arrays)):
            spec = array_cross_spectrum(arrays[i], arrays[j]).ravel()
            if i == j:
                spec = spec[1:]
                best_auto = max(best_auto, int(np.abs(spec).max(initial=0)))
            else:
                best_cross = max(best_cross, int(np.abs(spec).max()))
            uniq, counts = np.unique(spec, return_counts=True)
            for val, cnt in zip(uniq.tolist(), counts.tolist()):
                hist[val] += cnt
    return CorrelationReport(
        peak=arrays[0].cells.size,
        max_offpeak_auto=best_auto,
        max_cross=best_cross,
        value_histogram=dict(sorted(hist.items())),
        members=len(arrays),
        length=arrays[0].cells.size,
    )


# --------------------------------------------------------------------------
# linear complexity


def berlekamp_massey(bits) -> tuple[int, Poly2]:
    """Shortest LFSR for a finite binary sequence.

    Returns ``(l, c)`` with c(x) = 1 + c_1 x + ... + c_l x^l such that
    s_i = c_1 s_{i-1} + ... + c_l s_{i-l} for every l <= i < n.

    The sequence is packed into one int in reverse order so each
    discrepancy is a single AND plus popcount.
    """
    if isinstance(bits, BinarySequence):
        arr = bits.bits
    else:
        arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.uint8)
    n = int(arr.size)
    if n == 0:
        raise SequenceDesignError("Berlekamp-Massey needs a nonempty input")
    # bit (n-1-i) of rev holds s_i
    rev = int.from_bytes(np.packbits(arr[::-1], bitorder="little").tobytes(), "little")
    c, b = 1, 1
    l, gap = 0, 1
    for i in range(n):
        window = (rev >> (n - 1 - i)) & ((2 << l) - 1)
        if not (c & window).bit_count() & 1:
            gap += 1
            continue
        if 2 * l <= i:
            t = c
            c ^= b << gap
            l, b, gap = i + 1 - l, t, 1
        else:
            c ^= b << gap
            gap += 1
    return l, Poly2(c)


def lfsr_generate(feedback: Poly2, initial, n: int) -> np.ndarray:
    """Run the LFSR with connection polynomial ``feedback`` for ``n`` outputs."""
    l = int(feedback.degree) if not feedback.is_zero else 0
    out = np.zeros(n, dtype=np.uint8)
    init = np.asarray(initial, dtype=np.uint8)[:l]
    out[: min(l, n)] = init[: min(l, n)]
    taps = [j for j in range(1, l + 1) if (feedback.bits >> j) & 1]
    for i in range(l, n):
        acc = 0
        for j in taps:
            acc ^= int(out[i - j])
        out[i] = acc
    return out


def regenerates(bits, l: int, feedback: Poly2) -> bool:
    arr = np.asarray(bits.bits if isinstance(bits, BinarySequence) else bits, dtype=np.uint8)
    if l == 0:
        return not arr.any()
    if feedback.degree > l:
        return False
    # vectorized check of s_i = sum_j c_j s_{i-j}, i >= l
    acc = np.zeros(arr.size - l, dtype=np.uint8)
    for j in range(1, l + 1):
        if (feedback.bits >> j) & 1:
            acc ^= arr[l - j: arr.size - j]
    return bool(np.array_equal(acc, arr[l:]))


def gcd_oracle(s: BinarySequence) -> tuple[int, Poly2]:
    """Complexity from generating functions: c(x) = (x^L + 1) / gcd(x^L + 1, S(x))."""
    L = len(s)
    xl1 = Poly2((1 << L) | 1)
    g = poly_gcd(xl1, Poly2(s.packed))
    conn = xl1 // g
    return int(conn.degree), conn


@dataclass
class ComplexityReport:
    l: int
    feedback: Poly2
    length: int
    oracle_l: int
    minimal_polynomial: Poly2 = field(init=False)

    def __post_init__(self):
        self.minimal_polynomial = self.feedback.reciprocal()

    @property
    def normalized(self) -> Fraction:
        return Fraction(self.l, self.length)

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "length": self.length,
            "normalized": float(self.normalized),
            "normalized_exact": f"{self.l}/{self.length}",
            "oracle_l": self.oracle_l,
            "feedback_polynomial": str(self.feedback),
            "feedback_bits": self.feedback.to_bitstring(),
            "minimal_polynomial": str(self.minimal_polynomial),
        }


def linear_complexity_periodic(s: BinarySequence, check: bool = True) -> ComplexityReport:
    """Linear complexity of the periodic sequence with one period ``s``.

    BM runs on two periods; the result is checked against the gcd oracle
    (which also yields the connection polynomial) unless ``check`` is off.
    """
    two = np.concatenate([s.bits, s.bits])
    l, conn = berlekamp_massey(two)
    if 2 * l > two.size:  # pragma: no cover - l <= L always
        log.warning("BM solution may not be unique: 2l=%d exceeds input length %d", 2 * l, two.size)
    oracle_l = l
    if check:
        oracle_l, oracle_conn = gcd_oracle(s)
        if oracle_l != l or oracle_conn != conn:
            raise OracleDisagreement(
                f"BM gives l={l} ({conn}), gcd oracle gives l={oracle_l} ({oracle_conn})"
            )
    return ComplexityReport(l=l, feedback=conn, length=len(s), oracle_l=oracle_l)


def family_complexity(members, check: bool = True) -> list[ComplexityReport]:
    members = list(getattr(members, "members", members))
    return [linear_complexity_periodic(m, check=check) for m in members]


@dataclass
class ConjectureResult:
    holds: bool
    long_polynomial: Poly2
    column_polynomial: Poly2
    expected_polynomial: Poly2
    n_cols: int
    mirrored: bool  # long matches the reciprocal column polynomial at x^n_cols

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "n_cols": self.n_cols,
            "long_polynomial": str(self.long_polynomial),
            "column_polynomial": str(self.column_polynomial),
            "expected_polynomial": str(self.expected_polynomial),
            "mirrored_match": self.mirrored,
        }


def conjecture_check(long: BinarySequence, column: BinarySequence, n_cols: int) -> ConjectureResult:
    """Test feedback_long(x) == feedback_column(x^n_cols)."""
    long_poly = linear_complexity_periodic(long).feedback
    col_poly = linear_complexity_periodic(column).feedback
    expected = col_poly.substitute_power(n_cols)
    mirrored = long_poly == col_poly.reciprocal().substitute_power(n_cols)
    return ConjectureResult(long_poly == expected, long_poly, col_poly, expected, n_cols, mirrored)


def report_json(kind: str, params: dict, correlation: CorrelationReport | None = None,
                complexity: Iterable[ComplexityReport] | None = None) -> str:
    """Stable JSON text for reports (sorted keys, fixed indentation)."""
    doc: dict = {"kind": kind, "params": params}
    if correlation is not None:
        doc.update(correlation.to_dict())
    if complexity is not None:
        reps = list(complexity)
        best = max(reps, key=lambda r: r.l)
        doc["complexity"] = {
            "max_l": best.l,
            "max_normalized": float(best.normalized),
            "feedback_polynomial": str(best.feedback),
            "feedback_bits": best.feedback.to_bitstring(),
            "per_member_l": [r.l for r in reps],
        }
    return json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n"


def default_workers() -> int:
    env = os.environ.get("CDMASEQ_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1
