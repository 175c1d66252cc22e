"""Classical CDMA families: Gold, small Kasami, No-Kumar and its generalization."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .arrays import BinaryArray, ShiftSequence, extract_shift_sequence, fold, substitute_columns, unfold
from .errors import GcdNotOne, SequenceDesignError
from .fields import PRIMITIVE_POLYNOMIALS, Poly2, build_binary_field, trace_vector
from .sequences import BinarySequence, complement, decimate, m_sequence, shift


class FamilyKind(str, enum.Enum):
    MSEQ = "mseq"
    LEGENDRE = "legendre"
    HALL = "hall"
    GOLD = "gold"
    KASAMI = "kasami"
    NOKUMAR = "nokumar"
    GENERALIZED_NK = "generalized-nk"
    MT_A = "mt-a"
    MT_B = "mt-b"
    MT_C = "mt-c"


@dataclass
class SequenceFamily:
    kind: FamilyKind
    members: list[BinarySequence]
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.members:
            raise SequenceDesignError("a family needs at least one member")
        L = len(self.members[0])
        if any(len(m) != L for m in self.members):
            raise SequenceDesignError("family members must share one length")

    @property
    def length(self) -> int:
        return len(self.members[0])

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def header(self) -> str:
        params = " ".join(f"{k}={_fmt(v)}" for k, v in self.params.items() if not k.startswith("_"))
        return f"# kind={self.kind.value} params={params}".rstrip()

    def to_text(self) -> str:
        return self.header() + "\n" + "".join(str(m) + "\n" for m in self.members)

    @classmethod
    def from_text(cls, text: str) -> SequenceFamily:
        kind = FamilyKind.MSEQ
        params: dict = {}
        members = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    key, _, val = tok.partition("=")
                    if key == "kind":
                        kind = FamilyKind(val)
                    elif key != "params" and val:
                        params[key] = val
                    elif key == "params" and val:
                        k2, _, v2 = val.partition("=")
                        if v2:
                            params[k2] = v2
                continue
            members.append(BinarySequence.from_string(line))
        return cls(kind, members, params)


def _fmt(v) -> str:
    if isinstance(v, Poly2):
        return str(v)
    if isinstance(v, BinarySequence):
        return str(v)
    if isinstance(v, ShiftSequence):
        return v.to_csv()
    return str(v).replace(" ", "")


# --------------------------------------------------------------------------
# Gold


def _coset_leader(d: int, n: int) -> int:
    N = (1 << n) - 1
    return min((d << i) % N for i in range(n))


def gold_decimation(n: int) -> tuple[int, bool]:
    """Decimation giving the second m-sequence and whether the pair is preferred."""
    if n % 4:
        return (1 << ((n + 2) // 2)) + 1, True
    N = (1 << n) - 1
    for d in range(3, N):
        if math.gcd(d, N) == 1 and _coset_leader(d, n) != 1:
            return d, False
    raise SequenceDesignError(f"no usable decimation for n={n}")  # pragma: no cover


def gold_family(n: int, modulus: Poly2 | None = None) -> SequenceFamily:
    """{u, v} and u + shift(v, tau) for tau = 0..2^n-2; 2^n + 1 members.

    For n = 0 mod 4 no preferred pair exists; a pair of distinct
    m-sequences is used instead and the family is marked ``gold_like``.
    """
    if n < 3:
        raise SequenceDesignError(f"Gold families need n >= 3 (got {n})")
    u = m_sequence(modulus if modulus is not None else PRIMITIVE_POLYNOMIALS[n])
    d, preferred = gold_decimation(n)
    v = decimate(u, d)
    N = len(u)
    members = [u, v] + [u ^ shift(v, tau) for tau in range(N)]
    return SequenceFamily(
        FamilyKind.GOLD,
        members,
        {"n": n, "decimation": d, "gold_like": not preferred, "modulus": modulus or PRIMITIVE_POLYNOMIALS[n]},
    )


# --------------------------------------------------------------------------
# Kasami and No-Kumar through the array route


def kasami_dims(m: int) -> tuple[int, int]:
    return (1 << m) - 1, (1 << m) + 1


def base_column(a: BinaryArray) -> BinarySequence:
    """First non-constant column of an array."""
    for j in range(a.cols):
        col = a.column(j)
        if not col.is_constant():
            return col
    raise SequenceDesignError("array has no non-constant column")


@dataclass
class ArrayFamily:
    """A family kept in folded form: shift sequences over one base column."""

    base_column: BinarySequence
    shifts: list[ShiftSequence]
    fill: int = 0

    def arrays(self, column: BinarySequence | None = None, fill: int | None = None) -> list[BinaryArray]:
        col = self.base_column if column is None else column
        f = self.fill if fill is None else fill
        return [substitute_columns(s, col, f) for s in self.shifts]

    def sequences(self, column: BinarySequence | None = None, fill: int | None = None) -> list[BinarySequence]:
        return [unfold(a) for a in self.arrays(column, fill)]


def kasami_array_family(m: int) -> ArrayFamily:
    """Small Kasami family as shift sequences over the short m-sequence column.

    Members: the folded parent m-sequence, then the parent plus the base
    column in shift k broadcast to every column, k = 0..2^m-2.
    """
    if not 2 <= m <= 8:
        raise SequenceDesignError(f"Kasami parameter m={m} outside 2..8")
    u, v = kasami_dims(m)
    # the trace phase tr(alpha^t) keeps Kasami and No-Kumar arrays aligned
    parent = fold(no_kumar_base(m, 1), u, v)
    col = base_column(parent)
    shifts = [extract_shift_sequence(parent, col)]
    for k in range(u):
        added = BinaryArray(parent.cells ^ shift(col, k).bits[:, None])
        shifts.append(extract_shift_sequence(added, col))
    return ArrayFamily(col, shifts)


def kasami_family(m: int) -> SequenceFamily:
    af = kasami_array_family(m)
    return SequenceFamily(
        FamilyKind.KASAMI,
        af.sequences(),
        {"m": m, "rows": (1 << m) - 1, "cols": (1 << m) + 1, "_array_family": af},
    )


def no_kumar_base(m: int, r: int) -> BinarySequence:
    """b(t) = tr_1^m( tr_m^2m(alpha^t)^r ), t = 0..2^2m-2."""
    q = (1 << m) - 1
    if math.gcd(r, q) != 1:
        raise GcdNotOne(f"gcd({r}, {q}) != 1")
    table = build_binary_field(2 * m)
    n = table.order
    elems = table.exp[np.arange(n)]
    mid = trace_vector(elems, table, m)  # values in the subfield GF(2^m)
    nz = mid != 0
    powered = np.where(nz, table.exp[(table.log[np.where(nz, mid, 1)] * r) % n], 0)
    # subfield trace: sum of y^(2^i) for i < m; every y lies in GF(2^m)
    acc = np.zeros(n, dtype=np.int64)
    lp = table.log[np.where(powered != 0, powered, 1)]
    for i in range(m):
        acc ^= np.where(powered != 0, table.exp[(lp << i) % n], 0)
    return BinarySequence((acc & 1).astype(np.uint8))


def no_kumar_array_family(m: int, r: int) -> ArrayFamily:
    """No-Kumar family: the Kasami shift sequences over the No-Kumar base column.

    The trace-defined base folds to an array with the same column shifts as
    the Kasami parent, but over the column decimated by r. Member k is the
    k-th Kasami shift sequence substituted with that column; member 0
    reproduces the trace-defined base exactly.
    """
    base = no_kumar_base(m, r)
    u, v = kasami_dims(m)
    col = base_column(fold(base, u, v))
    kas = kasami_array_family(m)
    return ArrayFamily(col, list(kas.shifts))


def no_kumar_family(m: int, r: int) -> SequenceFamily:
    af = no_kumar_array_family(m, r)
    return SequenceFamily(
        FamilyKind.NOKUMAR,
        af.sequences(),
        {"m": m, "r": r, "rows": (1 << m) - 1, "cols": (1 << m) + 1, "_array_family": af},
    )


def valid_no_kumar_exponents(m: int) -> list[int]:
    q = (1 << m) - 1
    return [r for r in range(1, q) if math.gcd(r, q) == 1]


def balance_matched_fill(column: BinarySequence, reference: BinarySequence) -> int:
    """Constant-column bit that keeps constant-vs-column correlations unchanged.

    A substituted column with the opposite bipolar sum to the original
    column needs the constant columns flipped too.
    """
    ref_sum = int(reference.bipolar().sum())
    col_sum = int(column.bipolar().sum())
    return 0 if ref_sum == col_sum else 1


def generalized_no_kumar_family(m: int, column: BinarySequence, r: int = 1,
                                match_balance: bool = True) -> SequenceFamily:
    """No-Kumar arrays with their columns replaced by ``column`` at identical shifts.

    Constant columns stay 0. With ``match_balance`` a column whose bipolar
    sum differs from the m-sequence column is complemented first, which
    keeps constant-versus-column correlations (and so the whole
    correlation histogram) unchanged.
    """
    af = no_kumar_array_family(m, r)
    if len(column) != len(af.base_column):
        raise SequenceDesignError(
            f"column length {len(column)} != array rows {len(af.base_column)}"
        )
    flipped = match_balance and balance_matched_fill(column, af.base_column) == 1
    used = complement(column) if flipped else column
    return SequenceFamily(
        FamilyKind.GENERALIZED_NK,
        af.sequences(used),
        {"m": m, "r": r, "column_complemented": flipped, "column": column,
         "_array_family": ArrayFamily(used, list(af.shifts))},
    )
