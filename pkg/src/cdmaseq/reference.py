"""Published comparison values and their desk-scale reproduction."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .analysis import family_correlation_report, linear_complexity_periodic
from .errors import SequenceDesignError
from .families import (
    SequenceFamily,
    generalized_no_kumar_family,
    gold_family,
    kasami_family,
    no_kumar_family,
)
from .sequences import legendre
from .shiftseq import family_a_shifts, family_b_shifts, family_c_shifts, mt_sequence_family

# normalized linear complexity by family and length; None = not listed
TABLE1: dict[str, dict[int, float]] = {
    "bent": {255: 0.125, 4095: 0.018},
    "kasami": {255: 0.047, 1023: 0.015, 4095: 0.004396},
    "nokumar": {255: 0.235, 1023: 0.152, 4095: 0.031},
    "generalized-nk": {1023: 0.132},
    "gold": {255: 0.063, 1023: 0.02, 4095: 0.005861},
    "kerdock": {255: 0.142, 1023: 0.054, 4095: 0.019},
    "mt-a": {342: 0.947, 930: 0.485, 4422: 0.985},
    "mt-b": {380: 0.985, 992: 0.46875, 4556: 0.970588},
    "mt-c": {255: 0.4706},
}

REFERENCE_ONLY = {"bent", "kerdock"}

MAX_DESK_LENGTH = 4556


def _decimals(x: float) -> int:
    text = repr(x)
    return len(text.split(".")[1]) if "." in text else 0


@dataclass
class Table1Cell:
    family: str
    length: int
    published: float | None
    measured_l: int | None = None
    params: dict = field(default_factory=dict)
    members_evaluated: int = 0
    status: str = "pending"

    @property
    def measured(self) -> float | None:
        return None if self.measured_l is None else self.measured_l / self.length

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "length": self.length,
            "published": self.published,
            "measured_l": self.measured_l,
            "measured": None if self.measured is None else round(self.measured, 6),
            "params": self.params,
            "members_evaluated": self.members_evaluated,
            "status": self.status,
        }


def _sweep_nokumar(m: int) -> tuple[dict[int, int], int]:
    """Max family complexity per exponent (one r per cyclotomic coset)."""
    q = (1 << m) - 1
    seen, per_r, count = set(), {}, 0
    for r in range(1, q):
        if math.gcd(r, q) != 1:
            continue
        coset = frozenset((r << i) % q for i in range(m))
        if coset in seen:
            continue
        seen.add(coset)
        fam = no_kumar_family(m, r)
        per_r[r] = _max_l(fam)
        count = len(fam)
    return per_r, count


def _max_l(members) -> int:
    return max(linear_complexity_periodic(s).l for s in members)


def _mt_family(kind: str, param: int) -> SequenceFamily:
    if kind == "mt-a":
        return mt_sequence_family(family_a_shifts(param), legendre(param))
    if kind == "mt-b":
        return mt_sequence_family(family_b_shifts(param), legendre(param))
    if kind == "mt-c":
        return mt_sequence_family(family_c_shifts(param), legendre((1 << param) + 1))
    raise SequenceDesignError(kind)


def _mt_param(kind: str, length: int) -> int:
    if kind == "mt-c":
        n = round(math.log2(length + 1) / 2)
        return n
    # p (p - 1) or p (p + 1)
    sign = -1 if kind == "mt-a" else 1
    p = round((-sign + math.sqrt(1 + 4 * length)) / 2)
    return p


GOLD_SAMPLE = 16


def measure_table1_cell(family: str, length: int, full: bool = False) -> Table1Cell:
    published = TABLE1.get(family, {}).get(length)
    cell = Table1Cell(family, length, published)
    if family in REFERENCE_ONLY:
        cell.status = "reference-only"
        return cell
    if length > MAX_DESK_LENGTH:
        raise SequenceDesignError(f"length {length} beyond desk scale ({MAX_DESK_LENGTH})")
    if family in ("kasami", "nokumar", "generalized-nk", "gold"):
        n = round(math.log2(length + 1))
        if (1 << n) - 1 != length:
            raise SequenceDesignError(f"{family} has no member of length {length}")
    if family == "kasami":
        fam = kasami_family(n // 2)
        cell.measured_l, cell.members_evaluated = _max_l(fam), len(fam)
        cell.params = {"m": n // 2}
    elif family == "nokumar":
        per_r, count = _sweep_nokumar(n // 2)
        r = max(per_r, key=per_r.get)
        cell.measured_l, cell.members_evaluated = per_r[r], count
        cell.params = {"m": n // 2, "r": r, "per_r": per_r}
    elif family == "generalized-nk":
        m = n // 2
        fam = generalized_no_kumar_family(m, legendre((1 << m) - 1))
        cell.measured_l, cell.members_evaluated = _max_l(fam), len(fam)
        cell.params = {"m": m, "column": f"legendre:{(1 << m) - 1}"}
    elif family == "gold":
        fam = gold_family(n)
        members = fam.members if full else fam.members[:GOLD_SAMPLE]
        cell.measured_l, cell.members_evaluated = _max_l(members), len(members)
        cell.params = {"n": n, "decimation": fam.params["decimation"], "gold_like": fam.params["gold_like"]}
    elif family in ("mt-a", "mt-b", "mt-c"):
        param = _mt_param(family, length)
        fam = _mt_family(family, param)
        if fam.length != length:
            raise SequenceDesignError(f"{family} has no member of length {length}")
        cell.measured_l, cell.members_evaluated = _max_l(fam), len(fam)
        cell.params = {"n" if family == "mt-c" else "p": param, "column": "legendre"}
    else:
        raise SequenceDesignError(f"unknown family {family!r}")
    if published is None:
        cell.status = "not-listed"
    else:
        digits = _decimals(published)
        same = round(cell.measured, digits) == round(published, digits)
        cell.status = "match" if same else f"deviation({cell.measured - published:+.4f})"
        if not same and "per_r" in cell.params:
            hits = [r for r, l in cell.params["per_r"].items() if round(l / length, digits) == round(published, digits)]
            if hits:
                cell.status += f"; published value at r={','.join(map(str, hits))}"
    return cell


def table1(families=None, lengths=None, full: bool = False) -> list[Table1Cell]:
    out = []
    for fam in families or TABLE1:
        for L in sorted(TABLE1[fam]):
            if lengths and L not in lengths:
                continue
            if fam in REFERENCE_ONLY:
                out.append(measure_table1_cell(fam, L))
            elif L <= MAX_DESK_LENGTH:
                out.append(measure_table1_cell(fam, L, full))
    return out


# --------------------------------------------------------------------------
# correlation, length and set size


@dataclass
class Table2Row:
    family: str
    length_formula: str
    correlation_formula: str
    size_formula: str
    builder: Callable[[], SequenceFamily] | None = None
    published_correlation: Callable[[int], float] | None = None
    published_size: Callable[[int], float] | None = None


def _sqrt(L: int) -> float:
    return math.sqrt(L)


TABLE2: list[Table2Row] = [
    Table2Row("bent", "2^(2n)-1", "sqrt(L)", "sqrt(L)"),
    Table2Row("kasami", "2^(2n)-1", "sqrt(L)", "sqrt(L)", lambda: kasami_family(4), _sqrt, _sqrt),
    Table2Row("nokumar", "2^(2n)-1", "sqrt(L)", "sqrt(L)", lambda: no_kumar_family(4, 7), _sqrt, _sqrt),
    Table2Row("generalized-nk", "2^(2n)-1", "sqrt(L)", "sqrt(L)",
              lambda: generalized_no_kumar_family(3, legendre(7)), _sqrt, _sqrt),
    Table2Row("gold", "2^n-1", "2^((n+1)/2)-1 (n odd)", "sqrt(L)", lambda: gold_family(5),
              lambda L: 2 ** ((round(math.log2(L + 1)) + 1) / 2) - 1, _sqrt),
    Table2Row("kerdock", "2(2^n-1), n odd", "sqrt(L)", "L/2"),
    Table2Row("mt-a", "p(p-1)", "~p", "p", lambda: _mt_family("mt-a", 7),
              lambda L: _mt_param("mt-a", L), lambda L: _mt_param("mt-a", L)),
    Table2Row("mt-b", "p(p+1)", "~p", "p", lambda: _mt_family("mt-b", 7),
              lambda L: _mt_param("mt-b", L), lambda L: _mt_param("mt-b", L)),
    Table2Row("mt-c", "2^(2n)-1", "~2^n", "2^n-1", lambda: _mt_family("mt-c", 2),
              lambda L: 2 ** _mt_param("mt-c", L), lambda L: 2 ** _mt_param("mt-c", L) - 1),
]


def _within_factor(measured: float, target: float, factor: float = 2.0) -> bool:
    return target / factor <= measured <= target * factor


def table2(families=None, workers: int = 1) -> list[dict]:
    rows = []
    for row in TABLE2:
        if families and row.family not in families:
            continue
        entry = {
            "family": row.family,
            "length_formula": row.length_formula,
            "correlation_formula": row.correlation_formula,
            "size_formula": row.size_formula,
        }
        if row.builder is None:
            entry["status"] = "reference-only"
            rows.append(entry)
            continue
        fam = row.builder()
        rep = family_correlation_report(fam, workers=workers)
        L = fam.length
        pc, ps = row.published_correlation(L), row.published_size(L)
        entry.update({
            "length": L,
            "params": {k: str(v) for k, v in fam.params.items() if not k.startswith("_")},
            "measured_max_correlation": rep.max_correlation,
            "published_max_correlation": round(pc, 3),
            "correlation_status": "approx" if _within_factor(rep.max_correlation, pc) else "deviation",
            "measured_set_size": len(fam),
            "published_set_size": round(ps, 3),
            "size_status": "approx" if _within_factor(len(fam), ps) else "deviation",
        })
        rows.append(entry)
    return rows
