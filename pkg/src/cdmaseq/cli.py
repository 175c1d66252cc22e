"""Command-line interface: ``cdmaseq <subcommand> ...``.

Exit status is 0 on success, 2 on usage or parameter errors and 1 when an
internal invariant fails (for example the complexity oracle disagreeing
with Berlekamp-Massey). Output files are written atomically, so a failed
run leaves nothing behind.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
import tempfile
from typing import Callable

from . import __version__
from .analysis import (
    conjecture_check,
    default_workers,
    family_complexity,
    family_correlation_report,
    linear_complexity_periodic,
    report_json,
)
from .arrays import BinaryArray, fold, unfold
from .errors import OracleDisagreement, SequenceDesignError
from .families import (
    SequenceFamily,
    generalized_no_kumar_family,
    gold_family,
    kasami_family,
    no_kumar_family,
    FamilyKind,
)
from .fields import PRIMITIVE_POLYNOMIALS, Poly2
from .reference import REFERENCE_ONLY, TABLE1, TABLE2, MAX_DESK_LENGTH, table1, table2
from .sequences import BinarySequence, hall, legendre, m_sequence
from .shiftseq import (
    ShiftFamily,
    ShiftKind,
    family_a_shifts,
    family_b_shifts,
    family_c_grid,
    family_c_shifts,
    family_max_coincidence,
    hop_hamming_max,
    kasami_hop_family,
    mt_sequence_family,
    reference_hop_patterns,
)

PROG = "cdmaseq"


class UsageError(Exception):
    """Bad parameter value; reported with exit status 2."""


# --------------------------------------------------------------------------
# helpers


def _timestamp() -> str:
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()


def _header_line(args) -> str:
    return "" if args.no_header else f"# generated={_timestamp()} by {PROG} {__version__}\n"


def _emit(args, text: str) -> None:
    """Write to ``args.output`` atomically, or to stdout."""
    out = getattr(args, "output", None)
    if not out or out == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(prefix=".cdmaseq-", dir=directory)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read input {path!r}: {exc.strerror}") from None
    # the timestamp line is not data
    return "".join(l for l in text.splitlines(True) if not l.startswith("# generated="))


def _json(args, doc: dict) -> str:
    if not args.no_header:
        doc = {"generated": _timestamp(), **doc}
    return json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n"


def _require(cond: bool, name: str, msg: str) -> None:
    if not cond:
        raise UsageError(f"parameter {name}: {msg}")


def parse_column(spec: str) -> BinarySequence:
    """``legendre:P``, ``hall:P``, ``mseq:K`` or a literal bit string."""
    kind, sep, arg = spec.partition(":")
    if not sep:
        if set(spec) <= {"0", "1"} and spec:
            return BinarySequence.from_string(spec)
        raise UsageError(f"parameter --column: cannot parse {spec!r}")
    try:
        value = int(arg)
    except ValueError:
        if kind == "bits":
            return BinarySequence.from_string(arg)
        raise UsageError(f"parameter --column: {arg!r} is not an integer") from None
    if kind == "legendre":
        return legendre(value)
    if kind == "hall":
        return hall(value)
    if kind == "mseq":
        _require(value in PRIMITIVE_POLYNOMIALS, "--column", f"m-sequence degree {value} outside 2..24")
        return m_sequence(PRIMITIVE_POLYNOMIALS[value])
    raise UsageError(f"parameter --column: unknown column kind {kind!r}")


def _load_family(path: str) -> SequenceFamily:
    text = _read(path)
    try:
        return SequenceFamily.from_text(text)
    except ValueError as exc:
        raise UsageError(f"input {path!r}: {exc}") from None


def _load_array(path: str) -> BinaryArray:
    text = _read(path)
    if text.lstrip().startswith("P1"):
        return BinaryArray.from_pbm(text)
    return BinaryArray.from_text(text)


# --------------------------------------------------------------------------
# gen


def _build_family(args) -> SequenceFamily:
    kind = args.family
    if kind == "mseq":
        if args.poly:
            modulus = Poly2.parse(args.poly)
        else:
            _require(args.k is not None, "-k", "required for mseq (or give --poly)")
            _require(args.k in PRIMITIVE_POLYNOMIALS, "-k", f"degree {args.k} outside 2..24")
            modulus = PRIMITIVE_POLYNOMIALS[args.k]
        seq = m_sequence(modulus)
        return SequenceFamily(FamilyKind.MSEQ, [seq], {"modulus": modulus})
    if kind in ("legendre", "hall"):
        _require(args.p is not None, "-p", f"required for {kind}")
        seq = legendre(args.p) if kind == "legendre" else hall(args.p)
        return SequenceFamily(FamilyKind(kind), [seq], {"p": args.p})
    if kind == "gold":
        _require(args.n is not None, "-n", "required for gold")
        _require(3 <= args.n <= 16, "-n", f"{args.n} outside 3..16")
        return gold_family(args.n)
    if kind == "kasami":
        _require(args.m is not None, "-m", "required for kasami")
        _require(2 <= args.m <= 8, "-m", f"{args.m} outside 2..8")
        return kasami_family(args.m)
    if kind in ("nokumar", "generalized-nk"):
        _require(args.m is not None, "-m", f"required for {kind}")
        _require(2 <= args.m <= 8, "-m", f"{args.m} outside 2..8")
        r = 1 if args.r is None else args.r
        _require(r >= 1, "-r", f"{r} must be positive")
        if kind == "nokumar":
            return no_kumar_family(args.m, r)
        column = parse_column(args.column or f"legendre:{(1 << args.m) - 1}")
        return generalized_no_kumar_family(args.m, column, r)
    if kind in ("mt-a", "mt-b"):
        _require(args.p is not None, "-p", f"required for {kind}")
        shifts = family_a_shifts(args.p) if kind == "mt-a" else family_b_shifts(args.p)
        column = parse_column(args.column or f"legendre:{args.p}")
        return mt_sequence_family(shifts, column, args.fill)
    if kind == "mt-c":
        _require(args.n is not None, "-n", "required for mt-c")
        shifts = family_c_shifts(args.n)
        column = parse_column(args.column or f"legendre:{(1 << args.n) + 1}")
        return mt_sequence_family(shifts, column, args.fill)
    raise UsageError(f"parameter family: unknown {kind!r}")  # pragma: no cover


def cmd_gen(args) -> int:
    fam = _build_family(args)
    if args.format == "json":
        doc = {
            "kind": fam.kind.value,
            "params": {k: str(v) for k, v in fam.params.items() if not k.startswith("_")},
            "length": fam.length,
            "members": [str(m) for m in fam.members],
        }
        _emit(args, _json(args, doc))
    else:
        _emit(args, fam.header() + "\n" + _header_line(args) + "".join(str(m) + "\n" for m in fam.members))
    return 0


# --------------------------------------------------------------------------
# fold / unfold


def cmd_fold(args) -> int:
    fam = _load_family(args.input)
    _require(0 <= args.member < len(fam), "--member", f"{args.member} outside 0..{len(fam) - 1}")
    u = args.u if args.u is not None else int(fam.params.get("rows", 0))
    v = args.v if args.v is not None else int(fam.params.get("cols", 0))
    _require(u > 0 and v > 0, "-u/-v", "array dimensions are required for this input")
    _require(u * v == fam.length, "-u/-v", f"{u} x {v} does not match length {fam.length}")
    arr = fold(fam.members[args.member], u, v)
    if args.format == "pbm":
        body = arr.to_pbm()
        if not args.no_header:
            first, rest = body.split("\n", 1)
            body = first + "\n" + _header_line(args) + rest
        _emit(args, body)
    else:
        _emit(args, f"# array rows={u} cols={v}\n" + _header_line(args) + arr.to_text())
    return 0


def cmd_unfold(args) -> int:
    arr = _load_array(args.input)
    seq = unfold(arr)
    _emit(args, f"# kind=mseq params=rows={arr.rows} cols={arr.cols}\n" + _header_line(args) + str(seq) + "\n")
    return 0


# --------------------------------------------------------------------------
# shifts / hop


def _shift_text(args, fam: ShiftFamily) -> str:
    if args.format == "json":
        doc = {
            "kind": fam.kind.value,
            "cols": fam.n_cols,
            "modulus": fam.row_modulus,
            "params": {k: str(v) for k, v in fam.params.items()},
            "patterns": [p.to_csv() for p in fam.patterns],
        }
        return _json(args, doc)
    head, rest = fam.to_text().split("\n", 1)
    return head + "\n" + _header_line(args) + rest


def cmd_shifts(args) -> int:
    kind = args.family
    if kind in ("mt-a", "mt-b"):
        _require(args.p is not None, "-p", f"required for {kind}")
        fam = family_a_shifts(args.p) if kind == "mt-a" else family_b_shifts(args.p)
    else:
        _require(args.n is not None, "-n", "required for mt-c")
        if args.pre_rotation:
            fam = ShiftFamily(ShiftKind.MT_C, [family_c_grid(args.n)], {"n": args.n, "form": "pre-rotation"})
        else:
            fam = family_c_shifts(args.n)
    if args.coincidence:
        _ = fam.max_coincidence  # recorded in params
    _emit(args, _shift_text(args, fam))
    return 0


def cmd_hop(args) -> int:
    if args.check:
        fam = ShiftFamily.from_text(_read(args.check))
        doc = {"kind": fam.kind.value, "patterns": len(fam), "cols": fam.n_cols,
               "modulus": fam.row_modulus, "max_coincidence": family_max_coincidence(fam.patterns)}
        _emit(args, _json(args, doc))
        return 0
    if args.reference:
        pats = reference_hop_patterns()
        names = sorted(pats)
        doc = {"patterns": {k: pats[k].to_csv() for k in names}}
        doc["pairwise_max"] = {
            f"{a}{b}": hop_hamming_max(pats[a], pats[b])[0]
            for i, a in enumerate(names) for b in names[i:]
        }
        _emit(args, _json(args, doc))
        return 0
    _require(args.m is not None, "-m", "required unless --check or --reference is given")
    _require(2 <= args.m <= 8, "-m", f"{args.m} outside 2..8")
    fam = kasami_hop_family(args.m, args.source, 1 if args.r is None else args.r)
    _ = fam.max_coincidence
    _emit(args, _shift_text(args, fam))
    return 0


# --------------------------------------------------------------------------
# analysis


def cmd_corr(args) -> int:
    fam = _load_family(args.input)
    workers = args.threads or default_workers()
    rep = family_correlation_report(fam, method=args.method, workers=workers)
    params = {k: str(v) for k, v in fam.params.items()}
    text = report_json(fam.kind.value, params, correlation=rep)
    if not args.no_header:
        text = _json(args, json.loads(text))
    _emit(args, text)
    return 0


def cmd_complexity(args) -> int:
    fam = _load_family(args.input)
    members = fam.members if args.member is None else [fam.members[args.member]]
    reps = family_complexity(members)
    params = {k: str(v) for k, v in fam.params.items()}
    doc = json.loads(report_json(fam.kind.value, params, complexity=reps))
    doc["members"] = [r.to_dict() for r in reps]
    _emit(args, _json(args, doc))
    return 0


def cmd_conjecture(args) -> int:
    if args.family == "mt-c":
        _require(args.n is not None, "-n", "required for mt-c")
        shifts = family_c_shifts(args.n)
        default_col = f"legendre:{(1 << args.n) + 1}"
    else:
        _require(args.p is not None, "-p", f"required for {args.family}")
        shifts = family_a_shifts(args.p) if args.family == "mt-a" else family_b_shifts(args.p)
        default_col = f"legendre:{args.p}"
    column = parse_column(args.column or default_col)
    fam = mt_sequence_family(shifts, column, args.fill)
    if args.member == "all":
        idx = list(range(len(fam)))
    else:
        try:
            idx = [int(args.member)]
        except ValueError:
            raise UsageError(f"parameter --member: {args.member!r} is not an index or 'all'") from None
        _require(0 <= idx[0] < len(fam), "--member", f"{idx[0]} outside 0..{len(fam) - 1}")
    lines = [_header_line(args).rstrip("\n")] if not args.no_header else []
    all_hold = True
    for i in idx:
        res = conjecture_check(fam.members[i], column, shifts.n_cols)
        all_hold &= res.holds
        l = int(res.long_polynomial.degree)
        lines.append(f"member {i}: l={l} normalized={l / fam.length:.4f}")
        lines.append(f"  long:     {res.long_polynomial}")
        lines.append(f"  column:   {res.column_polynomial}  (x -> x^{shifts.n_cols})")
        lines.append(f"  expected: {res.expected_polynomial}")
        tag = "MATCH" if res.holds else ("MISMATCH (mirrored match)" if res.mirrored else "MISMATCH")
        lines.append(f"  {tag}")
    lines.append("MATCH" if all_hold else "MISMATCH")
    _emit(args, "\n".join(lines) + "\n")
    return 0


# --------------------------------------------------------------------------
# report


def _int_list(text: str | None) -> list[int] | None:
    if not text:
        return None
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"parameter --length: cannot parse {text!r}") from None


def cmd_report(args) -> int:
    families = args.family.split(",") if args.family else None
    if args.table == "table1":
        lengths = _int_list(args.length)
        for f in families or []:
            _require(f in TABLE1, "--family", f"{f!r} is not a table row")
        for L in lengths or []:
            _require(L <= MAX_DESK_LENGTH, "--length", f"{L} beyond desk scale ({MAX_DESK_LENGTH})")
            _require(any(L in TABLE1[f] for f in families or TABLE1), "--length", f"no selected row lists length {L}")
        cells = table1(families, lengths, full=args.full)
        if args.format == "json":
            _emit(args, _json(args, {"table": "table1", "cells": [c.to_dict() for c in cells]}))
            return 0
        rows = [f"{'family':<16}{'length':>7}{'published':>11}{'measured':>10}{'l':>6}  status"]
        for c in cells:
            pub = "-" if c.published is None else f"{c.published:g}"
            meas = "-" if c.measured is None else f"{c.measured:.4f}"
            l = "-" if c.measured_l is None else str(c.measured_l)
            rows.append(f"{c.family:<16}{c.length:>7}{pub:>11}{meas:>10}{l:>6}  {c.status}")
        _emit(args, _header_line(args) + "\n".join(rows) + "\n")
        return 0
    known = {r.family for r in TABLE2}
    for f in families or []:
        _require(f in known, "--family", f"{f!r} is not a table row")
    rows = table2(families, workers=args.threads or 1)
    if args.format == "json":
        _emit(args, _json(args, {"table": "table2", "rows": rows}))
        return 0
    out = [f"{'family':<16}{'length':<18}{'max corr':<24}{'set size':<10}{'L':>6}{'corr':>6}{'table':>8}"
           f"{'size':>6}{'table':>8}  status"]
    for r in rows:
        base = f"{r['family']:<16}{r['length_formula']:<18}{r['correlation_formula']:<24}{r['size_formula']:<10}"
        if r.get("status") == "reference-only":
            out.append(base + f"{'':>34}  reference-only")
        else:
            out.append(base + f"{r['length']:>6}{r['measured_max_correlation']:>6}{r['published_max_correlation']:>8g}"
                       f"{r['measured_set_size']:>6}{r['published_set_size']:>8g}  "
                       f"corr={r['correlation_status']} size={r['size_status']}")
    _emit(args, _header_line(args) + "\n".join(out) + "\n")
    return 0


# --------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser, formats: tuple[str, ...] | None = None) -> None:
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    p.add_argument("--no-header", action="store_true", help="omit the timestamp header")
    if formats:
        p.add_argument("--format", choices=formats, default=formats[0])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description="CDMA sequence families, arrays and analysis")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker processes for correlation scans (default: $CDMASEQ_THREADS or all cores)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a sequence family")
    p.add_argument("family", choices=["mseq", "legendre", "hall", "gold", "kasami", "nokumar",
                                      "generalized-nk", "mt-a", "mt-b", "mt-c"])
    p.add_argument("-k", type=int, help="m-sequence degree")
    p.add_argument("--poly", help="primitive polynomial, e.g. x^5+x^2+1")
    p.add_argument("-p", type=int, help="prime")
    p.add_argument("-n", type=int, help="Gold degree / Family C exponent")
    p.add_argument("-m", type=int, help="half degree for Kasami and No-Kumar")
    p.add_argument("-r", type=int, help="No-Kumar exponent")
    p.add_argument("--column", help="column: legendre:P, hall:P, mseq:K or bits")
    p.add_argument("--fill", type=int, choices=[0, 1], default=0, help="bit for constant columns")
    _common(p, ("bits", "json"))
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fold", help="fold a sequence into a u x v array")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-u", type=int, help="rows")
    p.add_argument("-v", type=int, help="columns")
    p.add_argument("--member", type=int, default=0)
    _common(p, ("bits", "pbm"))
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("unfold", help="unfold an array (bits or PBM) into a sequence")
    p.add_argument("-i", "--input", required=True)
    _common(p, ("bits",))
    p.set_defaults(func=cmd_unfold)

    p = sub.add_parser("shifts", help="shift-sequence families A, B, C")
    p.add_argument("family", choices=["mt-a", "mt-b", "mt-c"])
    p.add_argument("-p", type=int)
    p.add_argument("-n", type=int)
    p.add_argument("--pre-rotation", action="store_true", help="Family C pattern before rotation")
    p.add_argument("--coincidence", action="store_true", help="record the max Hamming coincidence")
    _common(p, ("csv", "json"))
    p.set_defaults(func=cmd_shifts)

    p = sub.add_parser("hop", help="hop patterns from Kasami / No-Kumar arrays")
    p.add_argument("--source", choices=["kasami", "nokumar"], default="kasami")
    p.add_argument("-m", type=int)
    p.add_argument("-r", type=int)
    p.add_argument("--check", metavar="FILE", help="report the max coincidence of a pattern file")
    p.add_argument("--reference", action="store_true", help="check the published 7x9 patterns")
    _common(p, ("csv", "json"))
    p.set_defaults(func=cmd_hop)

    p = sub.add_parser("corr", help="exhaustive periodic correlation report")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--method", choices=["packed", "fft"], default="packed")
    _common(p, ("json",))
    p.set_defaults(func=cmd_corr)

    p = sub.add_parser("complexity", help="linear complexity report")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--member", type=int)
    _common(p, ("json",))
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("conjecture", help="check feedback_long(x) = feedback_column(x^cols)")
    p.add_argument("--family", choices=["mt-a", "mt-b", "mt-c"], required=True)
    p.add_argument("-p", type=int)
    p.add_argument("-n", type=int)
    p.add_argument("--column")
    p.add_argument("--member", default="0", help="member index or 'all'")
    p.add_argument("--fill", type=int, choices=[0, 1], default=0)
    _common(p)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("report", help="reproduce the published comparison tables")
    p.add_argument("table", choices=["table1", "table2"])
    p.add_argument("--family", help="comma-separated rows")
    p.add_argument("--length", help="comma-separated lengths (table1)")
    p.add_argument("--full", action="store_true", help="evaluate every Gold member")
    _common(p, ("text", "json"))
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SequenceDesignError) as exc:
        print(f"{PROG} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OracleDisagreement as exc:
        print(f"{PROG} {args.command}: invariant failure: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"{PROG} {args.command}: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
