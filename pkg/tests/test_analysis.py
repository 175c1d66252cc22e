from __future__ import annotations

import json
import random

import numpy as np
import pytest

from cdmaseq.analysis import (
    array_autocorrelation,
    array_family_correlation_report,
    autocorrelation,
    autocorrelation_spectrum,
    berlekamp_massey,
    conjecture_check,
    cross_spectrum,
    crosscorrelation,
    family_correlation_report,
    gcd_oracle,
    lfsr_generate,
    linear_complexity_periodic,
    regenerates,
    report_json,
)
from cdmaseq.arrays import ShiftSequence, fold, substitute_columns, unfold
from cdmaseq.errors import DimensionMismatch
from cdmaseq.families import kasami_family, no_kumar_family
from cdmaseq.fields import Poly2
from cdmaseq.sequences import BinarySequence, legendre, m_sequence, shift
from cdmaseq.shiftseq import family_a_shifts, family_c_shifts, mt_sequence_family

from oracles import bm_textbook, corr_bruteforce

S = BinarySequence.from_string
P = Poly2.parse


def test_autocorrelation_examples():
    s = S("0010111")
    assert autocorrelation(s, 0) == 7
    assert autocorrelation(s, 3) == -1
    lg = legendre(7)
    assert all(autocorrelation(lg, t) == -1 for t in range(1, 7))


def test_crosscorrelation_matches_bruteforce():
    rng = random.Random(5)
    for _ in range(30):
        L = rng.randrange(1, 80)
        a = [rng.randrange(2) for _ in range(L)]
        b = [rng.randrange(2) for _ in range(L)]
        A, B = BinarySequence(a), BinarySequence(b)
        packed = cross_spectrum(A, B, "packed")
        fft = cross_spectrum(A, B, "fft")
        assert np.array_equal(packed, fft)
        for t in range(L):
            assert packed[t] == corr_bruteforce(a, b, t) == crosscorrelation(A, B, t)
    s = m_sequence(5)
    assert crosscorrelation(s, s, 4) == autocorrelation(s, 4)
    with pytest.raises(DimensionMismatch):
        crosscorrelation(m_sequence(3), m_sequence(4), 0)


def test_array_correlation():
    a = fold(m_sequence(6), 7, 9)
    assert array_autocorrelation(a, 0, 0) == 63
    for h in range(9):
        for v in range(7):
            if (h, v) != (0, 0):
                assert array_autocorrelation(a, h, v) == -1
    b = fold(kasami_family(3)[3], 7, 9)
    assert crosscorrelation(a, b, 2, 5) == crosscorrelation(unfold(a), unfold(b), next(
        t for t in range(63) if t % 9 == 2 and t % 7 == 5))


def test_family_report_kasami():
    rep = family_correlation_report(kasami_family(3))
    assert rep.support == {-1, 7, -9}
    assert rep.max_correlation == 9
    assert rep.peak == 63
    assert sum(rep.value_histogram.values()) == 8 * 62 + 28 * 63


def test_report_independent_of_workers_and_method():
    fam = kasami_family(3)
    a = family_correlation_report(fam)
    b = family_correlation_report(fam, method="fft", workers=2)
    assert a.to_dict() == b.to_dict()


def test_report_equals_array_report():
    fam = kasami_family(3)
    seq = family_correlation_report(fam)
    arr = array_family_correlation_report([fold(s, 7, 9) for s in fam])
    assert seq.value_histogram == arr.value_histogram


def test_mt_a_p7_bound():
    rep = family_correlation_report(mt_sequence_family(family_a_shifts(7), legendre(7)))
    assert rep.max_correlation <= 17


# -- Berlekamp-Massey -------------------------------------------------------


def test_bm_m_sequence():
    l, conn = berlekamp_massey(S("00101110010111").bits)
    assert l == 3
    # connection polynomial c(x) = 1 + x^2 + x^3; its reciprocal is the generator modulus
    assert conn == P("x^3+x^2+1")
    rep = linear_complexity_periodic(S("0010111"))
    assert rep.minimal_polynomial == P("x^3+x+1")


def test_bm_zero_input():
    assert berlekamp_massey(np.zeros(10, dtype=np.uint8)) == (0, P("1"))
    rep = linear_complexity_periodic(BinarySequence(np.zeros(9, dtype=np.uint8)))
    assert rep.l == 0 and rep.oracle_l == 0


def test_bm_legendre_17():
    two = np.concatenate([legendre(17).bits] * 2)
    l, conn = berlekamp_massey(two)
    assert l == 8
    assert conn == P("x^8+x^7+x^6+x^4+x^2+x+1")
    rep = linear_complexity_periodic(legendre(17))
    assert rep.normalized.numerator == 8 and rep.normalized.denominator == 17


def test_bm_against_textbook_and_oracle():
    rng = random.Random(7)
    for _ in range(200):
        L = rng.randrange(1, 257)
        bits = [rng.randrange(2) for _ in range(L)]
        s = BinarySequence(bits)
        rep = linear_complexity_periodic(s)  # raises on oracle disagreement
        ol, oconn = gcd_oracle(s)
        assert rep.l == ol and rep.feedback == oconn
        tl, tc = bm_textbook(bits + bits)
        assert tl == rep.l
        assert Poly2.from_coefficients(tc) == rep.feedback
        assert regenerates(np.array(bits + bits, dtype=np.uint8), rep.l, rep.feedback)


def test_bm_nonperiodic_prefixes_regenerate():
    rng = random.Random(9)
    for _ in range(100):
        bits = np.array([rng.randrange(2) for _ in range(rng.randrange(1, 120))], dtype=np.uint8)
        l, conn = berlekamp_massey(bits)
        assert regenerates(bits, l, conn)
        assert l == bm_textbook(bits.tolist())[0]


def test_lfsr_generate():
    out = lfsr_generate(P("x^3+x^2+1"), [0, 0, 1], 14)
    assert "".join(map(str, out)) == "00101110010111"


def test_family_c_member_complexity():
    fam = mt_sequence_family(family_c_shifts(4), legendre(17))
    rep = linear_complexity_periodic(fam[0])
    assert rep.l == 120
    assert rep.feedback == P("x^120+x^105+x^90+x^60+x^30+x^15+1")
    assert round(float(rep.normalized), 4) == 0.4706


def test_conjecture_examples():
    fam = mt_sequence_family(family_c_shifts(4), legendre(17))
    res = conjecture_check(fam[0], legendre(17), 15)
    assert res.holds
    assert res.long_polynomial == P("x^8+x^7+x^6+x^4+x^2+x+1").substitute_power(15)
    col = legendre(11)
    assert conjecture_check(col, col, 1).holds
    uniform = unfold(substitute_columns(ShiftSequence((0,) * 5, 11), col))
    assert not conjecture_check(uniform, col, 5).holds


def test_report_json_stable():
    fam = kasami_family(2)
    rep = family_correlation_report(fam)
    cx = [linear_complexity_periodic(s) for s in fam]
    a = report_json("kasami", {"m": 2}, rep, cx)
    b = report_json("kasami", {"m": 2}, family_correlation_report(fam), cx)
    assert a == b
    doc = json.loads(a)
    for key in ("kind", "params", "peak", "max_offpeak_auto", "max_cross", "histogram", "complexity"):
        assert key in doc
    assert doc["complexity"]["feedback_bits"][0] == "1"
