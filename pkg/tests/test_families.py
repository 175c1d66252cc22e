from __future__ import annotations

from collections import Counter

import numpy as np
import pytest

from cdmaseq.analysis import family_correlation_report, linear_complexity_periodic
from cdmaseq.arrays import extract_shift_sequence, fold
from cdmaseq.errors import GcdNotOne, SequenceDesignError
from cdmaseq.families import (
    SequenceFamily,
    base_column,
    generalized_no_kumar_family,
    gold_decimation,
    gold_family,
    kasami_array_family,
    kasami_dims,
    kasami_family,
    no_kumar_base,
    no_kumar_family,
    valid_no_kumar_exponents,
)
from cdmaseq.sequences import is_pseudonoise, legendre, m_sequence, shift

from oracles import corr_bruteforce


def test_gold_n5():
    fam = gold_family(5)
    assert len(fam) == 33 and fam.length == 31
    assert gold_decimation(5) == (9, True)
    rep = family_correlation_report(fam)
    assert rep.max_correlation == 9
    assert rep.support == {-1, -9, 7}


def test_gold_n6_bound():
    rep = family_correlation_report(gold_family(6))
    assert rep.max_correlation == 17


def test_gold_like_n8():
    fam = gold_family(8)
    assert fam.params["gold_like"] is True
    d = fam.params["decimation"]
    assert np.gcd(d, 255) == 1
    assert len(fam) == 257
    assert max(linear_complexity_periodic(s).l for s in fam.members[:20]) == 16


def test_gold_rejects_small_n():
    with pytest.raises(SequenceDesignError):
        gold_family(2)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_kasami_size_and_columns(m):
    fam = kasami_family(m)
    assert len(fam) == 2**m and fam.length == 4**m - 1
    u, v = kasami_dims(m)
    col = fam.params["_array_family"].base_column
    assert is_pseudonoise(col)
    for s in fam:
        # every column constant or a shift of the base column
        extract_shift_sequence(fold(s, u, v), col)


def test_kasami_m3_correlation_values_bruteforce():
    fam = kasami_family(3)
    bits = [list(s) for s in fam]
    values = set()
    for i in range(8):
        for j in range(i, 8):
            for t in range(63):
                if i == j and t == 0:
                    continue
                values.add(corr_bruteforce(bits[i], bits[j], t))
    assert values <= {-1, 7, -9}


@pytest.mark.parametrize("m", [3, 4, 5])
def test_kasami_parent_shift_structure(m):
    parent = kasami_array_family(m).shifts[0]
    counts = Counter(x for x in parent.values if x is not None)
    assert set(counts.values()) == {2}
    n = parent.n_cols
    assert all(parent.values[j] == parent.values[-j % n] for j in range(n))


@pytest.mark.parametrize("m", [3, 4])
def test_kasami_members_constant_columns(m):
    af = kasami_array_family(m)
    present = {x for x in af.shifts[0].values if x is not None}
    for k in range(2**m - 1):
        blanks = af.shifts[k + 1].values.count(None)
        assert blanks == (2 if k in present else 0)


def test_kasami_m4_complexity():
    fam = kasami_family(4)
    assert max(linear_complexity_periodic(s).l for s in fam) == 12


def test_no_kumar_base_is_member_zero():
    for m in (3, 4):
        for r in valid_no_kumar_exponents(m):
            assert no_kumar_family(m, r)[0] == no_kumar_base(m, r)


def test_no_kumar_r1_is_kasami():
    nk, kas = no_kumar_family(4, 1), kasami_family(4)
    assert [str(s) for s in nk] == [str(s) for s in kas]


def test_no_kumar_gcd():
    with pytest.raises(GcdNotOne):
        no_kumar_family(4, 3)
    assert valid_no_kumar_exponents(4) == [1, 2, 4, 7, 8, 11, 13, 14]


def test_no_kumar_m4_correlation_set():
    rep = family_correlation_report(no_kumar_family(4, 7))
    assert rep.support == {-1, 15, -17}


def test_generalized_nk_keeps_histogram():
    m = 3
    base = family_correlation_report(no_kumar_family(m, 1))
    gen = generalized_no_kumar_family(m, legendre(7))
    rep = family_correlation_report(gen)
    assert rep.value_histogram == base.value_histogram
    with pytest.raises(SequenceDesignError):
        generalized_no_kumar_family(m, legendre(11))


def test_family_text_roundtrip():
    fam = kasami_family(3)
    text = fam.to_text()
    assert text.splitlines()[0].startswith("# kind=kasami params=m=3")
    back = SequenceFamily.from_text(text)
    assert back.kind == fam.kind
    assert [str(s) for s in back] == [str(s) for s in fam]
    assert back.params["m"] == "3"


def test_family_validation():
    with pytest.raises(SequenceDesignError):
        SequenceFamily(fam_kind := kasami_family(2).kind, [])
    with pytest.raises(SequenceDesignError):
        SequenceFamily(fam_kind, [m_sequence(3), m_sequence(4)])


def test_base_column_detection():
    a = fold(m_sequence(6), 7, 9)
    col = base_column(a)
    assert not col.is_constant()
    assert any(shift(col, t) == a.column(j) for t in range(7) for j in range(9))
