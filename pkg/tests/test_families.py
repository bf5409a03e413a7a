import pytest

from picf.arith import Surd, is_square
from picf.cf import PCF, pcf_value, unroll
from picf.errors import InvalidInputError
from picf.families import Family, family_eval, family_picf, family_rpcf, family_witnesses
from picf.pell import sqrt_rcf
from picf.variety import VarietyPoint, variety_residuals

GRID = range(-6, 7)


@pytest.mark.parametrize("fam, s, t, m", [("M3", 1, 1, 41), ("M2", 2, 1, 5), ("M1", 0, 0, 1), ("M2P", 2, 1, 6)])
def test_family_eval_examples(fam, s, t, m):
    assert family_eval(fam, s, t) == m


def test_m3_matches_expanded_polynomial():
    for s in GRID:
        for t in GRID:
            expanded = 16 * t * t * s**4 + 8 * t * s**3 + (8 * t * t + 1) * s * s + 6 * t * s + t * t + 1
            assert family_eval(Family.M3, s, t) == expanded


def test_family_picf_examples():
    main, a, b = family_picf("M3", 1, 1)
    assert (main.sign, main.pcf) == (1, PCF((6,), (2, 2, 12)))
    assert {a.pcf, b.pcf} == {PCF((7,), (-2, 3, 13)), PCF((6,), (3, -2, 13))}
    a, b = family_picf("M3", 0, 2)
    assert (a.sign, a.pcf) == (1, PCF((0,), (1, -2, 3)))
    assert (b.sign, b.pcf) == (1, PCF((1,), (2, -1, 5)))
    (e,) = family_picf("M1", 0, -2)
    assert (e.sign, e.pcf) == (-1, PCF((-2,), (-4,)))


def test_family_picf_unit_s_gives_three_forms():
    forms = family_picf("M3", 1, 0)
    assert [f.form for f in forms] == ["main", "s1-a", "s1-b"]
    assert forms[0].minimal is False
    assert [f.pcf for f in forms[1:]] == [PCF((2,), (-2, 3, 3)), PCF((1,), (3, -2, 3))]
    # M3(-1, t) = M3(1, -t)
    assert [f.pcf for f in family_picf("M3", -1, 2)[1:]] == [f.pcf for f in family_picf("M3", 1, -2)[1:]]


@pytest.mark.parametrize(
    "fam, s, t", [("M1", 0, 0), ("M2", 1, -1), ("M2", 0, 3), ("M2P", 1, -1), ("M2P", 1, -2), ("M3", 0, 0)]
)
def test_family_picf_rejects_degenerate(fam, s, t):
    with pytest.raises(InvalidInputError):
        family_picf(fam, s, t)


def test_family_picf_on_variety_and_valued():
    for fam in Family:
        for s in GRID:
            for t in GRID:
                try:
                    exps = family_picf(fam, s, t)
                except InvalidInputError:
                    continue
                m = family_eval(fam, s, t)
                for e in exps:
                    pt = VarietyPoint(e.pcf.preperiod[0], e.pcf.period)
                    assert variety_residuals(m, pt) == (0, 0)
                    assert pcf_value(e.pcf) == e.sign * Surd.sqrt(m)


@pytest.mark.parametrize(
    "fam, s, t, expected",
    [
        ("M2", 3, -2, PCF((5,), (1, 4, 1, 10))),
        ("M2P", 1, -3, PCF((1,), (1, 2))),
        ("M3", -1, 1, PCF((3,), (1, 1, 1, 1, 6))),
    ],
)
def test_family_rpcf_examples(fam, s, t, expected):
    assert family_rpcf(fam, s, t) == expected


@pytest.mark.parametrize("fam, s, t", [("M2", 2, 1), ("M3", 1, 1), ("M1", 0, 3), ("M2P", 0, -2)])
def test_family_rpcf_rejects_outside_ranges(fam, s, t):
    with pytest.raises(InvalidInputError):
        family_rpcf(fam, s, t)


def test_family_rpcf_matches_classical_expansion():
    cases = [("M2", s, t) for s in range(1, 7) for t in range(-6, 0)]
    cases += [("M2P", s, t) for s in range(1, 7) for t in range(-6, 0)]
    cases += [("M3", s, t) for s in range(-5, 0) for t in range(1, 6)]
    for fam, s, t in cases:
        m = family_eval(fam, s, t)
        if m <= 0 or is_square(m):
            continue
        try:
            p = family_rpcf(fam, s, t)
        except InvalidInputError:
            continue
        assert unroll(p, 40) == unroll(sqrt_rcf(m), 40), (fam, s, t)


def test_rpcf_uses_absolute_s():
    assert family_rpcf("M2", -3, -2) == family_rpcf("M2", 3, -2)


@pytest.mark.parametrize(
    "m, fam, expected",
    [
        (5, "M1", [(0, -2), (0, 2)]),
        (5, "M3", [(-2, 0), (0, -2), (0, 2), (2, 0)]),
        (7, "M2", []),
        (5, "M2", [(-2, 1), (2, 1)]),
        (41, "M3", [(-1, -1), (1, 1)]),
    ],
)
def test_witness_examples(m, fam, expected):
    assert family_witnesses(m, fam) == expected


def test_witness_round_trip():
    for fam in Family:
        for s in GRID:
            for t in GRID:
                m = family_eval(fam, s, t)
                if m <= 0 or is_square(m):
                    continue
                if fam in (Family.M2, Family.M2P) and (s == 0 or t == 0):
                    continue
                ss = 0 if fam is Family.M1 else s
                assert (ss, t) in family_witnesses(m, fam)


def test_witnesses_are_exhaustive_small_m():
    limit = 400
    expected = {(m, fam): set() for m in range(1, limit) for fam in Family}
    # each family value exceeds limit outside this box once s, t are nonzero
    for fam in Family:
        for s in range(-25, 26):
            if fam is Family.M1 and s:
                continue
            for t in range(-2 * limit, 2 * limit + 1):
                if fam in (Family.M2, Family.M2P) and not (s and t):
                    continue
                m = family_eval(fam, s, t)
                if 1 <= m < limit:
                    expected[m, fam].add((s, t))
    for (m, fam), pairs in expected.items():
        assert set(family_witnesses(m, fam)) == pairs, (m, fam)


def test_witnesses_reject_nonpositive():
    with pytest.raises(InvalidInputError):
        family_witnesses(0, "M1")


def test_family_symmetries():
    for s in GRID:
        for t in GRID:
            assert family_eval("M2", s, t) == family_eval("M2", -s, t)
            assert family_eval("M2P", s, t) == family_eval("M2P", -s, t)
            assert family_eval("M3", s, t) == family_eval("M3", -s, -t)
            assert family_eval("M1", s, t) == family_eval("M1", 0, -t)
