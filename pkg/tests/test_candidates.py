from fractions import Fraction as F

import pytest

from jumpnum import (
    PreconditionError,
    PrimeDivisor,
    ResolutionData,
    candidate_jumping_numbers,
    is_candidate_for,
    lct,
    skoda_extend,
)

from conftest import FIXTURES


def test_ex45_candidates_of_e1(ex45):
    cands = candidate_jumping_numbers(ex45, F(1))
    assert cands.for_divisor("E1") == (F(3, 7), F(4, 7), F(5, 7), F(6, 7), F(1))


def test_single_strict_transform_integers_only():
    data = ResolutionData(
        ambient_dim=2,
        divisors=(PrimeDivisor("D", 1, 0, "strict-transform"),),
        dual_graph=(),
    )
    cands = candidate_jumping_numbers(data, F(2))
    assert cands.values() == (F(1), F(2))


def test_sec7_candidates_of_e0(sec7):
    cands = candidate_jumping_numbers(sec7, F(1))
    assert cands.for_divisor("E0") == (F(3, 4), F(1))


def test_lct_values(ex45, sec7, fixtures):
    assert lct(ex45) == (F(3, 7), frozenset({"E1"}))
    assert lct(fixtures["whitney_plus_plane.json"]) == (F(5, 6), frozenset({"E2"}))
    assert lct(sec7) == (F(7, 10), frozenset({"E4"}))


@pytest.mark.parametrize("name", FIXTURES)
def test_lct_is_first_candidate(fixtures, name):
    data = fixtures[name]
    cands = candidate_jumping_numbers(data, F(1))
    assert cands.entries, "1 is always a candidate"
    value, achievers = lct(data)
    assert value == cands.entries[0].value
    assert achievers <= cands.entries[0].supporters
    assert value <= 1


@pytest.mark.parametrize("name", FIXTURES)
def test_candidates_monotone_in_upper(fixtures, name):
    data = fixtures[name]
    small = candidate_jumping_numbers(data, F(1)).entries
    large = candidate_jumping_numbers(data, F(5, 2)).entries
    assert large[: len(small)] == small
    assert len(large) >= len(small)


@pytest.mark.parametrize("name", FIXTURES)
def test_every_generated_value_is_supported(fixtures, name):
    data = fixtures[name]
    upper = F(2)
    cands = candidate_jumping_numbers(data, upper)
    table = {e.value: e for e in cands.entries}
    for d in data.divisors:
        n = 1
        while F(d.discrepancy + n, d.mult) <= upper:
            lam = F(d.discrepancy + n, d.mult)
            assert d.id in table[lam].supporters
            assert d.id in table[lam].candidate_for
            n += 1


def test_broad_candidate_flag_is_weaker_than_support(cusp):
    cands = candidate_jumping_numbers(cusp, F(1))
    entry = {e.value: e for e in cands.entries}[F(5, 6)]
    # 5/6 is generated only by E3 but is a candidate for E3 alone among
    # divisors: 5/6 * 2 and 5/6 * 3 are not integers
    assert entry.supporters == frozenset({"E3"})
    assert entry.candidate_for == frozenset({"E3"})
    assert is_candidate_for(cusp, ("E3",), F(5, 6))
    assert not is_candidate_for(cusp, ("E1",), F(5, 6))
    assert is_candidate_for(cusp, ("E1", "E2", "E3", "D"), F(1))


def test_skoda_extension_matches_periodicity():
    base = {F(7, 10), F(9, 10), F(1)}
    assert skoda_extend(base, F(2)) == {
        F(7, 10), F(9, 10), F(1), F(17, 10), F(19, 10), F(2)
    }
    assert skoda_extend(set(), F(5)) == set()
    assert skoda_extend({F(5, 6), F(1)}, F(3)) == {
        F(5, 6), F(1), F(11, 6), F(2), F(17, 6), F(3)
    }


def test_skoda_rejects_values_outside_unit_interval():
    with pytest.raises(PreconditionError):
        skoda_extend({F(3, 2)}, F(2))
    with pytest.raises(PreconditionError):
        skoda_extend({F(0)}, F(2))
