from dataclasses import replace

import pytest

from jumpnum import (
    DualGraphEdge,
    InconsistentDataError,
    PrimeDivisor,
    ResolutionData,
    parse_fixture,
    self_intersections,
    validate,
)

from conftest import FIXTURES


@pytest.mark.parametrize("name", FIXTURES)
def test_shipped_fixtures_validate_clean(fixtures, name):
    assert validate(fixtures[name]) == []


@pytest.mark.parametrize("name", FIXTURES)
def test_validate_is_idempotent_and_pure(fixtures, name):
    data = fixtures[name]
    first = validate(data)
    second = validate(data)
    assert first == second


def _with_mult(data, div_id, mult):
    divisors = tuple(
        replace(d, mult=mult) if d.id == div_id else d for d in data.divisors
    )
    return replace(data, divisors=divisors)


def test_corrupted_cusp_multiplicity_is_diagnosed(cusp):
    corrupt = _with_mult(cusp, "E3", 5)
    diags = validate(corrupt)
    assert diags, "corruption must be detected"
    assert any(d.divisor == "E3" and d.relation == "pullback-pairing-zero" for d in diags)


def test_self_intersections_cusp(cusp):
    assert self_intersections(cusp) == {"E1": -3, "E2": -2, "E3": -1}


def test_self_intersections_single_blowup():
    data = ResolutionData(
        ambient_dim=2,
        divisors=(
            PrimeDivisor("D", 1, 0, "strict-transform"),
            PrimeDivisor("E", 1, 1, "exceptional"),
        ),
        dual_graph=(DualGraphEdge("D", "E"),),
    )
    assert self_intersections(data) == {"E": -1}


def test_self_intersections_x2y5(fixtures):
    data = fixtures["x2y5.json"]
    self_ints = self_intersections(data)
    assert self_ints == {"E1": -2, "E2": -3, "E3": -2, "E4": -1}
    assert all(v < 0 for v in self_ints.values())


def test_self_intersections_inexact_division_raises(cusp):
    # breaking a_E3 violates the pairing relation at the first neighbor
    # encountered; the error names the offending divisor
    corrupt = _with_mult(cusp, "E3", 5)
    with pytest.raises(InconsistentDataError, match=r"a_E\d = \d"):
        self_intersections(corrupt)


def test_exceptional_needs_positive_discrepancy(cusp):
    divisors = tuple(
        replace(d, discrepancy=0) if d.id == "E1" else d for d in cusp.divisors
    )
    diags = validate(replace(cusp, divisors=divisors))
    assert any(d.relation == "exceptional-discrepancy" for d in diags)


def test_duplicate_edge_is_diagnosed(cusp):
    data = replace(cusp, dual_graph=cusp.dual_graph + (DualGraphEdge("E1", "E3"),))
    assert any(d.relation == "edge-unique" for d in validate(data))


def test_unknown_divisor_in_edge_is_diagnosed(cusp):
    data = replace(cusp, dual_graph=cusp.dual_graph + (DualGraphEdge("E1", "E9"),))
    assert any(d.relation == "edge-resolves" for d in validate(data))


def test_lattice_self_restriction_cross_check(ex45):
    lat = ex45.lattices["E1"]
    wrong = dict(lat.restrictions)
    wrong["E1"] = replace(wrong["E1"], coeffs=(-2, 0, 0))
    data = replace(ex45, lattices={"E1": replace(lat, restrictions=wrong)})
    assert any(d.relation == "self-restriction" for d in validate(data))


def test_lattice_history_class_mismatch_is_diagnosed(ex45):
    lat = ex45.lattices["E1"]
    wrong = dict(lat.restrictions)
    wrong["D1"] = replace(wrong["D1"], coeffs=(3, -1, -2))
    data = replace(ex45, lattices={"E1": replace(lat, restrictions=wrong)})
    diags = validate(data)
    assert any(d.relation == "history-class" for d in diags)


def test_divisor_order_is_preserved(fixtures):
    data = fixtures["whitney_plus_plane.json"]
    assert [d.id for d in data.divisors] == ["D1", "D2", "E1", "E2", "E3", "E4", "E5"]
