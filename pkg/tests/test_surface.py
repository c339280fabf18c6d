"""Surface engine tests.

The independent oracle for the x^p = y^q family is the classical closed
form: the jumping numbers in (0, 1) are {i/p + j/q : i, j >= 1} and every
positive integer is a jumping number, so in (0, 1] the expected set is
the closed form united with {1}.  The oracle never touches the unloading
path it checks.
"""

from fractions import Fraction as F

import pytest

from jumpnum import (
    InternalError,
    PreconditionError,
    candidate_jumping_numbers,
    exceptional_profiles,
    node_resolution,
    ordinary_point_resolution,
    smooth_curve_resolution,
    surface_contributes,
    surface_criterion_report,
    surface_jumping_numbers,
    unloading_closure,
    validate,
    xpyq_resolution,
)
from jumpnum.surface import SurfaceGeometry, _chain_sections_nonzero

COPRIME_PAIRS = [
    (p, q) for p in range(2, 7) for q in range(p + 1, 8) if __import__("math").gcd(p, q) == 1
]


def closed_form_oracle(p, q, upper):
    """{i/p + j/q : i, j >= 1} plus the integers, cut to (0, upper]."""
    out = set()
    i = 1
    while F(i, p) < upper:
        j = 1
        while F(i, p) + F(j, q) <= upper:
            out.add(F(i, p) + F(j, q))
            j += 1
        i += 1
    out.update(F(n) for n in range(1, int(upper) + 1))
    return out


def test_coprime_pair_list():
    assert len(COPRIME_PAIRS) == 11


@pytest.mark.parametrize("p,q", COPRIME_PAIRS)
def test_oracle_equivalence_xpyq(p, q):
    data = xpyq_resolution(p, q)
    assert validate(data) == []
    computed = set(surface_jumping_numbers(data, F(1)))
    assert computed == closed_form_oracle(p, q, F(1))


def test_generated_cusp_matches_shipped_fixture(cusp):
    gen = xpyq_resolution(2, 3)
    assert {(d.id, d.mult, d.discrepancy) for d in gen.divisors} == {
        (d.id, d.mult, d.discrepancy) for d in cusp.divisors
    }
    assert {e.pair for e in gen.dual_graph} == {e.pair for e in cusp.dual_graph}


def test_cusp_walk(cusp):
    assert surface_jumping_numbers(cusp, F(1)) == (F(5, 6), F(1))
    assert surface_jumping_numbers(cusp, F(2)) == (F(5, 6), F(1), F(11, 6), F(2))


def test_x2y5_walk(fixtures):
    assert surface_jumping_numbers(fixtures["x2y5.json"], F(1)) == (
        F(7, 10),
        F(9, 10),
        F(1),
    )


def test_node_and_triple_point():
    node = node_resolution()
    assert validate(node) == []
    assert surface_jumping_numbers(node, F(1)) == (F(1),)
    triple = ordinary_point_resolution(3)
    assert validate(triple) == []
    assert surface_jumping_numbers(triple, F(1)) == (F(2, 3), F(1))


def test_smooth_curve_integers_only():
    data = smooth_curve_resolution()
    assert surface_jumping_numbers(data, F(3)) == (F(1), F(2), F(3))


@pytest.mark.parametrize("upper", [F(1), F(2)])
def test_every_integer_is_emitted(fixtures, upper):
    for name in ("cusp.json", "x2y5.json", "node.json"):
        jumps = set(surface_jumping_numbers(fixtures[name], upper))
        for n in range(1, int(upper) + 1):
            assert F(n) in jumps


def test_unloading_fixed_point(cusp):
    # pi*C itself is antinef, so it is its own closure
    exc = {"E1": 2, "E2": 3, "E3": 6}
    strict = {"D": 1}
    closure = unloading_closure(cusp, exc, strict)
    assert closure.exceptional_map == exc
    assert closure.strict_map == strict


def test_unloading_single_minus_one_curve():
    from jumpnum import DualGraphEdge, PrimeDivisor, ResolutionData

    data = ResolutionData(
        ambient_dim=2,
        divisors=(
            PrimeDivisor("D", 1, 0, "strict-transform"),
            PrimeDivisor("E", 1, 1, "exceptional"),
        ),
        dual_graph=(DualGraphEdge("D", "E"),),
    )
    closure = unloading_closure(data, {"E": 1})
    assert closure.exceptional_map == {"E": 1}


def test_unloading_certifies_jump_at_five_sixths(cusp):
    # rounding divisor just below 5/6 is zero; at 5/6 it unloads to (1,1,2)
    below = unloading_closure(cusp, {}, {"D": 0})
    at = unloading_closure(cusp, {"E1": 0, "E2": 0, "E3": 1}, {"D": 0})
    assert below.exceptional_map == {"E1": 0, "E2": 0, "E3": 0}
    assert at.exceptional_map == {"E1": 1, "E2": 1, "E3": 2}
    assert any(
        at.exceptional_map[e] > below.exceptional_map[e] for e in at.exceptional_map
    )


def test_unloading_output_is_antinef(cusp):
    geo = SurfaceGeometry.of(cusp)
    closure = unloading_closure(cusp, {"E3": 4}, {"D": 2})
    exc = closure.exceptional_map
    strict = closure.strict_map
    for eid in cusp.exceptional_ids:
        assert geo.pair_with(exc, strict, eid) <= 0


def test_unloading_iteration_guard_fires(cusp, monkeypatch):
    # derived self-intersections always terminate, so exercise the guard
    # by shrinking the cap below the number of steps the cusp walk needs
    import jumpnum.surface as surface_mod

    monkeypatch.setattr(surface_mod, "UNLOADING_CAP", 0)
    with pytest.raises(InternalError):
        unloading_closure(cusp, {"E3": 1})


def test_closure_monotone_along_candidate_walk(fixtures):
    from jumpnum.surface import _rounding_divisor

    for name in ("cusp.json", "x2y5.json"):
        data = fixtures[name]
        walk = candidate_jumping_numbers(data, F(2)).values()
        prev = {eid: 0 for eid in data.exceptional_ids}
        for lam in walk:
            exc, strict = _rounding_divisor(data, lam)
            closure = unloading_closure(data, exc, strict).exceptional_map
            assert all(closure[e] >= prev[e] for e in closure)
            prev = closure


def test_surface_contributes_prime(cusp):
    v = surface_contributes(cusp, "E3", F(5, 6))
    assert v.contributes and v.evidence["degree"] == -2
    v = surface_contributes(cusp, "E1", F(1, 2))
    assert v.verdict == "does-not-contribute"
    blowup = ordinary_point_resolution(2)
    v = surface_contributes(blowup, "E", F(1, 2))
    assert v.verdict == "does-not-contribute"


def test_surface_contributes_requires_candidate(cusp):
    with pytest.raises(PreconditionError):
        surface_contributes(cusp, "E1", F(5, 6))


def test_surface_contributes_requires_exceptional(cusp):
    with pytest.raises(PreconditionError):
        surface_contributes(cusp, "D", F(1))


def test_reducible_chain_total_transform_at_one(cusp):
    # the three exceptional curves form a chain; the glued section space
    # at lambda = 1 is zero, so the full exceptional locus does not
    # contribute 1 (the strict transform does)
    v = surface_contributes(cusp, ("E1", "E2", "E3"), F(1))
    assert v.verdict == "does-not-contribute"
    degrees = {tuple(c["chain"]): c["degrees"] for c in v.evidence["chains"]}
    assert len(degrees) == 1


def test_reducible_pair_agrees_with_know_values(fixtures):
    data = fixtures["x2y5.json"]
    v = surface_contributes(data, ("E2", "E4"), F(1, 2))
    assert v.verdict == "does-not-contribute"


def test_reducible_reduces_to_prime_degree_test(fixtures):
    # for singleton input the chain machinery and the degree test agree
    from jumpnum.surface import _floor_pairing

    for name in ("cusp.json", "x2y5.json", "node.json"):
        data = fixtures[name]
        geo = SurfaceGeometry.of(data)
        cands = candidate_jumping_numbers(data, F(1))
        for eid in data.exceptional_ids:
            a = data.mult(eid)
            for entry in cands.entries:
                if (entry.value * a).denominator != 1:
                    continue
                prime = surface_contributes(data, eid, entry.value)
                chain_degree = -2 - _floor_pairing(data, geo, entry.value, eid)
                assert _chain_sections_nonzero([chain_degree]) == prime.contributes


def test_chain_sections_linear_algebra():
    assert _chain_sections_nonzero([0])
    assert not _chain_sections_nonzero([-1])
    assert _chain_sections_nonzero([1, 0])  # degree-1 piece can vanish at the node
    assert not _chain_sections_nonzero([-1, 0, -1])  # middle constant pinched to 0
    # a degree-1 section vanishing at two distinct nodes is zero
    assert not _chain_sections_nonzero([-1, 1, -1])
    # degree 2 admits t(t - 1)
    assert _chain_sections_nonzero([-1, 2, -1])


def test_valency_report_cusp_and_ordinary_points(cusp):
    rows = {r.id: r for r in surface_criterion_report(cusp)}
    assert rows["E3"].d == 3 and rows["E3"].contributes
    assert rows["E3"].contributed_number == F(5, 6)
    assert not rows["E1"].contributes and rows["E1"].d == 1
    assert not rows["E2"].contributes

    node_rows = surface_criterion_report(node_resolution())
    assert node_rows[0].d == 2 and not node_rows[0].contributes

    triple_rows = surface_criterion_report(ordinary_point_resolution(3))
    assert triple_rows[0].d == 3 and triple_rows[0].contributes
    assert triple_rows[0].contributed_number == F(2, 3)


def test_valency_report_requires_minimal_flag(ex45):
    from dataclasses import replace

    data = replace(node_resolution(), minimal_resolution=False)
    with pytest.raises(PreconditionError):
        surface_criterion_report(data)


def test_criterion_agrees_with_degree_test_on_minimal_fixtures(fixtures):
    for name in ("cusp.json", "x2y5.json", "node.json"):
        data = fixtures[name]
        jumps = set(surface_jumping_numbers(data, F(1)))
        for row in surface_criterion_report(data):
            verdict = surface_contributes(data, row.id, row.contributed_number)
            assert verdict.contributes == row.contributes
            if row.contributes:
                assert row.contributed_number in jumps


def test_exceptional_profiles(fixtures):
    profs = {p.id: p for p in exceptional_profiles(fixtures["x2y5.json"])}
    assert profs["E4"].d == 3 and profs["E4"].self_int == -1
    assert profs["E1"].d == 1 and profs["E2"].d == 2 and profs["E3"].d == 1
