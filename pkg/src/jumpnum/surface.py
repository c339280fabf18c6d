"""Jumping numbers and contribution for curves on smooth surfaces.

On a surface the pushed-forward sheaf attached to an exceptionally
supported divisor is classified by its antinef closure, the smallest
coefficient-wise larger divisor pairing non-positively against every
exceptional curve.  The closure is computed by unloading: while some
exceptional E pairs positively, raise its coefficient by the least amount
that could fix the sign.  Walking the candidate list and comparing
closures of the rounding divisors floor(lambda pi*C) - K detects exactly
the jumping numbers; the closure just below the first candidate is the
closure of the zero divisor.

Contribution of a candidate by a prime exceptional E reduces to a degree
count on E = P^1: E contributes lambda exactly when
deg(floor(lambda pi*C)|_E) <= -2.  For a reduced connected chain of
exceptional curves the section space of the corresponding line bundle on
the chain is computed by exact linear algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .candidates import candidate_jumping_numbers
from .errors import InternalError, PreconditionError
from .model import ContributionVerdict, ResolutionData, is_candidate_for, self_intersections

UNLOADING_CAP = 10**6


@dataclass(frozen=True)
class SurfaceGeometry:
    """Derived intersection data shared by the surface operations."""

    data: ResolutionData
    neighbors: Mapping[str, Mapping[str, int]]
    self_ints: Mapping[str, int]

    @classmethod
    def of(cls, data: ResolutionData) -> "SurfaceGeometry":
        if data.ambient_dim != 2:
            raise PreconditionError(
                f"surface operation on ambient dimension {data.ambient_dim}"
            )
        if data.dual_graph is None:
            raise PreconditionError("surface data without a dual graph")
        return cls(data, data.adjacency(), self_intersections(data))

    def pair_with(self, exc: Mapping[str, int], strict: Mapping[str, int], eid: str) -> int:
        """Intersection of an integer divisor with the exceptional curve eid."""
        total = exc.get(eid, 0) * self.self_ints[eid]
        for other, inter in self.neighbors[eid].items():
            coeff = exc.get(other, 0) if other in self.self_ints else strict.get(other, 0)
            total += coeff * inter
        return total


@dataclass(frozen=True)
class ExceptionalDivisorProfile:
    """Surface profile of one exceptional curve: multiplicity, discrepancy,
    self-intersection and valency d = E . (reduced total transform - E)."""

    id: str
    a: int
    k: int
    self_int: int
    d: int


def exceptional_profiles(data: ResolutionData) -> tuple[ExceptionalDivisorProfile, ...]:
    geo = SurfaceGeometry.of(data)
    rows = []
    for eid in data.exceptional_ids:
        d = sum(geo.neighbors[eid].values())
        rows.append(
            ExceptionalDivisorProfile(
                eid, data.mult(eid), data.discrepancy(eid), geo.self_ints[eid], d
            )
        )
    return tuple(rows)


@dataclass(frozen=True)
class AntinefDivisor:
    """Integer divisor with fixed strict-transform part, antinef certificate
    being D . E <= 0 against every exceptional curve."""

    exceptional: tuple[tuple[str, int], ...]
    strict: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, exc: Mapping[str, int], strict: Mapping[str, int]) -> "AntinefDivisor":
        return cls(tuple(sorted(exc.items())), tuple(sorted(strict.items())))

    @property
    def exceptional_map(self) -> dict[str, int]:
        return dict(self.exceptional)

    @property
    def strict_map(self) -> dict[str, int]:
        return dict(self.strict)


def unloading_closure(
    data: ResolutionData,
    exceptional: Mapping[str, int],
    strict: Mapping[str, int] | None = None,
) -> AntinefDivisor:
    """Smallest divisor >= the input that is antinef.

    Only exceptional coefficients grow; the strict-transform part is fixed.
    While some exceptional E has positive pairing t, its coefficient is
    raised by ceil(t / -E^2).  Negative definiteness guarantees
    termination; an iteration cap converts that proof into a runtime
    guard against malformed input.
    """
    geo = SurfaceGeometry.of(data)
    exc = {eid: exceptional.get(eid, 0) for eid in data.exceptional_ids}
    fixed = {sid: (strict or {}).get(sid, 0) for sid in data.strict_ids}
    steps = 0
    changed = True
    while changed:
        changed = False
        for eid in data.exceptional_ids:
            t = geo.pair_with(exc, fixed, eid)
            if t > 0:
                exc[eid] += -(-t // (-geo.self_ints[eid]))  # ceil(t / -E^2)
                changed = True
                steps += 1
                if steps > UNLOADING_CAP:
                    raise InternalError(
                        "unloading did not terminate; the exceptional "
                        "intersection matrix is not negative definite"
                    )
    for eid in data.exceptional_ids:
        if geo.pair_with(exc, fixed, eid) > 0:
            raise InternalError("unloading produced a non-antinef divisor")
    return AntinefDivisor.of(exc, fixed)


def _rounding_divisor(
    data: ResolutionData, lam: Fraction
) -> tuple[dict[str, int], dict[str, int]]:
    """Ideal-defining divisor of the multiplier ideal at lambda.

    Exceptional part max(floor(lambda a_E) - k_E, 0), strict part
    floor(lambda a_j); a negative exceptional entry imposes no vanishing,
    so it is clamped at zero before unloading.
    """
    exc = {
        eid: max(math.floor(lam * data.mult(eid)) - data.discrepancy(eid), 0)
        for eid in data.exceptional_ids
    }
    strict = {sid: math.floor(lam * data.mult(sid)) for sid in data.strict_ids}
    return exc, strict


def surface_jumping_numbers(data: ResolutionData, upper: Fraction) -> tuple[Fraction, ...]:
    """Complete list of jumping numbers in (0, upper] for a surface fixture.

    Walks the candidate list and emits a candidate exactly when the
    antinef closure of its rounding divisor differs from the closure at
    the previous candidate (the closure below the first candidate being
    that of the zero divisor).  Integers always enter through the strict
    transform part.
    """
    upper = Fraction(upper)
    geo = SurfaceGeometry.of(data)  # also validates the preconditions
    del geo
    walk = candidate_jumping_numbers(data, upper).values()
    jumps: list[Fraction] = []
    previous = unloading_closure(data, {}, {})
    for lam in walk:
        exc, strict = _rounding_divisor(data, lam)
        closure = unloading_closure(data, exc, strict)
        if closure != previous:
            jumps.append(lam)
        previous = closure
    return tuple(jumps)


def _floor_pairing(data: ResolutionData, geo: SurfaceGeometry, lam: Fraction, eid: str) -> int:
    """deg(floor(lambda pi*C)|_E) = sum_i floor(lambda a_i) (E_i . E)."""
    total = math.floor(lam * data.mult(eid)) * geo.self_ints[eid]
    for other, inter in geo.neighbors[eid].items():
        total += math.floor(lam * data.mult(other)) * inter
    return total


def _chain_components(
    geo: SurfaceGeometry, ids: tuple[str, ...]
) -> list[list[str]] | None:
    """Split ids into simple paths of the induced subgraph, or None if the
    induced shape is not a disjoint union of chains with transverse nodes."""
    inside: dict[str, list[str]] = {i: [] for i in ids}
    for i in ids:
        for other, inter in geo.neighbors[i].items():
            if other in inside:
                if inter != 1:
                    return None
                inside[i].append(other)
    if any(len(v) > 2 for v in inside.values()):
        return None
    seen: set[str] = set()
    chains: list[list[str]] = []
    for start in ids:
        if start in seen:
            continue
        # walk to an endpoint of this component, then traverse
        end = start
        prev = None
        for _ in range(len(ids) + 1):
            nxt = [n for n in inside[end] if n != prev]
            if not nxt:
                break
            prev, end = end, nxt[0]
        else:
            return None  # a cycle
        chain = [end]
        seen.add(end)
        prev = None
        while True:
            nxt = [n for n in inside[chain[-1]] if n != prev and n not in seen]
            if not nxt:
                break
            prev = chain[-1]
            chain.append(nxt[0])
            seen.add(nxt[0])
        chains.append(chain)
    return chains


def _chain_sections_nonzero(degrees: list[int]) -> bool:
    """Whether a line bundle of the given component degrees on a chain of
    projective lines has a nonzero section (exact kernel computation)."""
    cols: list[tuple[int, int]] = []  # (component, monomial exponent)
    for i, d in enumerate(degrees):
        for e in range(max(d + 1, 0)):
            cols.append((i, e))
    if not cols:
        return False
    rows: list[list[Fraction]] = []
    for i in range(len(degrees) - 1):
        # node between components i (parameter value 1) and i+1 (value 0)
        row = [Fraction(0)] * len(cols)
        for j, (comp, _e) in enumerate(cols):
            if comp == i:
                row[j] = Fraction(1)  # value at t = 1 is the coefficient sum
            elif comp == i + 1 and _e == 0:
                row[j] = Fraction(-1)  # value at t = 0 is the constant term
        rows.append(row)
    rank = 0
    for col in range(len(cols)):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col] * inv
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank < len(cols)


def surface_contributes(
    data: ResolutionData, div_ids: str | Iterable[str], lam: Fraction
) -> ContributionVerdict:
    """Contribution verdict for a candidate on a surface.

    Prime E: contributes exactly when deg(floor(lambda pi*C)|_E) <= -2,
    the degree at which the twisted canonical class of P^1 acquires a
    section.  Reduced E with several components: handled when the
    components form disjoint chains with transverse crossings, by
    deciding whether the glued section space is nonzero; other shapes are
    reported as undecidable.
    """
    lam = Fraction(lam)
    ids = (div_ids,) if isinstance(div_ids, str) else tuple(div_ids)
    geo = SurfaceGeometry.of(data)
    for i in ids:
        if not data.divisor(i).is_exceptional:
            raise PreconditionError(f"{i} is not an exceptional divisor")
    if not is_candidate_for(data, ids, lam):
        raise PreconditionError(
            f"lambda = {lam} is not a candidate for {', '.join(ids)}"
        )
    if len(ids) == 1:
        eid = ids[0]
        degree = _floor_pairing(data, geo, lam, eid)
        verdict = (
            ContributionVerdict.CONTRIBUTES
            if degree <= -2
            else ContributionVerdict.DOES_NOT
        )
        return ContributionVerdict(
            ids,
            lam,
            verdict,
            "surface-degree",
            {"degree": degree, "threshold": -2},
        )
    chains = _chain_components(geo, ids)
    if chains is None:
        return ContributionVerdict(
            ids,
            lam,
            ContributionVerdict.UNDECIDABLE,
            "surface-degree",
            {"reason": "components do not form transverse chains"},
        )
    inside = {i for chain in chains for i in chain}
    per_chain = []
    any_sections = False
    for chain in chains:
        degrees = []
        for eid in chain:
            nbrs_inside = sum(
                1 for other in geo.neighbors[eid] if other in inside
            )
            degrees.append(-2 + nbrs_inside - _floor_pairing(data, geo, lam, eid))
        nonzero = _chain_sections_nonzero(degrees)
        any_sections = any_sections or nonzero
        per_chain.append({"chain": tuple(chain), "degrees": tuple(degrees)})
    verdict = (
        ContributionVerdict.CONTRIBUTES if any_sections else ContributionVerdict.DOES_NOT
    )
    return ContributionVerdict(
        ids, lam, verdict, "surface-degree", {"chains": tuple(per_chain)}
    )


@dataclass(frozen=True)
class SurfaceCriterionRow:
    """Valency test on a minimal embedded resolution: an exceptional curve
    contributes (equivalently, survives the log canonical model) exactly
    when it meets the rest of the reduced total transform at least three
    times, and then it contributes 1 - 1/a."""

    id: str
    d: int
    a: int
    contributes: bool
    contributed_number: Fraction
    survives_lc_model: bool


def surface_criterion_report(data: ResolutionData) -> tuple[SurfaceCriterionRow, ...]:
    if not data.minimal_resolution:
        raise PreconditionError(
            "the valency criterion needs the minimal-resolution assertion "
            "(set flags.minimal_resolution in the fixture)"
        )
    rows = []
    for prof in exceptional_profiles(data):
        rows.append(
            SurfaceCriterionRow(
                prof.id,
                prof.d,
                prof.a,
                prof.d >= 3,
                Fraction(prof.a - 1, prof.a),
                prof.d >= 3,
            )
        )
    return rows and tuple(rows) or ()
