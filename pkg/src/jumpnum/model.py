"""Core data model for log-resolution combinatorics.

A :class:`ResolutionData` records the combinatorial shadow of a log
resolution of an effective divisor D on a smooth variety of dimension n:
the prime components of the total transform with their multiplicities a_i
(coefficient in the pullback of D) and discrepancies k_i (coefficient in
the relative canonical divisor), plus, for surfaces, the weighted dual
graph, and, for selected exceptional divisors in higher dimension, exact
Picard-lattice data (see :mod:`jumpnum.lattice`).

Everything is immutable after construction and all operations are pure
functions, so the types are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InconsistentDataError, PreconditionError
from .lattice import ExcDivLattice, check_lattice_relations

EXCEPTIONAL = "exceptional"
STRICT_TRANSFORM = "strict-transform"
KINDS = (EXCEPTIONAL, STRICT_TRANSFORM)


@dataclass(frozen=True)
class PrimeDivisor:
    """One prime component of the total transform.

    ``mult`` is the coefficient a_i of the component in the pullback of D
    and ``discrepancy`` the coefficient k_i in the relative canonical
    divisor.  Strict transforms carry discrepancy 0; exceptional divisors
    over a smooth ambient space have discrepancy at least 1.
    """

    id: str
    mult: int
    discrepancy: int
    kind: str
    name: str = ""

    def __post_init__(self):
        if not self.name:
            object.__setattr__(self, "name", self.id)

    @property
    def is_exceptional(self) -> bool:
        return self.kind == EXCEPTIONAL


@dataclass(frozen=True)
class DualGraphEdge:
    """Intersection number of two distinct components on a surface."""

    a: str
    b: str
    intersection: int = 1

    @property
    def pair(self) -> frozenset[str]:
        return frozenset((self.a, self.b))


@dataclass(frozen=True)
class ResolutionData:
    """Combinatorial record of a log resolution.

    ``dual_graph`` is required when ``ambient_dim == 2``.  ``lattices``
    maps divisor ids to Picard-lattice descriptions of individual
    exceptional divisors in higher dimension.  ``minimal_resolution`` is a
    caller-supplied assertion that the surface data comes from a minimal
    embedded resolution; it cannot be verified from the dual graph alone.
    """

    ambient_dim: int
    divisors: tuple[PrimeDivisor, ...]
    dual_graph: tuple[DualGraphEdge, ...] | None = None
    lattices: Mapping[str, ExcDivLattice] = field(default_factory=dict)
    provenance: str = ""
    minimal_resolution: bool = False

    def divisor(self, div_id: str) -> PrimeDivisor:
        for d in self.divisors:
            if d.id == div_id:
                return d
        raise KeyError(f"unknown divisor id {div_id!r}")

    def has_divisor(self, div_id: str) -> bool:
        return any(d.id == div_id for d in self.divisors)

    def mult(self, div_id: str) -> int:
        return self.divisor(div_id).mult

    def discrepancy(self, div_id: str) -> int:
        return self.divisor(div_id).discrepancy

    @property
    def exceptional_ids(self) -> tuple[str, ...]:
        return tuple(d.id for d in self.divisors if d.is_exceptional)

    @property
    def strict_ids(self) -> tuple[str, ...]:
        return tuple(d.id for d in self.divisors if not d.is_exceptional)

    def adjacency(self) -> dict[str, dict[str, int]]:
        """Neighbor map with intersection numbers (surfaces)."""
        nbrs: dict[str, dict[str, int]] = {d.id: {} for d in self.divisors}
        for e in self.dual_graph or ():
            nbrs[e.a][e.b] = e.intersection
            nbrs[e.b][e.a] = e.intersection
        return nbrs


@dataclass(frozen=True)
class Diagnostic:
    """One violated invariant or consistency relation."""

    divisor: str
    relation: str
    message: str

    def __str__(self) -> str:
        return f"[{self.divisor}] {self.relation}: {self.message}"


@dataclass(frozen=True)
class ContributionVerdict:
    """Outcome of a per-(divisor, lambda) contribution test.

    ``verdict`` is one of ``contributes``, ``does-not-contribute`` or
    ``undecidable-with-given-data``; ``method`` names the test that fired
    and ``evidence`` carries the checkable certificate (an effectivity
    certificate, a degree computation, or the integers entering a
    closed-form inequality).
    """

    divisors: tuple[str, ...]
    lam: Fraction
    verdict: str
    method: str
    evidence: Mapping[str, object] = field(default_factory=dict)

    CONTRIBUTES = "contributes"
    DOES_NOT = "does-not-contribute"
    UNDECIDABLE = "undecidable-with-given-data"

    @property
    def contributes(self) -> bool:
        return self.verdict == self.CONTRIBUTES


def _validate_divisors(data: ResolutionData, out: list[Diagnostic]) -> None:
    seen: set[str] = set()
    for d in data.divisors:
        if d.id in seen:
            out.append(Diagnostic(d.id, "unique-id", "duplicate divisor id"))
        seen.add(d.id)
        if d.kind not in KINDS:
            out.append(Diagnostic(d.id, "kind", f"unknown kind {d.kind!r}"))
        if d.mult < 1:
            out.append(Diagnostic(d.id, "mult-positive", f"mult = {d.mult} < 1"))
        if d.discrepancy < 0:
            out.append(
                Diagnostic(d.id, "discrepancy-nonnegative", f"k = {d.discrepancy} < 0")
            )
        if d.kind == EXCEPTIONAL and d.discrepancy == 0:
            out.append(
                Diagnostic(
                    d.id,
                    "exceptional-discrepancy",
                    "exceptional divisor of a smooth ambient space needs k >= 1",
                )
            )


def _validate_graph(data: ResolutionData, out: list[Diagnostic]) -> None:
    if data.ambient_dim == 2 and data.dual_graph is None:
        out.append(
            Diagnostic("-", "dual-graph-required", "surface data without a dual graph")
        )
    ids = {d.id for d in data.divisors}
    pairs: set[frozenset[str]] = set()
    for e in data.dual_graph or ():
        if e.a == e.b:
            out.append(Diagnostic(e.a, "edge-distinct", "self edge in dual graph"))
            continue
        for end in (e.a, e.b):
            if end not in ids:
                out.append(Diagnostic(end, "edge-resolves", "edge endpoint undeclared"))
        if e.intersection < 1:
            out.append(
                Diagnostic(e.a, "edge-positive", f"intersection {e.intersection} < 1")
            )
        if e.pair in pairs:
            out.append(
                Diagnostic(e.a, "edge-unique", f"duplicate edge {e.a} -- {e.b}")
            )
        pairs.add(e.pair)


def _validate_surface_pairings(data: ResolutionData, out: list[Diagnostic]) -> None:
    """pi*D . E = 0 for every exceptional E, with integral negative E^2."""
    nbrs = data.adjacency()
    exc = data.exceptional_ids
    self_ints: dict[str, int] = {}
    ok = True
    for eid in exc:
        total = sum(data.mult(f) * m for f, m in nbrs[eid].items())
        a = data.mult(eid)
        if total <= 0 or total % a != 0:
            ok = False
            out.append(
                Diagnostic(
                    eid,
                    "pullback-pairing-zero",
                    f"pi*D . {eid} cannot vanish: sum a_F(F.{eid}) = {total} "
                    f"with a_{eid} = {a} (need a positive exact multiple)",
                )
            )
        else:
            self_ints[eid] = -(total // a)
    if ok and exc:
        minors_ok = _negative_definite(data, self_ints)
        if not minors_ok:
            out.append(
                Diagnostic(
                    "-",
                    "negative-definite",
                    "exceptional intersection matrix is not negative definite",
                )
            )


def _negative_definite(data: ResolutionData, self_ints: dict[str, int]) -> bool:
    exc = list(self_ints)
    nbrs = data.adjacency()
    matrix = [
        [
            self_ints[a] if a == b else nbrs[a].get(b, 0)
            for b in exc
        ]
        for a in exc
    ]
    # leading principal minors must alternate in sign, starting negative
    for k in range(1, len(exc) + 1):
        det = _det([row[:k] for row in matrix[:k]])
        if det == 0 or (det > 0) != (k % 2 == 0):
            return False
    return True


def _det(rows: list[list[int]]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


def validate(data: ResolutionData) -> list[Diagnostic]:
    """Check every type invariant and cross-module consistency relation.

    Returns an empty list exactly when the record is consistent: divisor
    invariants hold, graph references resolve, the surface pairing
    pi*D . E vanishes for every exceptional E with negative-definite
    intersection matrix, and every declared lattice satisfies the blow-up
    bookkeeping relations (degree/multiplicity and per-center).  Pure and
    idempotent; never mutates its input.
    """
    out: list[Diagnostic] = []
    if data.ambient_dim < 2:
        out.append(Diagnostic("-", "ambient-dim", "ambient dimension must be >= 2"))
    _validate_divisors(data, out)
    _validate_graph(data, out)
    graph_broken = any(
        d.relation in ("edge-resolves", "edge-distinct", "unique-id", "mult-positive")
        for d in out
    )
    if data.ambient_dim == 2 and data.dual_graph is not None and not graph_broken:
        _validate_surface_pairings(data, out)
    ids = {d.id for d in data.divisors}
    for eid, lat in data.lattices.items():
        if eid not in ids:
            out.append(Diagnostic(eid, "lattice-resolves", "lattice for unknown divisor"))
            continue
        out.extend(check_lattice_relations(data, eid, lat))
    return out


def self_intersections(data: ResolutionData) -> dict[str, int]:
    """Derive E^2 for every exceptional curve from pi*D . E = 0.

    Self-intersections are never stored in fixtures; they are forced by
    the other multiplicities through
    ``E^2 = -(sum_{F != E} a_F (F.E)) / a_E`` and the division must be
    exact.
    """
    if data.ambient_dim != 2 or data.dual_graph is None:
        raise PreconditionError("self-intersections need a surface with a dual graph")
    nbrs = data.adjacency()
    result: dict[str, int] = {}
    for eid in data.exceptional_ids:
        total = sum(data.mult(f) * m for f, m in nbrs[eid].items())
        a = data.mult(eid)
        if total % a != 0:
            raise InconsistentDataError(
                f"sum a_F (F.{eid}) = {total} is not divisible by a_{eid} = {a}"
            )
        result[eid] = -(total // a)
    return result


def is_candidate_for(data: ResolutionData, div_ids: Iterable[str], lam: Fraction) -> bool:
    """Whether lambda * a_E is an integer for every listed component.

    This is the broad candidate predicate required by contribution tests;
    it is weaker than membership in the generated candidate list of any
    single divisor.
    """
    lam = Fraction(lam)
    return all((lam * data.mult(i)).denominator == 1 for i in div_ids)
