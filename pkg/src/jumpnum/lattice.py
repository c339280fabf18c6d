"""Exact Picard-lattice arithmetic on blown-up projective spaces.

An exceptional divisor E of a log resolution that is isomorphic to
P^{n-1} blown up along centers Z_1, ..., Z_r has Picard group Z^{1+r}
with basis (h, e_1, ..., e_r): h is the pullback of a hyperplane and e_l
the total transform of the l-th exceptional divisor.  In this basis the
intersection form is diagonal (h^2 = 1, e_l^2 = -1), so strict transforms
of the exceptional curves of infinitely near points read off directly,
e.g. e_1 - e_2 for the first exceptional curve after a second blow-up on
it.

The module houses the lattice data types, the canonical class and
self-restriction formulas driven by the blow-up history, the restriction
of rounded-down pullbacks, effectivity as exact rational cone membership
(Fourier-Motzkin with a certificate), and pairings against declared curve
families.  No intersection form is implemented beyond the pairing
vectors: every use is an explicit dot product against declared data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Mapping, Sequence

from .errors import (
    InconsistentDataError,
    InternalError,
    LatticeConfigError,
    PreconditionError,
)
from .rationals import frac

if TYPE_CHECKING:  # pragma: no cover
    from .model import Diagnostic, ResolutionData


@dataclass(frozen=True)
class PicClass:
    """Integer class c_0 h + sum c_l e_l, stored as (c_0, c_1, ..., c_r)."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def zero(cls, rank: int) -> "PicClass":
        return cls((0,) * rank)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "PicClass") -> "PicClass":
        return PicClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "PicClass") -> "PicClass":
        return PicClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "PicClass":
        return PicClass(tuple(-a for a in self.coeffs))

    @property
    def h(self) -> int:
        return self.coeffs[0]

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def mu_at(self, center_index: int) -> int:
        """Pairing with e_l under the diagonal form (= -c_l).

        For the strict transform of a curve through the centers this is
        its multiplicity at the center with 1-based index ``center_index``.
        """
        return -self.coeffs[center_index]

    def pretty(self) -> str:
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sym = "h" if i == 0 else f"e{i}"
            mag = abs(c)
            term = sym if mag == 1 else f"{mag}{sym}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


@dataclass(frozen=True)
class Center:
    """A blow-up center Z_l on E.

    ``dim`` is the dimension k_l of Z_l; ``delta`` is 1 exactly when the
    ambient center C_l lies inside E; ``infinitely_near_parent`` names the
    earlier center whose exceptional divisor carries this one, if any.
    """

    label: str
    dim: int = 0
    delta: int = 0
    infinitely_near_parent: str | None = None


@dataclass(frozen=True)
class CurveFamily:
    """A covering family of curves given by its pairings (h.C, e_1.C, ...)."""

    name: str
    pairings: tuple[int, ...]


@dataclass(frozen=True)
class ComponentHistory:
    """Blow-up bookkeeping for one non-center component E_j' on E.

    ``degree`` is d_j.  ``mu[l]`` is the multiplicity of E_j' at center l.
    ``times_center`` (m_j) counts how often the strict transform of E_j'
    was itself an ambient blow-up center after the creation of E and
    ``times_center_after[l]`` (m_j^(l)) how often after blowing up C_l.
    """

    degree: int
    mu: Mapping[str, int] = field(default_factory=dict)
    times_center: int = 0
    times_center_after: Mapping[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class BlowupHistory:
    components: Mapping[str, ComponentHistory] = field(default_factory=dict)
    center_times: Mapping[str, int] = field(default_factory=dict)  # m_l


@dataclass(frozen=True)
class LatticeFlags:
    """Caller-asserted hypotheses that cannot be read off the lattice data."""

    created_by_point_blowup: bool = False
    centers_in_hyperplane: bool = False
    effectivity_as_q_divisor: bool = False


@dataclass(frozen=True)
class ExcDivLattice:
    """Picard-lattice description of one exceptional divisor E.

    ``restrictions`` maps ids of other components to the class of their
    intersection with E; the id of E itself may appear and then declares
    E|_E (it is cross-checked against the blow-up history).  Components
    not listed restrict to the zero class.
    """

    divisor_id: str
    n: int
    centers: tuple[Center, ...] = ()
    restrictions: Mapping[str, PicClass] = field(default_factory=dict)
    effective_cone: tuple[PicClass, ...] = ()
    curve_families: tuple[CurveFamily, ...] = ()
    history: BlowupHistory | None = None
    flags: LatticeFlags = LatticeFlags()

    @property
    def rank(self) -> int:
        return 1 + len(self.centers)

    def center_index(self, label: str) -> int:
        for i, c in enumerate(self.centers):
            if c.label == label:
                return i + 1
        raise KeyError(f"unknown center label {label!r}")

    def family(self, name: str) -> CurveFamily:
        for f in self.curve_families:
            if f.name == name:
                return f
        raise LatticeConfigError(
            f"lattice of {self.divisor_id} declares no curve family {name!r} "
            f"(available: {[f.name for f in self.curve_families]})"
        )


def canonical_class(lat: ExcDivLattice) -> PicClass:
    """K_E = -n h + sum_l (n - k_l - 2) e_l."""
    return PicClass((-lat.n,) + tuple(lat.n - c.dim - 2 for c in lat.centers))


def creator_of_center(lat: ExcDivLattice, center_index: int) -> str | None:
    """Id of the component cutting out e_l on E.

    The exceptional divisor of the ambient blow-up at C_l meets E in the
    l-th exceptional curve, so its restriction class is e_l minus the
    later centers lying on that curve: h-coefficient 0, coefficient +1 at
    l, zero before l and 0 or -1 after.
    """
    for div_id, cls in lat.restrictions.items():
        if div_id == lat.divisor_id or cls.h != 0:
            continue
        cs = cls.coeffs
        if (
            cs[center_index] == 1
            and all(c == 0 for c in cs[1:center_index])
            and all(c in (0, -1) for c in cs[center_index + 1 :])
        ):
            return div_id
    return None


def _degree_relation(
    lat: ExcDivLattice, hist: BlowupHistory, a: int, mult_of
) -> str | None:
    """sum_j d_j a_j = (1 + sum_j d_j m_j) a over non-center components."""
    lhs = sum(h.degree * mult_of(j) for j, h in hist.components.items())
    rhs = (1 + sum(h.degree * h.times_center for h in hist.components.values())) * a
    if lhs != rhs:
        return (
            "degree-multiplicity relation sum d_j a_j = (1 + sum d_j m_j) a "
            f"violated: {lhs} != {rhs}"
        )
    return None


def _center_relations(
    lat: ExcDivLattice, hist: BlowupHistory, a: int, mult_of
) -> list[tuple[str, str]]:
    """Per-center multiplicity relation, in pairing form.

    a_l = sum_{F != E, F != creator(l)} a_F * mu_{F,l}
          + (m_l - sum_j mu_{jl} m_j^(l) + delta_l) a,
    where mu_{F,l} is read off the restriction classes via the diagonal
    pairing.  For pairwise disjoint centers this is the classical blow-up
    relation; the pairing form extends it to infinitely near centers,
    where earlier exceptional curves pass through later centers.
    """
    violations: list[tuple[str, str]] = []
    for idx, center in enumerate(lat.centers, start=1):
        creator = creator_of_center(lat, idx)
        if creator is None:
            violations.append(
                (center.label, f"no component cuts out e{idx} on E (missing creator)")
            )
            continue
        lhs = mult_of(creator)
        total = 0
        for div_id, cls in lat.restrictions.items():
            if div_id in (lat.divisor_id, creator):
                continue
            total += mult_of(div_id) * cls.mu_at(idx)
        correction = hist.center_times.get(center.label, 0) + center.delta
        correction -= sum(
            h.mu.get(center.label, 0) * h.times_center_after.get(center.label, 0)
            for h in hist.components.values()
        )
        rhs = total + correction * a
        if lhs != rhs:
            violations.append(
                (
                    center.label,
                    "center multiplicity relation a_l = sum mu_jl a_j + "
                    f"(m_l - sum mu_jl m_j^(l) + delta_l) a violated: {lhs} != {rhs}",
                )
            )
    return violations


def self_restriction(
    lat: ExcDivLattice,
    hist: BlowupHistory,
    a: int,
    component_mults: Mapping[str, int],
) -> PicClass:
    """E|_E from the blow-up history.

    E|_E = -(1 + sum_j d_j m_j) h
           - sum_l (m_l - sum_j mu_jl m_j^(l) + delta_l) e_l.
    The degree and center relations are re-checked first; a violation
    raises with the offending equation spelled out.
    """

    def mult_of(div_id: str) -> int:
        try:
            return component_mults[div_id]
        except KeyError:
            raise LatticeConfigError(f"no multiplicity given for component {div_id!r}")

    problem = _degree_relation(lat, hist, a, mult_of)
    if problem:
        raise InconsistentDataError(f"{lat.divisor_id}: {problem}")
    center_problems = _center_relations(lat, hist, a, mult_of)
    if center_problems:
        label, msg = center_problems[0]
        raise InconsistentDataError(f"{lat.divisor_id} (center {label}): {msg}")
    h_coeff = -(1 + sum(h.degree * h.times_center for h in hist.components.values()))
    e_coeffs = []
    for center in lat.centers:
        val = hist.center_times.get(center.label, 0) + center.delta
        val -= sum(
            h.mu.get(center.label, 0) * h.times_center_after.get(center.label, 0)
            for h in hist.components.values()
        )
        e_coeffs.append(-val)
    return PicClass((h_coeff, *e_coeffs))


def floor_pullback_restriction(
    data: "ResolutionData", div_id: str, lam: Fraction
) -> PicClass:
    """Class of floor(lambda pi*D)|_E on the lattice of E.

    Since pi*D restricts to zero on a divisor contracted to a point, the
    rounded-down pullback restricts to - sum_i {lambda a_i} (E_i|_E) over
    the other components.  The sum is accumulated over the rationals and
    each coordinate is asserted to be an integer; a fractional coordinate
    proves the declared restriction classes inconsistent.
    """
    lam = Fraction(lam)
    lat = data.lattices.get(div_id)
    if lat is None:
        raise LatticeConfigError(f"divisor {div_id!r} has no declared lattice")
    a_e = data.mult(div_id)
    if (lam * a_e).denominator != 1:
        raise PreconditionError(
            f"lambda = {lam} is not a candidate for {div_id}: lambda * {a_e} "
            "is not an integer"
        )
    acc = [Fraction(0)] * lat.rank
    for other_id, cls in lat.restrictions.items():
        if other_id == div_id:
            continue
        f = frac(lam * data.mult(other_id))
        if f == 0:
            continue
        for i, c in enumerate(cls.coeffs):
            acc[i] -= f * c
    for i, val in enumerate(acc):
        if val.denominator != 1:
            raise InconsistentDataError(
                f"floor(lambda pi*D)|_{div_id} has non-integral coordinate "
                f"{val} at position {i}; the declared restriction classes "
                "cannot all be correct"
            )
    return PicClass(tuple(int(v) for v in acc))


@dataclass(frozen=True)
class EffectivityResult:
    status: str  # "yes" | "no" | "unknown"
    certificate: tuple[Fraction, ...] | None = None
    generators: tuple[PicClass, ...] = ()

    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @property
    def effective(self) -> bool:
        return self.status == self.YES


def default_effective_cone(lat: ExcDivLattice) -> tuple[PicClass, ...] | None:
    """Shipped generator sets for the three standard configurations.

    (a) plain P^{n-1}: {h};
    (b) distinct point centers in one hyperplane: {e_1, ..., e_r, h - sum e_l};
    (c) a plane blown up at two infinitely near points, in the
        total-transform basis: {e_2, e_1 - e_2, h - e_1 - e_2}.
    Anything else needs user-supplied generators.
    """
    r = len(lat.centers)
    if r == 0:
        return (PicClass((1,)),)
    distinct_points = all(
        c.dim == 0 and c.infinitely_near_parent is None for c in lat.centers
    )
    if distinct_points and (r == 1 or lat.flags.centers_in_hyperplane):
        gens = [
            PicClass(tuple(1 if i == l else 0 for i in range(r + 1)))
            for l in range(1, r + 1)
        ]
        gens.append(PicClass((1,) + (-1,) * r))
        return tuple(gens)
    if (
        lat.n == 3
        and r == 2
        and lat.centers[0].infinitely_near_parent is None
        and lat.centers[1].infinitely_near_parent == lat.centers[0].label
        and all(c.dim == 0 for c in lat.centers)
    ):
        return (PicClass((0, 0, 1)), PicClass((0, 1, -1)), PicClass((1, -1, -1)))
    return None


def effective_cone_generators(lat: ExcDivLattice) -> tuple[PicClass, ...] | None:
    return lat.effective_cone or default_effective_cone(lat)


def nonnegative_combination(
    generators: Sequence[PicClass], target: PicClass
) -> tuple[Fraction, ...] | None:
    """Solve target = sum x_i g_i with rational x_i >= 0, exactly.

    Fourier-Motzkin elimination on the system of equalities and sign
    constraints; on success the eliminated bounds are back-substituted to
    produce an explicit certificate, which is re-checked against the
    target before returning.  Returns None when the system is infeasible.
    """
    m = len(generators)
    if m == 0:
        return () if target.is_zero else None
    dim = len(target)
    rows: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for mu in range(dim):
        col = tuple(Fraction(g.coeffs[mu]) for g in generators)
        b = Fraction(target.coeffs[mu])
        rows.append((col, b))
        rows.append((tuple(-c for c in col), -b))
    for i in range(m):
        rows.append(
            (tuple(Fraction(-1 if j == i else 0) for j in range(m)), Fraction(0))
        )

    stack: list[tuple[int, list, list]] = []
    cur = rows
    for k in reversed(range(m)):
        pos = [r for r in cur if r[0][k] > 0]
        neg = [r for r in cur if r[0][k] < 0]
        zero = [r for r in cur if r[0][k] == 0]
        stack.append((k, pos, neg))
        combined = list(zero)
        for p in pos:
            for q in neg:
                alpha, beta = p[0][k], -q[0][k]
                coeffs = tuple(beta * x + alpha * y for x, y in zip(p[0], q[0]))
                combined.append((coeffs, beta * p[1] + alpha * q[1]))
        cur = [r for r in dict.fromkeys(combined) if any(r[0]) or r[1] < 0]
    if any(rhs < 0 for _, rhs in cur):
        return None

    x = [Fraction(0)] * m
    for k, pos, neg in reversed(stack):
        low = Fraction(0)
        for coeffs, rhs in neg:
            rest = sum((coeffs[j] * x[j] for j in range(m) if j != k), Fraction(0))
            bound = (rhs - rest) / coeffs[k]
            low = max(low, bound)
        x[k] = low
        for coeffs, rhs in pos:
            rest = sum((coeffs[j] * x[j] for j in range(m) if j != k), Fraction(0))
            if low > (rhs - rest) / coeffs[k]:
                raise InternalError("Fourier-Motzkin back-substitution failed")
    for mu in range(dim):
        total = sum((x[i] * generators[i].coeffs[mu] for i in range(m)), Fraction(0))
        if total != target.coeffs[mu]:
            raise InternalError("certificate does not reproduce the target class")
    return tuple(x)


def is_effective(lat: ExcDivLattice, cls: PicClass) -> EffectivityResult:
    """Decide effectivity of a class by rational cone membership.

    Uses the declared generators, or the shipped defaults for the three
    standard configurations; with no generators available the answer is
    unknown.  Effectivity over the rationals is the working hypothesis of
    the contribution tests (asserted per lattice via the
    ``effectivity_as_q_divisor`` flag).
    """
    if len(cls) != lat.rank:
        raise PreconditionError(
            f"class rank {len(cls)} does not match lattice rank {lat.rank}"
        )
    gens = effective_cone_generators(lat)
    if gens is None:
        return EffectivityResult(EffectivityResult.UNKNOWN)
    cert = nonnegative_combination(gens, cls)
    if cert is None:
        return EffectivityResult(EffectivityResult.NO, generators=tuple(gens))
    return EffectivityResult(EffectivityResult.YES, cert, tuple(gens))


def pair(cls: PicClass, family: CurveFamily) -> Fraction:
    """Intersection number of a class with a curve of the family."""
    if len(cls) != len(family.pairings):
        raise PreconditionError(
            f"class rank {len(cls)} does not match pairing vector of "
            f"family {family.name!r}"
        )
    return Fraction(sum(c * p for c, p in zip(cls.coeffs, family.pairings)))


def check_lattice_relations(
    data: "ResolutionData", div_id: str, lat: ExcDivLattice
) -> list["Diagnostic"]:
    """All lattice diagnostics for validate(): structure plus Veys relations."""
    from .model import Diagnostic  # deferred to avoid an import cycle

    out: list[Diagnostic] = []

    def bad(relation: str, message: str, divisor: str | None = None):
        out.append(Diagnostic(divisor or div_id, relation, message))

    if lat.divisor_id != div_id:
        bad("lattice-id", f"lattice declares divisor_id {lat.divisor_id!r}")
    if lat.n != data.ambient_dim:
        bad("lattice-dim", f"lattice n = {lat.n} != ambient_dim {data.ambient_dim}")
    labels = [c.label for c in lat.centers]
    if len(set(labels)) != len(labels):
        bad("center-labels", "duplicate center labels")
    for i, c in enumerate(lat.centers):
        if c.dim < 0 or c.delta not in (0, 1):
            bad("center-fields", f"center {c.label}: dim {c.dim}, delta {c.delta}")
        if c.infinitely_near_parent is not None and (
            c.infinitely_near_parent not in labels[:i]
        ):
            bad(
                "center-parent",
                f"center {c.label}: parent {c.infinitely_near_parent!r} is not "
                "an earlier center",
            )
    for other_id, cls in lat.restrictions.items():
        if not data.has_divisor(other_id):
            bad("restriction-resolves", f"restriction for unknown divisor {other_id!r}")
        if len(cls) != lat.rank:
            bad(
                "class-length",
                f"restriction class of {other_id} has length {len(cls)}, "
                f"expected {lat.rank}",
            )
            return out
    for g in lat.effective_cone:
        if len(g) != lat.rank:
            bad("class-length", f"cone generator {g.coeffs} has wrong length")
            return out
    for fam in lat.curve_families:
        if len(fam.pairings) != lat.rank:
            bad("class-length", f"curve family {fam.name!r} has wrong length")
            return out
        if not any(fam.pairings):
            bad("family-nonzero", f"curve family {fam.name!r} pairs to zero")

    for idx, center in enumerate(lat.centers, start=1):
        if creator_of_center(lat, idx) is None:
            bad(
                "center-creator",
                f"no declared restriction cuts out e{idx} (center {center.label})",
                center.label,
            )

    hist = lat.history
    if hist is None:
        return out
    a = data.mult(div_id) if data.has_divisor(div_id) else 0
    for j, comp in hist.components.items():
        if j not in lat.restrictions:
            bad("history-restriction", f"history component {j!r} has no restriction")
            continue
        if comp.degree < 0 or comp.times_center < 0:
            bad("history-nonnegative", f"component {j}: negative history entry")
        for label, after in comp.times_center_after.items():
            if after < 0 or after > comp.times_center:
                bad(
                    "history-m-after",
                    f"component {j}: m^({label}) = {after} not in [0, m = "
                    f"{comp.times_center}]",
                )
        expected = [comp.degree] + [
            -comp.mu.get(c.label, 0) for c in lat.centers
        ]
        if lat.restrictions[j].coeffs != tuple(expected):
            bad(
                "history-class",
                f"component {j}: restriction {lat.restrictions[j].coeffs} != "
                f"d_j h - sum mu_jl e_l = {tuple(expected)}",
            )

    def mult_of(other_id: str) -> int:
        return data.mult(other_id)

    problem = _degree_relation(lat, hist, a, mult_of)
    if problem:
        bad("degree-multiplicity-relation", problem)
    for label, msg in _center_relations(lat, hist, a, mult_of):
        bad("center-multiplicity-relation", msg, label)

    declared_self = lat.restrictions.get(div_id)
    if declared_self is not None and not out:
        mults = {j: data.mult(j) for j in lat.restrictions if j != div_id}
        mults.update({j: data.mult(j) for j in hist.components})
        computed = self_restriction(lat, hist, a, mults)
        if declared_self != computed:
            bad(
                "self-restriction",
                f"declared E|_E = {declared_self.coeffs} but the blow-up history "
                f"gives {computed.coeffs}",
            )
    return out


def derive_degrees_and_multiplicities(
    lat: ExcDivLattice,
) -> tuple[int, tuple[int, ...]]:
    """(d, (mu_1, ..., mu_r)) of the intersection configuration on E.

    d sums the h-degrees of the non-center components (those whose
    restriction has positive h-coefficient); mu_l sums their
    multiplicities at the l-th center, read off the restriction classes.
    """
    d = 0
    mus = [0] * len(lat.centers)
    for div_id, cls in lat.restrictions.items():
        if div_id == lat.divisor_id or cls.h <= 0:
            continue
        d += cls.h
        for l in range(1, len(lat.centers) + 1):
            mus[l - 1] += cls.mu_at(l)
    return d, tuple(mus)


def boundary_restriction(data: "ResolutionData", div_id: str) -> PicClass:
    """Class of (reduced total transform - E) restricted to E."""
    lat = data.lattices.get(div_id)
    if lat is None:
        raise LatticeConfigError(f"divisor {div_id!r} has no declared lattice")
    acc = PicClass.zero(lat.rank)
    for other_id, cls in lat.restrictions.items():
        if other_id == div_id:
            continue
        acc = acc + cls
    return acc
