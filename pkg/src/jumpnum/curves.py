"""Resolution fixtures for classical plane curve singularities.

The minimal embedded resolution of x^p = y^q (p, q coprime) is toric: it
corresponds to the minimal regular subdivision of the first-quadrant fan
containing the ray (q, p), whose rays are exactly the Stern-Brocot
mediant path from the quadrant to (q, p).  A ray u = (u1, u2) carries the
exceptional curve with multiplicity min(p u1, q u2) and discrepancy
u1 + u2 - 1; consecutive rays in angular order intersect transversally
and the strict transform of the curve meets the divisor of the ray (q, p).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import PreconditionError
from .model import (
    EXCEPTIONAL,
    STRICT_TRANSFORM,
    DualGraphEdge,
    PrimeDivisor,
    ResolutionData,
)

Ray = tuple[int, int]


def _det(u: Ray, v: Ray) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _mediant_path(target: Ray) -> list[Ray]:
    """Stern-Brocot path from the quadrant to the target primitive ray."""
    lo, hi = (1, 0), (0, 1)
    path: list[Ray] = []
    while True:
        mid = (lo[0] + hi[0], lo[1] + hi[1])
        path.append(mid)
        if mid == target:
            return path
        # target = x*lo + y*mid resp. x'*mid + y'*hi, in unimodular bases
        if _det(target, mid) > 0 and _det(lo, target) > 0:
            hi = mid
        elif _det(target, hi) > 0 and _det(mid, target) > 0:
            lo = mid
        else:
            raise PreconditionError(f"{target} is not interior to the quadrant")


def xpyq_resolution(p: int, q: int) -> ResolutionData:
    """Minimal embedded resolution data of the curve x^p = y^q, coprime p < q.

    Exceptional divisors are named E1, E2, ... in creation (blow-up)
    order, the strict transform is D; the dual graph is the chain of rays
    in angular order with D attached at the ray (q, p).
    """
    if not (2 <= p < q):
        raise PreconditionError("need 2 <= p < q")
    if gcd(p, q) != 1:
        raise PreconditionError("p and q must be coprime")
    target: Ray = (q, p)
    path = _mediant_path(target)
    names = {ray: f"E{i}" for i, ray in enumerate(path, start=1)}
    divisors = [PrimeDivisor("D", 1, 0, STRICT_TRANSFORM, f"strict transform of x^{p} = y^{q}")]
    for ray in path:
        u1, u2 = ray
        divisors.append(
            PrimeDivisor(names[ray], min(p * u1, q * u2), u1 + u2 - 1, EXCEPTIONAL)
        )
    # angular order by exact slope u2/u1; consecutive rays span smooth cones
    ordered = sorted(path, key=lambda u: Fraction(u[1], u[0]))
    edges = [
        DualGraphEdge(names[a], names[b])
        for a, b in zip(ordered, ordered[1:])
    ]
    edges.append(DualGraphEdge("D", names[target]))
    return ResolutionData(
        ambient_dim=2,
        divisors=tuple(divisors),
        dual_graph=tuple(edges),
        provenance=(
            f"Minimal embedded resolution of x^{p} = y^{q}, built from the "
            f"mediant subdivision of the first-quadrant fan at the ray {target}."
        ),
        minimal_resolution=True,
    )


def node_resolution() -> ResolutionData:
    """One blow-up resolving the ordinary node x^2 = y^2."""
    return ResolutionData(
        ambient_dim=2,
        divisors=(
            PrimeDivisor("D1", 1, 0, STRICT_TRANSFORM, "branch x = y"),
            PrimeDivisor("D2", 1, 0, STRICT_TRANSFORM, "branch x = -y"),
            PrimeDivisor("E", 2, 1, EXCEPTIONAL),
        ),
        dual_graph=(DualGraphEdge("D1", "E"), DualGraphEdge("D2", "E")),
        provenance="Blow-up of the origin separating the two branches of x^2 = y^2.",
        minimal_resolution=True,
    )


def ordinary_point_resolution(multiplicity: int) -> ResolutionData:
    """One blow-up resolving an ordinary m-fold point (m distinct lines)."""
    if multiplicity < 2:
        raise PreconditionError("an ordinary singular point needs multiplicity >= 2")
    branches = tuple(
        PrimeDivisor(f"D{i}", 1, 0, STRICT_TRANSFORM) for i in range(1, multiplicity + 1)
    )
    edges = tuple(DualGraphEdge(b.id, "E") for b in branches)
    return ResolutionData(
        ambient_dim=2,
        divisors=branches + (PrimeDivisor("E", multiplicity, 1, EXCEPTIONAL),),
        dual_graph=edges,
        provenance=f"Blow-up of an ordinary point of multiplicity {multiplicity}.",
        minimal_resolution=True,
    )


def smooth_curve_resolution() -> ResolutionData:
    """A smooth curve needs no blow-ups at all."""
    return ResolutionData(
        ambient_dim=2,
        divisors=(PrimeDivisor("D", 1, 0, STRICT_TRANSFORM, "the curve itself"),),
        dual_graph=(),
        provenance="A smooth curve; the identity map is already a log resolution.",
        minimal_resolution=True,
    )
