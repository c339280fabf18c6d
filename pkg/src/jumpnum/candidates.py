"""Candidate jumping numbers, log canonical threshold, integer periodicity.

Every jumping number of the pair lies in the set {(k_i + n)/a_i : n >= 1}
built from the multiplicities and discrepancies of one log resolution.
The smallest one, min_i (k_i + 1)/a_i, is resolution-independent: the log
canonical threshold.  Adding 1 to a jumping number always yields another
one, so sets computed in (0, 1] extend to any bound by integer shifts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import PreconditionError
from .model import ResolutionData


@dataclass(frozen=True)
class CandidateEntry:
    value: Fraction
    supporters: frozenset[str]  # divisors generating the value as (k+n)/a
    candidate_for: frozenset[str]  # divisors E with value * a_E integral


@dataclass(frozen=True)
class CandidateList:
    """Sorted, deduplicated candidate values in the half-open range (0, upper]."""

    entries: tuple[CandidateEntry, ...]
    upper: Fraction

    def values(self) -> tuple[Fraction, ...]:
        return tuple(e.value for e in self.entries)

    def for_divisor(self, div_id: str) -> tuple[Fraction, ...]:
        return tuple(e.value for e in self.entries if div_id in e.supporters)


def candidate_jumping_numbers(data: ResolutionData, upper: Fraction) -> CandidateList:
    """All values (k_i + n)/a_i in (0, upper], merged over the components.

    Supporters of a value are the components generating it; independently,
    each value is marked as a candidate for every divisor E with
    value * a_E integral, which is the precondition contribution tests
    need (strictly weaker than being generated by E).
    """
    upper = Fraction(upper)
    if upper <= 0:
        raise PreconditionError("upper bound must be positive")
    merged: dict[Fraction, set[str]] = {}
    for d in data.divisors:
        n_max = math.floor(upper * d.mult - d.discrepancy)
        for n in range(1, n_max + 1):
            lam = Fraction(d.discrepancy + n, d.mult)
            merged.setdefault(lam, set()).add(d.id)
    entries = []
    for lam in sorted(merged):
        cand_for = frozenset(
            d.id for d in data.divisors if (lam * d.mult).denominator == 1
        )
        entries.append(CandidateEntry(lam, frozenset(merged[lam]), cand_for))
    return CandidateList(tuple(entries), upper)


def lct(data: ResolutionData) -> tuple[Fraction, frozenset[str]]:
    """Log canonical threshold min_i (k_i + 1)/a_i and its achiever set."""
    best: Fraction | None = None
    achievers: set[str] = set()
    for d in data.divisors:
        val = Fraction(d.discrepancy + 1, d.mult)
        if best is None or val < best:
            best, achievers = val, {d.id}
        elif val == best:
            achievers.add(d.id)
    if best is None:
        raise PreconditionError("no divisors declared")
    return best, frozenset(achievers)


def skoda_extend(
    jns_in_unit_interval: Iterable[Fraction], upper: Fraction
) -> set[Fraction]:
    """Extend jumping numbers from (0, 1] to (0, upper] by integer shifts."""
    upper = Fraction(upper)
    base = {Fraction(x) for x in jns_in_unit_interval}
    for lam in base:
        if not 0 < lam <= 1:
            raise PreconditionError(f"{lam} is outside (0, 1]")
    out: set[Fraction] = set()
    for lam in base:
        shift = 0
        while lam + shift <= upper:
            out.add(lam + shift)
            shift += 1
    return out
