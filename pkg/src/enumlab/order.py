"""Enumeration-order comparison: rank patterns and co-order checks.

Two listings are co-order on a prefix when their values induce the same
relative order: position i precedes position j in one exactly when it does in
the other.  For injective prefixes that is equivalent to having equal rank
patterns, where rank i is the number of positions holding a smaller value.
Verdicts are always relative to the compared prefix length; nothing here
claims anything about the infinite tails.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import (
    EnumlabError,
    InjectivityError,
    LengthMismatchError,
    SearchExhaustedError,
)
from .listing import Listing, Prefix, prefix
from .machine import DEFAULT_FUEL, Program, run_det

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RankPattern:
    """ranks[i] = |{j : values[j] < values[i]}|; a permutation of 0..k-1."""

    ranks: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.ranks)


@dataclass(frozen=True)
class CoOrderReport:
    co_order: bool
    violating_pair: tuple[int, int] | None
    prefix_length: int

    def to_dict(self) -> dict:
        return {
            "co_order": self.co_order,
            "violating_pair": list(self.violating_pair)
            if self.violating_pair
            else None,
            "prefix_length": self.prefix_length,
        }


@dataclass(frozen=True)
class WitnessPair:
    listing_a: str
    listing_b: str
    report: CoOrderReport

    def to_dict(self) -> dict:
        return {
            "listing_a": self.listing_a,
            "listing_b": self.listing_b,
            "report": self.report.to_dict(),
        }


def rank_pattern(p: Prefix) -> RankPattern:
    """Rank pattern of an injective prefix, via sorting.

    Raises InjectivityError on the first repeated value (smallest value,
    then smallest index pair).
    """
    values = p.values
    k = len(values)
    order = sorted(range(k), key=values.__getitem__)
    ranks = [0] * k
    for r, i in enumerate(order):
        if r > 0:
            prev = order[r - 1]
            if values[prev] == values[i]:
                lo, hi = sorted((prev, i))
                raise InjectivityError(lo, hi, values[i])
        ranks[i] = r
    return RankPattern(tuple(ranks))


def coorder_prefix(p: Prefix, q: Prefix) -> CoOrderReport:
    """Compare two equal-length injective prefixes for co-order."""
    if len(p) != len(q):
        raise LengthMismatchError(
            f"prefix lengths differ: {len(p)} vs {len(q)}"
        )
    same = rank_pattern(p) == rank_pattern(q)
    violating = None
    if not same:
        violating = _first_disagreement(p.values, q.values)
    return CoOrderReport(co_order=same, violating_pair=violating, prefix_length=len(p))


def _first_disagreement(a, b):
    k = len(a)
    for i in range(k):
        for j in range(i + 1, k):
            if (a[i] < a[j]) != (b[i] < b[j]):
                return (i, j)
    return None


def coorder_search(
    family_a: list[Listing],
    family_b: list[Listing],
    k: int,
    fuel: int | None = None,
) -> WitnessPair | None:
    """First co-order pair across two families, in a-major order.

    Listings whose prefix evaluation fails are skipped and reported through
    the module logger.
    """
    b_prefixes: list[tuple[Listing, Prefix]] = []
    for lb in family_b:
        try:
            b_prefixes.append((lb, prefix(lb, k, fuel)))
        except EnumlabError as exc:
            log.warning("skipping listing %r: %s", lb.name, exc)
    for la in family_a:
        try:
            pa = prefix(la, k, fuel)
        except EnumlabError as exc:
            log.warning("skipping listing %r: %s", la.name, exc)
            continue
        for lb, pb in b_prefixes:
            report = coorder_prefix(pa, pb)
            if report.co_order:
                return WitnessPair(la.name, lb.name, report)
    return None


def increasing_listing(
    decider: Program,
    k: int,
    fuel: int = DEFAULT_FUEL,
    search_cap: int = 100_000,
) -> Prefix:
    """First k members of a decidable set, in increasing order.

    Scans inputs 0, 1, 2, ... and keeps those the decider accepts.  The
    decider must halt within fuel on every input scanned.  Raises
    SearchExhaustedError if fewer than k members appear below search_cap.
    """
    members: list[int] = []
    for x in range(search_cap):
        out = run_det(decider, x, fuel)
        if out.status != "halted":
            raise SearchExhaustedError(
                f"decider {decider.name!r} did not halt on input {x} "
                f"({out.status})"
            )
        if out.output != 0:
            members.append(x)
            if len(members) == k:
                return Prefix(tuple(members))
    raise SearchExhaustedError(
        f"decider {decider.name!r} yielded only {len(members)} members "
        f"below {search_cap}, needed {k}"
    )
