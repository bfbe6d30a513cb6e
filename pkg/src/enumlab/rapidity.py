"""Speed comparison of step profiles: pointwise and eventual-cumulative.

Profile h is strictly more rapid than g when h's step count is below g's at
every sampled input.  The weaker eventual notion compares running totals: h
is more rapid than g past a witness M when the cumulative sum of h stays
strictly below that of g for every n > M up to the horizon.  Both verdicts
are horizon-relative statements about the sampled window, nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate

from .errors import LengthMismatchError
from .listing import TimeProfile


@dataclass(frozen=True)
class StrictReport:
    strictly_more_rapid: bool
    first_failure: int | None
    horizon: int

    def to_dict(self) -> dict:
        return {
            "strictly_more_rapid": self.strictly_more_rapid,
            "first_failure": self.first_failure,
            "horizon": self.horizon,
        }


@dataclass(frozen=True)
class EventualReport:
    witness_m: int | None
    horizon: int

    def to_dict(self) -> dict:
        return {"witness_m": self.witness_m, "horizon": self.horizon}


def _check_lengths(th: TimeProfile, tg: TimeProfile) -> int:
    if len(th) != len(tg):
        raise LengthMismatchError(
            f"profile lengths differ: {len(th)} vs {len(tg)}"
        )
    if len(th) == 0:
        raise LengthMismatchError("profiles must have at least one entry")
    return len(th)


def cumulative(t: TimeProfile) -> tuple[int, ...]:
    """Running totals of a profile, same length."""
    return tuple(accumulate(t.steps))


def strictly_more_rapid(th: TimeProfile, tg: TimeProfile) -> StrictReport:
    """Pointwise verdict: th[n] < tg[n] for every sampled n."""
    horizon = _check_lengths(th, tg)
    for n in range(horizon):
        if th.steps[n] >= tg.steps[n]:
            return StrictReport(False, n, horizon)
    return StrictReport(True, None, horizon)


def more_rapid(th: TimeProfile, tg: TimeProfile) -> EventualReport:
    """Least witness M with cumulative dominance for all n > M, if any.

    Witness candidates run over 0..horizon-2 so the required set of compared
    positions is never empty; in particular equal profiles never get a
    witness, and single-entry profiles cannot have one either.
    """
    horizon = _check_lengths(th, tg)
    ch = cumulative(th)
    cg = cumulative(tg)
    if horizon < 2:
        return EventualReport(None, horizon)
    last_violation = 0
    any_violation = False
    for n in range(horizon):
        if ch[n] >= cg[n]:
            last_violation = n
            any_violation = True
    if any_violation and last_violation == horizon - 1:
        return EventualReport(None, horizon)
    return EventualReport(last_violation if any_violation else 0, horizon)
