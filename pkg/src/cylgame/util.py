"""Shared small helpers: reports, deterministic iteration, bitmask utilities."""

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of a structural check: ok flag plus human-readable failures."""

    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def summary(self):
        if self.ok:
            return "ok"
        head = self.failures[:5]
        more = len(self.failures) - len(head)
        text = "; ".join(str(f) for f in head)
        if more > 0:
            text += f"; ... ({more} more)"
        return text


def report(failures):
    """Build a Report from a list of failure strings (empty list means ok)."""
    return Report(not failures, list(failures))


def bits(mask):
    """Iterate set bit positions of an int mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(items):
    m = 0
    for i in items:
        m |= 1 << i
    return m


class BudgetExceeded(Exception):
    """A configured search budget (positions, candidates, rounds) was exhausted.

    Raised instead of returning a wrong or partial verdict; carries enough
    context to report the frontier size at the point of overflow.
    """

    def __init__(self, what, limit, reached):
        self.what = what
        self.limit = limit
        self.reached = reached
        super().__init__(f"{what}: budget {limit} exceeded (reached {reached})")
