"""
Exact hitting times of distance predicates along orbits

For an eventually periodic symbolic point the test d(f^n a, b) < eps only reads
the window of a on [n - J, n + J] (J the shadow radius of eps), and that window is
periodic in n once it lies inside the right tail. Grid orbits are eventually
periodic too. A finite scan therefore settles the predicate for every n.
"""
import logging
from dataclasses import dataclass
from math import lcm

from src.errors import BadArgs, UnsupportedOperation
from src.utils import as_fraction, shadow_radius

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hit:
    """
    First time the predicate is met

    n is None when it never happens; exact says whether that covers every n or
    only the scanned horizon.
    """

    n: int = None
    exact: bool = True

    @property
    def found(self):
        return self.n is not None

    def to_dict(self):
        return {"n": self.n, "exact": self.exact}


def first_hit(system, a, b, eps, close=True, start=0, move_b=False, horizon=256):
    """
    First n >= start with d(f^n a, f^n' b) < eps (close) or >= eps (not close)

    n' = n when move_b, otherwise b stays put.

    Args:
        system: SymbolicSystem or GridCircleSystem
        a: Moving point
        b: Reference point
        eps: Positive scale
        close: Look for d < eps when True, d >= eps otherwise
        start: First time tested
        move_b: Iterate b along with a
        horizon: Scan cap for systems without exact structure

    Returns:
        Hit
    """
    eps = as_fraction(eps)
    if eps <= 0:
        raise BadArgs(f"eps must be positive, got {eps}")
    if start < 0:
        raise BadArgs(f"start must be >= 0, got {start}")
    if system.is_sft:
        return _symbolic_hit(system, a, b, eps, close, start, move_b)
    if system.is_finite:
        return _grid_hit(system, a, b, eps, close, start, move_b, horizon)
    raise UnsupportedOperation(f"{system.label}: hitting times need points")


def _symbolic_hit(system, a, b, eps, close, start, move_b):
    system.check_point(a)
    system.check_point(b)
    J = shadow_radius(eps)
    if J < 0:
        # every distance is < eps
        return Hit(start if close else None)
    lo = -J if system.two_sided else 0
    target = None if move_b else b.word(lo, J)
    tail_start = max(a.right_start, b.right_start if move_b else 0, 0) - lo
    period = lcm(len(a.right_cycle), len(b.right_cycle) if move_b else 1)
    last = max(start, tail_start) + period
    for n in range(start, last + 1):
        window = a.word(n + lo, n + J)
        other = b.word(n + lo, n + J) if move_b else target
        if (window == other) == close:
            return Hit(n)
    return Hit(None)


def _grid_hit(system, a, b, eps, close, start, move_b, horizon):
    system.check_point(a)
    system.check_point(b)
    succ = system.successor
    x = system.apply(a, start)
    y = system.apply(b, start) if move_b else b
    seen = set()
    n = start
    cap = start + max(horizon, system.grid_size)
    while (x, y) not in seen:
        if n > cap:
            return Hit(None, exact=False)
        seen.add((x, y))
        if bool(system.within(x, y, eps)) == close:
            return Hit(n)
        x = int(succ[x])
        if move_b:
            y = int(succ[y])
        n += 1
    return Hit(None)


def returns(system, p, eps, horizon=256):
    """First n >= 1 with d(f^n p, p) < eps"""
    return first_hit(system, p, p, eps, close=True, start=1, horizon=horizon)


def separation_time(system, x, y, eps, horizon=256):
    """First n >= 0 with d(f^n x, f^n y) >= eps"""
    return first_hit(system, x, y, eps, close=False, start=0, move_b=True, horizon=horizon)


def stay_away_conditions(system, x, y, eps, horizon=256):
    """
    The four stay-away inequalities for (x, y, eps)

    x never returns (n >= 1), x never comes close to y (n >= 0), y never comes
    close to x (n >= 0), y never returns (n >= 1).

    Only forward iterates are checked, also on two-sided shifts: a point whose
    backward orbit comes back to it still counts as non-recurrent.

    Returns:
        Dict with one entry per inequality (first violating n or None), holds and
        exact flags
    """
    checks = {
        "x_return": first_hit(system, x, x, eps, True, 1, horizon=horizon),
        "x_to_y": first_hit(system, x, y, eps, True, 0, horizon=horizon),
        "y_to_x": first_hit(system, y, x, eps, True, 0, horizon=horizon),
        "y_return": first_hit(system, y, y, eps, True, 1, horizon=horizon),
    }
    holds = all(not hit.found for hit in checks.values())
    return {
        "inequalities": {name: hit.n for name, hit in checks.items()},
        "holds": holds,
        "exact": all(hit.exact for hit in checks.values()),
        "horizon": horizon,
    }