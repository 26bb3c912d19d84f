"""
Spectral entropy oracle for shifts of finite type

h = ln rho(A). rho is bracketed per irreducible block with Collatz-Wielandt
bounds computed in exact integer arithmetic: for a positive vector v and a
primitive matrix B, min (Bv)_i / v_i <= rho(B) <= max (Bv)_i / v_i, and power
iteration drives both ends together. Each block uses B = A_c + I, which is
primitive and has rho(B) = rho(A_c) + 1.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from src.errors import BadArgs, NotAnSft
from src.systems.graph import strongly_connected_components

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EntropyInterval:
    """Enclosure [lower, upper] of ln rho(A)"""

    lower: float
    upper: float
    rho_lower: Fraction
    rho_upper: Fraction
    blocks: list = field(default_factory=list)

    @property
    def width(self):
        return self.upper - self.lower

    @property
    def midpoint(self):
        return (self.lower + self.upper) / 2

    def contains(self, value, tol=0.0):
        return self.lower - tol <= value <= self.upper + tol

    def to_dict(self):
        return {
            "lower": self.lower,
            "upper": self.upper,
            "rho_lower": self.rho_lower,
            "rho_upper": self.rho_upper,
            "blocks": self.blocks,
        }


def _log(value):
    return math.log(value.numerator) - math.log(value.denominator)


def block_bounds(rows, width=1e-6, max_iter=100000):
    """
    Collatz-Wielandt bracket of rho for one irreducible block

    Args:
        rows: Block adjacency as nested lists of 0/1 ints
        width: Target width of the bracket of ln rho
        max_iter: Iteration cap; a wider bracket is returned with a warning when it runs out

    Returns:
        (rho_lower, rho_upper) as Fractions, always a valid enclosure
    """
    if max_iter < 1:
        raise BadArgs(f"max_iter must be >= 1, got {max_iter}")
    n = len(rows)
    B = [[rows[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)]
    v = [1] * n
    lo = hi = None
    for _ in range(max_iter):
        w = [sum(B[i][j] * v[j] for j in range(n)) for i in range(n)]
        ratios = [Fraction(w[i], v[i]) for i in range(n)]
        lo, hi = min(ratios) - 1, max(ratios) - 1
        if lo == hi or (lo > 0 and _log(hi) - _log(lo) <= width):
            break
        g = reduce(math.gcd, w)
        v = [x // g for x in w]
    else:
        logger.warning(f"Bracket [{float(lo)}, {float(hi)}] still wider than {width} after {max_iter} iterations")
    return lo, hi


def sft_entropy_oracle(sft, width=1e-6):
    """
    Enclosure of the topological entropy ln rho(A)

    rho(A) is the maximum over the nontrivial strongly connected blocks.

    Args:
        sft: SymbolicSystem
        width: Largest accepted width of the returned interval

    Returns:
        EntropyInterval
    """
    if not getattr(sft, "is_sft", False):
        raise NotAnSft(f"{getattr(sft, 'label', sft)}: the spectral oracle needs a shift of finite type")
    A = sft.A
    blocks = []
    for members, nontrivial in strongly_connected_components(A):
        if not nontrivial:
            continue
        rows = [[int(A[i, j]) for j in members] for i in members]
        lo, hi = block_bounds(rows, width)
        blocks.append({"members": list(members), "rho_lower": lo, "rho_upper": hi})
    lo = max(b["rho_lower"] for b in blocks)
    hi = max(b["rho_upper"] for b in blocks)
    interval = EntropyInterval(_log(lo), _log(hi), lo, hi, blocks)
    logger.debug(f"{sft.label}: ln rho in [{interval.lower:.9f}, {interval.upper:.9f}]")
    return interval
