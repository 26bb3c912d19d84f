"""
Shifts of finite type and their eventually periodic points
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import lcm

from src.errors import BadArgs, InvalidSpec, SystemMismatch
from .base import BaseSystem
from .graph import PathOracle, adjacency, is_irreducible, lyndon_cycles, period

logger = logging.getLogger(__name__)


def primitive_root(word):
    """Shortest w with word = w^k"""
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[:d] * (n // d):
            return word[:d]
    return word


@dataclass(frozen=True)
class SymbolicPoint:
    """
    Eventually periodic sequence (left_cycle)^inf . core . (right_cycle)^inf

    Coordinate i sits at position i + origin_offset of the concatenation, where
    position 0 is core[0]. Instances are always stored in canonical form so that
    equality and hashing compare the underlying sequences.
    """

    left_cycle: tuple
    core: tuple
    right_cycle: tuple
    origin_offset: int = 0
    one_sided: bool = False

    def __post_init__(self):
        for name in ("left_cycle", "core", "right_cycle"):
            object.__setattr__(self, name, tuple(int(c) for c in getattr(self, name)))
        if not self.left_cycle or not self.right_cycle:
            raise BadArgs("cycles of a symbolic point must be nonempty")
        left, core, right, offset = self._canonical()
        object.__setattr__(self, "left_cycle", left)
        object.__setattr__(self, "core", core)
        object.__setattr__(self, "right_cycle", right)
        object.__setattr__(self, "origin_offset", offset)

    def _raw_symbol(self, i, left, core, right, offset):
        p = i + offset
        if p < 0:
            return left[p % len(left)]
        if p < len(core):
            return core[p]
        return right[(p - len(core)) % len(right)]

    def _canonical(self):
        left = primitive_root(self.left_cycle)
        right = primitive_root(self.right_cycle)
        core = self.core
        off = self.origin_offset
        L, R, C = len(left), len(right), len(core)

        def sym(i):
            return self._raw_symbol(i, left, core, right, off)

        def rphase(i):
            return right[(i + off - C) % R]

        if self.one_sided:
            end = -1
            for i in range(C - off - 1, -1, -1):
                if sym(i) != rphase(i):
                    end = i
                    break
            new_core = tuple(sym(i) for i in range(0, end + 1))
            new_right = tuple(rphase(end + 1 + q) for q in range(R))
            return new_right, new_core, new_right, 0

        def lphase(i):
            return left[(i + off) % L]

        start = None
        for i in range(-off, -off + C + lcm(L, R)):
            if sym(i) != lphase(i):
                start = i
                break
        if start is None:
            word = tuple(lphase(i) for i in range(L))
            return word, (), word, 0

        end = start - 1
        for i in range(C - off - 1, start - 1, -1):
            if sym(i) != rphase(i):
                end = i
                break
        new_core = tuple(sym(i) for i in range(start, end + 1))
        new_left = tuple(lphase(start + q) for q in range(L))
        new_right = tuple(rphase(end + 1 + q) for q in range(R))
        return new_left, new_core, new_right, -start

    def symbol(self, i):
        """Symbol at coordinate i"""
        if self.one_sided and i < 0:
            raise BadArgs(f"one-sided point has no coordinate {i}")
        return self._raw_symbol(
            i, self.left_cycle, self.core, self.right_cycle, self.origin_offset
        )

    def word(self, lo, hi):
        """Symbols on coordinates lo..hi inclusive"""
        return tuple(self.symbol(i) for i in range(lo, hi + 1))

    def shifted(self, k):
        """The point with coordinates moved k places to the left"""
        return SymbolicPoint(
            self.left_cycle, self.core, self.right_cycle,
            self.origin_offset + k, self.one_sided,
        )

    @property
    def is_periodic(self):
        return not self.core and self.left_cycle == self.right_cycle and not self.one_sided

    @property
    def right_start(self):
        """First coordinate of the periodic right tail"""
        return len(self.core) - self.origin_offset

    @property
    def left_end(self):
        """Last coordinate of the periodic left tail"""
        return -self.origin_offset - 1

    def to_dict(self):
        data = {
            "core": list(self.core),
            "right": list(self.right_cycle),
            "offset": self.origin_offset,
        }
        if not self.one_sided:
            data["left"] = list(self.left_cycle)
        return data

    def __str__(self):
        left = "".join(map(str, self.left_cycle))
        right = "".join(map(str, self.right_cycle))
        core = "".join(map(str, self.core))
        head = "" if self.one_sided else f"({left})^inf "
        return f"{head}[{core}] ({right})^inf @{self.origin_offset}"


def symbolic_distance(a, b):
    """
    First-disagreement distance 2^-min{|i| : a_i != b_i}

    The scan stops once both sequences are inside their periodic tails on each side
    for a full common period, after which no new disagreement can appear.
    """
    if a.one_sided != b.one_sided:
        raise SystemMismatch("one-sided and two-sided points cannot be compared")
    right_bound = max(a.right_start, b.right_start, 0) + lcm(
        len(a.right_cycle), len(b.right_cycle)
    )
    if a.one_sided:
        for j in range(0, right_bound + 1):
            if a.symbol(j) != b.symbol(j):
                return Fraction(1, 2 ** j)
        return Fraction(0)
    left_bound = -(min(a.left_end, b.left_end, 0) - lcm(len(a.left_cycle), len(b.left_cycle)))
    for j in range(0, max(right_bound, left_bound) + 1):
        if a.symbol(j) != b.symbol(j) or a.symbol(-j) != b.symbol(-j):
            return Fraction(1, 2 ** j)
    return Fraction(0)


class SymbolicSystem(BaseSystem):
    """
    Shift of finite type on the alphabet {0, ..., alphabet_size - 1}

    The metric is d(a, b) = 2^-min{|i| : a_i != b_i} (min over i >= 0 when one-sided).
    """

    kind = "sft"
    metric = "2^-min|i| over disagreeing coordinates"

    def __init__(self, transitions, two_sided=True, label=""):
        """
        Initialize shift of finite type

        Args:
            transitions: Square 0/1 nested list or array
            two_sided: Bi-infinite sequences when True
            label: System label
        """
        super().__init__(label or "sft")
        self.A = adjacency(transitions)
        if self.A.ndim != 2 or self.A.shape[0] != self.A.shape[1] or self.A.shape[0] < 1:
            raise InvalidSpec("transitions must be a nonempty square matrix", "parameters.transitions")
        for i in range(self.A.shape[0]):
            if not self.A[i].any():
                raise InvalidSpec(f"row {i} has no allowed successor", f"parameters.transitions[{i}]")
            if not self.A[:, i].any():
                raise InvalidSpec(f"column {i} has no allowed predecessor", f"parameters.transitions[*][{i}]")
        self.A.setflags(write=False)
        self.alphabet_size = int(self.A.shape[0])
        self._two_sided = bool(two_sided)
        self.oracle = PathOracle(self.A)

    @property
    def two_sided(self):
        return self._two_sided

    @property
    def is_sft(self):
        return True

    @cached_property
    def irreducible(self):
        return is_irreducible(self.A)

    @cached_property
    def period(self):
        """Period of the transition graph (1 means primitive when irreducible)"""
        return period(self.A) if self.irreducible else None

    @property
    def primitive(self):
        return self.irreducible and self.period == 1

    def allowed(self, a, b):
        return bool(self.A[a, b])

    def word_admissible(self, word):
        return all(self.A[word[i], word[i + 1]] for i in range(len(word) - 1))

    def check_point(self, p):
        if not isinstance(p, SymbolicPoint):
            raise SystemMismatch(f"{self.label}: expected a symbolic point, got {type(p).__name__}")
        if p.one_sided == self._two_sided:
            raise SystemMismatch(f"{self.label}: point sidedness does not match the system")
        symbols = p.left_cycle + p.core + p.right_cycle
        if max(symbols) >= self.alphabet_size:
            raise SystemMismatch(f"{self.label}: symbol outside alphabet in {p}")

    def is_admissible(self, p):
        """Every adjacent pair, junctions and wrap-arounds included, is allowed"""
        right = p.right_cycle
        seq = list(p.core) + list(right) + [right[0]]
        if p.one_sided:
            return self.word_admissible(seq)
        left = p.left_cycle
        return self.word_admissible(list(left) + [left[0]]) and self.word_admissible(
            [left[-1]] + seq
        )

    def point(self, left, core, right, offset=0):
        """
        Build and validate a point

        Args:
            left: Left cycle word (ignored for one-sided systems)
            core: Core word
            right: Right cycle word
            offset: Position of coordinate 0 within the concatenation

        Returns:
            SymbolicPoint
        """
        if not self._two_sided:
            left = right
        p = SymbolicPoint(tuple(left), tuple(core), tuple(right), offset, not self._two_sided)
        self.check_point(p)
        if not self.is_admissible(p):
            raise BadArgs(f"{self.label}: point {p} is not admissible")
        return p

    def _apply(self, p, k):
        return p.shifted(k)

    def _distance(self, a, b):
        return symbolic_distance(a, b)

    def point_to_json(self, p):
        return p.to_dict()

    def parse_point(self, data):
        """
        Parse the JSON point format {"left", "core", "right", "offset"}

        A bare list is read as a periodic word.
        """
        if isinstance(data, list):
            return periodic_point(self, data)
        if not isinstance(data, dict) or "right" not in data:
            raise BadArgs(f"{self.label}: cannot parse point {data!r}")
        right = data["right"]
        return self.point(data.get("left", right), data.get("core", []), right, data.get("offset", 0))

    def window_word(self, p, lo, hi):
        return p.word(lo, hi)

    def describe(self):
        info = super().describe()
        info["alphabet_size"] = self.alphabet_size
        info["transitions"] = self.A.astype(int).tolist()
        return info


def periodic_point(system, word, phase=0):
    """
    Purely periodic point word^inf with coordinate 0 = word[phase]

    Args:
        system: SymbolicSystem
        word: Nonempty cycle word (must close up in the transition graph)
        phase: Index in word of coordinate 0
    """
    word = tuple(word)
    if not word:
        raise BadArgs("periodic word must be nonempty")
    return system.point(word, (), word, phase % len(word))


def excursion_point(system, left, core, right, position=0):
    """
    Point left^inf . core . right^inf with core[0] at coordinate `position`

    Args:
        system: SymbolicSystem
        left: Left cycle word
        core: Excursion word
        right: Right cycle word
        position: Coordinate of core[0]
    """
    return system.point(tuple(left), tuple(core), tuple(right), -position)


def extend_word(system, word, start=0):
    """
    Canonical completion of a finite admissible word

    The word occupies coordinates start..start+len(word)-1; the tails run into the
    smallest reachable cyclic symbol and then repeat its lexicographically smallest
    shortest cycle.

    Args:
        system: SymbolicSystem
        word: Admissible word (nonempty)
        start: Coordinate of word[0]

    Returns:
        SymbolicPoint
    """
    word = tuple(int(c) for c in word)
    if not word:
        raise BadArgs("cannot extend an empty word")
    if not system.word_admissible(word):
        raise BadArgs(f"word {word} is not admissible")
    appended, right_cycle = system.oracle.extend_right(word[-1])
    if system.two_sided:
        prepended, left_cycle = system.oracle.extend_left(word[0])
    else:
        if start != 0:
            raise BadArgs("one-sided words must start at coordinate 0")
        prepended, left_cycle = (), right_cycle
    core = prepended + word + appended
    return system.point(left_cycle, core, right_cycle, len(prepended) - start)


def admissible_cycles(system, max_period):
    """Periodic points of least period <= max_period, one per orbit (Lyndon phase)"""
    cycles = []
    for length in range(1, max_period + 1):
        cycles.extend(lyndon_cycles(system.A, length))
    return cycles
