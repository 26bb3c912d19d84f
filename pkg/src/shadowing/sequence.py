"""
Orbit sequences, gaps, schedules and the shadowing check
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from src.errors import BadArgs, RankMismatch
from src.utils import as_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrbitSequence:
    """Orbit segments (x_j, m_j), j = 1..k, to be glued in order"""

    entries: tuple

    def __post_init__(self):
        entries = tuple((p, int(m)) for p, m in self.entries)
        if not entries:
            raise BadArgs("an orbit sequence needs at least one segment")
        for j, (_, m) in enumerate(entries, start=1):
            if m < 1:
                raise BadArgs(f"segment {j} has length {m}; lengths must be >= 1")
        object.__setattr__(self, "entries", entries)

    @property
    def rank(self):
        return len(self.entries)

    @property
    def points(self):
        return [p for p, _ in self.entries]

    @property
    def lengths(self):
        return [m for _, m in self.entries]

    def prefix(self, k):
        """The first k segments"""
        return OrbitSequence(self.entries[:k])

    def to_dict(self, system=None):
        return [
            {"point": system.point_to_json(p) if system is not None else str(p), "length": m}
            for p, m in self.entries
        ]

    @classmethod
    def from_json(cls, system, data):
        """
        Parse [{"point": ..., "length": m}, ...]

        Args:
            system: System whose point format is used
            data: Parsed JSON list
        """
        if not isinstance(data, list) or not data:
            raise BadArgs("orbit sequence must be a nonempty list of {point, length}")
        entries = []
        for item in data:
            entries.append((system.parse_point(item["point"]), item["length"]))
        return cls(tuple(entries))


@dataclass(frozen=True)
class Gap:
    """Waiting times t_1..t_(k-1) between consecutive segments"""

    gaps: tuple = ()

    def __post_init__(self):
        gaps = tuple(int(t) for t in self.gaps)
        for t in gaps:
            if t < 1:
                raise BadArgs(f"gap entries must be >= 1, got {t}")
        object.__setattr__(self, "gaps", gaps)

    def __len__(self):
        return len(self.gaps)

    @property
    def max_gap(self):
        return max(self.gaps) if self.gaps else 0

    def to_dict(self):
        return list(self.gaps)


@dataclass(frozen=True)
class ShadowSchedule:
    """Start times s_1 = 0, s_j = sum_{i<j} (m_i + t_i - 1)"""

    starts: tuple
    lengths: tuple

    @property
    def span(self):
        """s_k + m_k: number of iterates the schedule covers"""
        return self.starts[-1] + self.lengths[-1]

    def to_dict(self):
        return list(self.starts)


@dataclass(frozen=True)
class ShadowWitness:
    """A point z that eps-shadows (C, g)"""

    z: object
    gap: Gap
    epsilon: Fraction
    schedule: ShadowSchedule
    period: int = None

    def to_dict(self, system=None):
        data = {
            "z": system.point_to_json(self.z) if system is not None else str(self.z),
            "gap": self.gap.to_dict(),
            "epsilon": self.epsilon,
            "schedule": self.schedule.to_dict(),
        }
        if self.period is not None:
            data["period"] = self.period
        return data


@dataclass(frozen=True)
class ShadowVerdict:
    """Outcome of verify_shadow; j is 1-based like the segment numbering"""

    accepted: bool
    j: int = None
    l: int = None
    distance: Fraction = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.accepted

    def to_dict(self):
        if self.accepted:
            return {"accepted": True}
        return {"accepted": False, "j": self.j, "l": self.l, "distance": self.distance}


def schedule(C, g):
    """
    Start times of each segment in the shadowing orbit

    Args:
        C: OrbitSequence
        g: Gap with rank(C) - 1 entries

    Returns:
        ShadowSchedule
    """
    if not isinstance(g, Gap):
        g = Gap(tuple(g))
    if len(g) != C.rank - 1:
        raise RankMismatch(f"gap has {len(g)} entries, rank {C.rank} needs {C.rank - 1}")
    starts = [0]
    for m, t in zip(C.lengths, g.gaps):
        starts.append(starts[-1] + m + t - 1)
    return ShadowSchedule(tuple(starts), tuple(C.lengths))


def verify_shadow(system, C, g, z, eps):
    """
    Check d(f^(s_j + l)(z), f^l(x_j)) < eps for every j and l < m_j

    Args:
        system: System the points live in
        C: OrbitSequence
        g: Gap
        z: Candidate shadowing point
        eps: Positive scale

    Returns:
        ShadowVerdict, rejected at the lexicographically first violating (j, l)
    """
    eps = as_fraction(eps)
    if eps <= 0:
        raise BadArgs(f"eps must be positive, got {eps}")
    sched = schedule(C, g)
    for j, ((x, m), s) in enumerate(zip(C.entries, sched.starts), start=1):
        zs = system.apply(z, s)
        for l in range(m):
            d = system.distance(zs, x)
            if not d < eps:
                return ShadowVerdict(False, j, l, d)
            zs = system.apply(zs, 1)
            x = system.apply(x, 1)
    return ShadowVerdict(True)
