"""
Base class for dynamical systems
"""
from abc import ABC, abstractmethod
import logging

from src.errors import BadArgs, NegativeIterateOnOneSided, NotFinite, UnsupportedOperation

logger = logging.getLogger(__name__)


class BaseSystem(ABC):
    """Abstract base class for the systems the toolkit works on"""

    kind = "abstract"
    metric = ""

    def __init__(self, label=""):
        """
        Initialize system

        Args:
            label: Human-readable name recorded in every report
        """
        self.label = label or self.__class__.__name__
        self.name = self.__class__.__name__

    @property
    def two_sided(self):
        """Whether negative iterates exist"""
        return True

    @property
    def is_sft(self):
        return False

    @property
    def is_finite(self):
        return False

    @abstractmethod
    def check_point(self, p):
        """
        Raise SystemMismatch unless p is a point of this system

        Args:
            p: Candidate point
        """
        pass

    @abstractmethod
    def _apply(self, p, k):
        pass

    @abstractmethod
    def _distance(self, a, b):
        pass

    def apply(self, p, k=1):
        """
        Iterate the map

        Args:
            p: Point
            k: Number of iterates (negative only on invertible systems)

        Returns:
            f^k(p)
        """
        self.check_point(p)
        if k < 0 and not self.two_sided:
            raise NegativeIterateOnOneSided(
                f"{self.label}: f^{k} requested on a non-invertible system"
            )
        return self._apply(p, k)

    def distance(self, a, b):
        """Exact distance between two points of this system"""
        self.check_point(a)
        self.check_point(b)
        return self._distance(a, b)

    def orbit_segment(self, p, n):
        """
        Orbit segment [p, f(p), ..., f^(n-1)(p)]

        Args:
            p: Point
            n: Segment length (>= 1)
        """
        if n < 1:
            raise BadArgs(f"orbit segment length must be >= 1, got {n}")
        self.check_point(p)
        segment = [p]
        for _ in range(n - 1):
            segment.append(self._apply(segment[-1], 1))
        return segment

    def points(self):
        """Every point of a finite system"""
        raise NotFinite(f"{self.label} is not a finite system")

    def point_to_json(self, p):
        raise UnsupportedOperation(f"{self.label} has no point format")

    def parse_point(self, data):
        raise UnsupportedOperation(f"{self.label} has no point format")

    def describe(self):
        """
        Short descriptor recorded in reports

        Returns:
            Dict with kind, label and metric convention
        """
        return {
            "kind": self.kind,
            "label": self.label,
            "metric": self.metric,
            "two_sided": self.two_sided,
        }

    def __repr__(self):
        return f"{self.name}({self.label!r})"
