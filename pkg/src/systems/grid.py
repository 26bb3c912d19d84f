"""
Finite grid models of circle maps and adding machines
"""
import logging
from fractions import Fraction
from functools import cached_property

import numpy as np

from src.errors import BadArgs, InvalidSpec, SystemMismatch
from .base import BaseSystem

logger = logging.getLogger(__name__)

MAP_KINDS = ("rotation", "square_map", "odometer")
METRIC_KINDS = ("circle", "two_adic")


class GridCircleSystem(BaseSystem):
    """
    Map on the grid {0, 1/G, ..., (G-1)/G} with exact integer arithmetic

    Points are the integers 0..G-1 (grid index i stands for i/G). Distances are
    always k/G for an integer k, so comparisons against a scale eps are done on
    integer numerators.
    """

    kind = "circle_grid"

    def __init__(self, grid_size, map_kind, step=1, metric_kind=None, label=""):
        """
        Initialize grid system

        Args:
            grid_size: Number of grid points G
            map_kind: rotation, square_map or odometer
            step: Rotation step (taken mod G)
            metric_kind: circle or two_adic (odometer defaults to two_adic)
            label: System label
        """
        super().__init__(label or f"{map_kind}_{grid_size}")
        if not isinstance(grid_size, int) or grid_size < 1:
            raise InvalidSpec(f"grid size must be a positive integer, got {grid_size!r}", "parameters.grid_size")
        if map_kind not in MAP_KINDS:
            raise InvalidSpec(f"unknown map kind {map_kind!r}", "parameters.map")
        if metric_kind is None:
            metric_kind = "two_adic" if map_kind == "odometer" else "circle"
        if metric_kind not in METRIC_KINDS:
            raise InvalidSpec(f"unknown metric {metric_kind!r}", "parameters.metric")

        power_of_two = grid_size & (grid_size - 1) == 0
        if map_kind == "odometer" and (not power_of_two or metric_kind != "two_adic"):
            raise InvalidSpec(
                "odometer requires G = 2^depth and the two_adic metric", "parameters.depth"
            )
        if metric_kind == "two_adic" and not power_of_two:
            raise InvalidSpec("two_adic metric requires a power-of-two grid", "parameters.metric")

        self.grid_size = grid_size
        self.map_kind = map_kind
        self.step = step % grid_size if map_kind == "rotation" else 0
        self.metric_kind = metric_kind
        self.depth = grid_size.bit_length() - 1 if power_of_two else None
        self.metric = (
            "2^-(v+1), v = 2-adic valuation of a-b"
            if metric_kind == "two_adic"
            else "min(|a-b|, G-|a-b|)/G"
        )

    @property
    def two_sided(self):
        return self.map_kind != "square_map"

    @property
    def is_finite(self):
        return True

    @property
    def is_isometry(self):
        """Rotations and adding machines preserve the metric"""
        return self.map_kind in ("rotation", "odometer")

    def check_point(self, p):
        if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
            raise SystemMismatch(f"{self.label}: expected a grid index, got {p!r}")
        if not 0 <= p < self.grid_size:
            raise SystemMismatch(f"{self.label}: grid index {p} outside 0..{self.grid_size - 1}")

    def _square(self, p):
        # round-half-to-even on p^2 / G
        q, rem = divmod(p * p, self.grid_size)
        if 2 * rem > self.grid_size or (2 * rem == self.grid_size and q % 2 == 1):
            q += 1
        return q % self.grid_size

    def _apply(self, p, k):
        G = self.grid_size
        p = int(p)
        if self.map_kind == "rotation":
            return (p + k * self.step) % G
        if self.map_kind == "odometer":
            return (p + k) % G
        for _ in range(k):
            p = self._square(p)
        return p

    @cached_property
    def successor(self):
        """numpy array with successor[i] = f(i)"""
        G = self.grid_size
        idx = np.arange(G, dtype=np.int64)
        if self.map_kind == "rotation":
            return (idx + self.step) % G
        if self.map_kind == "odometer":
            return (idx + 1) % G
        q, rem = np.divmod(idx * idx, G)
        up = (2 * rem > G) | ((2 * rem == G) & (q % 2 == 1))
        return (q + up) % G

    def distance_numerator(self, a, b):
        """
        Integer k with d(a, b) = k / G, vectorized over numpy arrays

        Args:
            a: Grid index or array of indices
            b: Grid index or array of indices
        """
        G = self.grid_size
        diff = np.abs(np.asarray(a, dtype=np.int64) - np.asarray(b, dtype=np.int64))
        if self.metric_kind == "circle":
            return np.minimum(diff, G - diff)
        lowbit = diff & -diff
        # 2^-(v+1) * G = G / (2 * 2^v)
        return np.where(diff == 0, 0, G // np.maximum(2 * lowbit, 1))

    def _distance(self, a, b):
        return Fraction(int(self.distance_numerator(a, b)), self.grid_size)

    def within(self, a, b, eps):
        """Boolean mask of d(a, b) < eps"""
        eps = Fraction(eps)
        numer = self.distance_numerator(a, b)
        return numer * eps.denominator < eps.numerator * self.grid_size

    def beyond(self, a, b, eps):
        """Boolean mask of d(a, b) > eps"""
        eps = Fraction(eps)
        numer = self.distance_numerator(a, b)
        return numer * eps.denominator > eps.numerator * self.grid_size

    def orbit_array(self, starts, n):
        """
        Trajectories as an (len(starts), n) array, column k holding f^k(start)

        Args:
            starts: Iterable of grid indices
            n: Number of columns
        """
        if n < 1:
            raise BadArgs(f"orbit length must be >= 1, got {n}")
        current = np.asarray(list(starts), dtype=np.int64)
        out = np.empty((current.size, n), dtype=np.int64)
        for k in range(n):
            out[:, k] = current
            current = self.successor[current]
        return out

    @cached_property
    def orbit_structure(self):
        """
        Forward orbit sizes and the cycles of the functional graph

        Returns:
            (sizes, cycles): sizes[p] = number of distinct points in the forward
            orbit of p; cycles is a list of point lists, each in orbit order
        """
        succ = [int(v) for v in self.successor]
        G = self.grid_size
        sizes = [0] * G
        state = [0] * G
        cycles = []
        for s in range(G):
            if state[s]:
                continue
            path, index = [], {}
            u = s
            while state[u] == 0:
                state[u] = 1
                index[u] = len(path)
                path.append(u)
                u = succ[u]
            if state[u] == 1:
                cycle = path[index[u]:]
                cycles.append(cycle)
                for v in cycle:
                    sizes[v] = len(cycle)
                    state[v] = 2
                tail = path[:index[u]]
            else:
                tail = path
            for v in reversed(tail):
                sizes[v] = sizes[succ[v]] + 1
                state[v] = 2
        return np.array(sizes, dtype=np.int64), cycles

    def is_single_cycle(self):
        """Whether f permutes the grid in one cycle"""
        _, cycles = self.orbit_structure
        return len(cycles) == 1 and len(cycles[0]) == self.grid_size

    def covers(self, orbit, eps):
        """
        Whether every open eps-ball meets the given set of points

        Args:
            orbit: Sequence of grid indices
            eps: Ball radius
        """
        orbit = np.unique(np.asarray(orbit, dtype=np.int64))
        if orbit.size == self.grid_size:
            return True
        return bool(self.uncovered(orbit, eps).size == 0)

    def uncovered(self, orbit, eps, chunk=256):
        """Centers whose eps-ball misses every point of the set"""
        orbit = np.asarray(orbit, dtype=np.int64)
        centers = np.arange(self.grid_size, dtype=np.int64)
        hit = np.zeros(self.grid_size, dtype=bool)
        for start in range(0, orbit.size, chunk):
            block = orbit[start:start + chunk]
            hit |= self.within(block[:, np.newaxis], centers[np.newaxis, :], eps).any(axis=0)
        return centers[~hit]

    def ball_capacity(self, eps):
        """Largest number of grid points an open eps-ball contains"""
        return int(self.within(np.arange(self.grid_size), 0, eps).sum())

    def points(self):
        return list(range(self.grid_size))

    def point_to_json(self, p):
        return int(p)

    def parse_point(self, data):
        if isinstance(data, dict):
            data = data.get("index")
        if isinstance(data, str) and "/" in data:
            value = Fraction(data) * self.grid_size
            if value.denominator != 1:
                raise BadArgs(f"{data} is not on the grid of size {self.grid_size}")
            data = int(value)
        self.check_point(data)
        return int(data)

    def describe(self):
        info = super().describe()
        info.update({
            "grid_size": self.grid_size,
            "map": self.map_kind,
            "step": self.step,
            "metric_kind": self.metric_kind,
        })
        return info
