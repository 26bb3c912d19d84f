"""
Transition-graph algorithms for shifts of finite type

The transition matrix A is treated as a directed graph on the alphabet. Everything
here is exact: reachability uses boolean numpy matrices, path counts use Python ints.
"""
import logging
import threading
from functools import reduce
from math import gcd

import numpy as np

logger = logging.getLogger(__name__)


def adjacency(transitions):
    """Boolean adjacency matrix from a 0/1 nested list"""
    return np.array(transitions, dtype=bool)


def successors(A):
    """Successor lists in increasing symbol order"""
    return [tuple(int(j) for j in np.flatnonzero(row)) for row in A]


def power_reach(A, k):
    """Boolean matrix of exact-length-k paths (k >= 0)"""
    n = A.shape[0]
    result = np.eye(n, dtype=bool)
    base = A.astype(np.int64)
    for _ in range(k):
        result = (result.astype(np.int64) @ base) > 0
    return result


def reachability(A):
    """
    Transitive closure over paths of length >= 1

    Args:
        A: Boolean adjacency matrix

    Returns:
        Boolean matrix R with R[i, j] iff some path i -> j of length >= 1
    """
    n = A.shape[0]
    succ = successors(A)
    R = np.zeros((n, n), dtype=bool)
    for start in range(n):
        frontier = list(succ[start])
        seen = set(frontier)
        while frontier:
            nxt = []
            for u in frontier:
                for v in succ[u]:
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        for v in seen:
            R[start, v] = True
    return R


def strongly_connected_components(A):
    """
    Strongly connected components, ordered by smallest member

    Returns:
        List of (members tuple, nontrivial flag); a component is nontrivial when it
        carries a cycle (size > 1 or a self-loop)
    """
    n = A.shape[0]
    R = reachability(A)
    assigned = [False] * n
    components = []
    for i in range(n):
        if assigned[i]:
            continue
        members = [i] + [j for j in range(i + 1, n) if R[i, j] and R[j, i]]
        for j in members:
            assigned[j] = True
        nontrivial = len(members) > 1 or bool(A[i, i])
        components.append((tuple(members), nontrivial))
    return components


def is_irreducible(A):
    """Every ordered pair of symbols is joined by a path"""
    return bool(reachability(A).all())


def unreachable_pair(A):
    """Lexicographically first (i, j) with no path i -> j, or None"""
    R = reachability(A)
    n = A.shape[0]
    for i in range(n):
        for j in range(n):
            if not R[i, j]:
                return (i, j)
    return None


def shortest_path(A, a, b):
    """
    Shortest path a -> b of length >= 1, as the full vertex list [a, ..., b]

    Ties are broken lexicographically (successors explored in increasing order).
    """
    succ = successors(A)
    parents = {}
    frontier = [a]
    while frontier:
        nxt = []
        for u in frontier:
            for v in succ[u]:
                if v == b:
                    path = [b]
                    node = u
                    while node != a:
                        path.append(node)
                        node = parents[node]
                    path.append(a)
                    return list(reversed(path))
                if v != a and v not in parents:
                    parents[v] = u
                    nxt.append(v)
        frontier = nxt
    return None


def path_table(A):
    """Shortest path for every ordered pair (certificate of irreducibility)"""
    n = A.shape[0]
    return {(i, j): shortest_path(A, i, j) for i in range(n) for j in range(n)}


def period(A):
    """
    Period of an irreducible graph: gcd of all cycle lengths

    Uses BFS levels from symbol 0: the period is the gcd of level[u] + 1 - level[v]
    over all edges u -> v.
    """
    n = A.shape[0]
    succ = successors(A)
    level = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in succ[u]:
                if v not in level:
                    level[v] = level[u] + 1
                    nxt.append(v)
        frontier = nxt
    diffs = [
        abs(level[u] + 1 - level[v])
        for u in range(n) if u in level
        for v in succ[u] if v in level
    ]
    return reduce(gcd, diffs, 0)


class PathOracle:
    """
    Exact-length path queries with cached reachability powers

    R[k][i, j] is True iff a path of exactly k edges leads from i to j.
    """

    def __init__(self, A):
        self.A = A
        self.n = A.shape[0]
        self._powers = [np.eye(self.n, dtype=bool)]
        self._cycles = {}
        self._closure = None
        # instance searches share one oracle across worker threads
        self._lock = threading.Lock()

    def reach(self, k):
        """Boolean matrix of exact-length-k paths"""
        powers = self._powers
        if k < len(powers):
            return powers[k]
        with self._lock:
            A = self.A.astype(np.int64)
            while len(self._powers) <= k:
                prev = self._powers[-1].astype(np.int64)
                self._powers.append((prev @ A) > 0)
            return self._powers[k]

    def has_path(self, a, b, k):
        return bool(self.reach(k)[a, b])

    def closure(self):
        if self._closure is None:
            self._closure = reachability(self.A)
        return self._closure

    def lex_path(self, a, b, k):
        """
        Lexicographically smallest path with exactly k edges

        Args:
            a: Start symbol
            b: End symbol
            k: Number of edges (>= 1)

        Returns:
            Tuple of the k - 1 intermediate symbols, or None when no such path exists
        """
        if k < 1 or not self.has_path(a, b, k):
            return None
        cur = a
        middle = []
        for step in range(1, k):
            remaining = k - step
            R = self.reach(remaining)
            for c in range(self.n):
                if self.A[cur, c] and R[c, b]:
                    middle.append(c)
                    cur = c
                    break
        return tuple(middle)

    def shortest_length(self, a, b, limit=None):
        """Least k >= 1 with a path a -> b of k edges, or None"""
        limit = limit if limit is not None else self.n
        for k in range(1, limit + 1):
            if self.has_path(a, b, k):
                return k
        return None

    def canonical_cycle(self, c):
        """Lexicographically smallest shortest cycle through c, starting at c"""
        if c not in self._cycles:
            k = self.shortest_length(c, c)
            if k is None:
                self._cycles[c] = None
            else:
                self._cycles[c] = (c,) + self.lex_path(c, c, k)
        return self._cycles[c]

    def cyclic_symbols(self):
        closure = self.closure()
        return [c for c in range(self.n) if closure[c, c]]

    def extend_right(self, s):
        """
        Canonical forward completion after symbol s

        Returns:
            (appended, right_cycle): symbols appended after s, ending at the smallest
            cyclic symbol reachable from s, and the cycle repeated from there on
        """
        closure = self.closure()
        for c in self.cyclic_symbols():
            if c == s or closure[s, c]:
                if c == s:
                    appended = ()
                else:
                    k = self.shortest_length(s, c)
                    appended = self.lex_path(s, c, k) + (c,)
                cycle = self.canonical_cycle(c)
                return appended, cycle[1:] + (c,)
        raise ValueError(f"Symbol {s} reaches no cycle")

    def extend_left(self, s):
        """
        Canonical backward completion before symbol s

        Returns:
            (prepended, left_cycle): symbols placed before s, starting at the smallest
            cyclic symbol that reaches s, and the cycle repeated before them
        """
        closure = self.closure()
        for c in self.cyclic_symbols():
            if c == s or closure[c, s]:
                if c == s:
                    prepended = ()
                else:
                    k = self.shortest_length(c, s)
                    prepended = (c,) + self.lex_path(c, s, k)
                return prepended, self.canonical_cycle(c)
        raise ValueError(f"Symbol {s} is reached from no cycle")


def admissible_words(A, length):
    """
    Generate every admissible word of the given length in lexicographic order

    Args:
        A: Boolean adjacency matrix
        length: Word length (>= 1)
    """
    succ = successors(A)
    n = A.shape[0]
    if length <= 0:
        yield ()
        return
    stack = [(c,) for c in reversed(range(n))]
    while stack:
        word = stack.pop()
        if len(word) == length:
            yield word
            continue
        for c in reversed(succ[word[-1]]):
            stack.append(word + (c,))


def count_words(A, length):
    """Number of admissible words of the given length (exact integer)"""
    if length <= 0:
        return 1
    n = A.shape[0]
    rows = [[int(v) for v in row] for row in A]
    vector = [1] * n
    for _ in range(length - 1):
        vector = [sum(rows[i][j] * vector[j] for j in range(n)) for i in range(n)]
    return sum(vector)


def trace_power(A, k):
    """trace(A^k) with exact integers: the number of points fixed by f^k"""
    n = A.shape[0]
    M = np.array([[int(v) for v in row] for row in A], dtype=object)
    result = np.identity(n, dtype=object)
    for _ in range(k):
        result = result.dot(M)
    return int(sum(result[i, i] for i in range(n)))


def is_lyndon(word):
    """A word is Lyndon iff it is strictly smaller than all its proper rotations"""
    return all(word < word[i:] + word[:i] for i in range(1, len(word)))


def lyndon_cycles(A, length):
    """
    Admissible cycles of least period `length`, one Lyndon representative each

    A Lyndon word starts with its smallest letter, so the DFS only extends with
    letters >= the first one.
    """
    succ = successors(A)
    n = A.shape[0]
    found = []
    for first in range(n):
        stack = [(first,)]
        while stack:
            word = stack.pop()
            if len(word) == length:
                if A[word[-1], first] and is_lyndon(word):
                    found.append(word)
                continue
            for c in reversed(succ[word[-1]]):
                if c >= first:
                    stack.append(word + (c,))
    found.sort()
    return found
