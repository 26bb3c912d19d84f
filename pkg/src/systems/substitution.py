"""
Substitution subshifts represented by their factor language
"""
import logging
from bisect import bisect_left
from functools import lru_cache

from src.errors import BadArgs, InvalidSpec, UnsupportedOperation
from .base import BaseSystem

logger = logging.getLogger(__name__)


class SubstitutionSubshift(BaseSystem):
    """
    Subshift generated by iterating a non-erasing substitution on a seed letter

    Only the factor language is available: factors are read off a long generating
    word, so word-level questions (recurrence, connecting gaps) are answered exactly
    for every factor that fits well inside it.
    """

    kind = "substitution_subshift"
    metric = "2^-min|i| over disagreeing coordinates (word level only)"

    def __init__(self, rules, seed=0, language_length=64, word_length=16384, label=""):
        """
        Initialize substitution subshift

        Args:
            rules: Mapping letter -> image word (list of letters)
            seed: Letter the iteration starts from
            language_length: Longest factor length queried by language checks
            word_length: Length of the generating word
            label: System label
        """
        super().__init__(label or "substitution")
        if not rules:
            raise InvalidSpec("substitution needs at least one rule", "parameters.rules")
        letters = sorted(int(k) for k in rules)
        if letters != list(range(len(letters))):
            raise InvalidSpec("rule letters must be 0..n-1", "parameters.rules")
        self.rules = {}
        for letter in letters:
            image = rules.get(letter, rules.get(str(letter)))
            if not image:
                raise InvalidSpec(f"rule for {letter} is erasing", f"parameters.rules.{letter}")
            image = tuple(int(c) for c in image)
            if any(c < 0 or c >= len(letters) for c in image):
                raise InvalidSpec(f"rule for {letter} uses an unknown letter", f"parameters.rules.{letter}")
            self.rules[letter] = image
        if seed not in self.rules:
            raise InvalidSpec(f"seed {seed} has no rule", "parameters.seed")
        if language_length < 1 or word_length < 4 * language_length:
            raise InvalidSpec("word_length must be at least 4 * language_length", "parameters.word_length")

        self.alphabet_size = len(letters)
        self.seed = seed
        self.language_length = language_length
        self.word = self._generate(word_length)
        self._occurrences = {}
        logger.debug(f"{self.label}: generating word of length {len(self.word)}")

    def _generate(self, word_length):
        word = (self.seed,)
        while len(word) < word_length:
            image = tuple(c for letter in word for c in self.rules[letter])
            if len(image) <= len(word):
                raise InvalidSpec("substitution does not grow from the seed", "parameters.rules")
            word = image
        return bytes(word[:word_length])

    def check_point(self, p):
        raise UnsupportedOperation(f"{self.label}: points are not available, only factors")

    def _apply(self, p, k):
        raise UnsupportedOperation(f"{self.label}: apply_map works on factors only")

    def _distance(self, a, b):
        raise UnsupportedOperation(f"{self.label}: distance works on factors only")

    def orbit_segment(self, p, n):
        raise UnsupportedOperation(f"{self.label}: orbit segments work on factors only")

    @lru_cache(maxsize=None)
    def factors(self, length):
        """
        Sorted factors of the given length

        Args:
            length: Factor length (1..language_length * 4)

        Returns:
            Tuple of byte strings
        """
        if length < 1 or length > len(self.word) // 4:
            raise BadArgs(f"factor length {length} outside the reliable range")
        w = self.word
        return tuple(sorted({w[i:i + length] for i in range(len(w) - length + 1)}))

    def complexity(self, length):
        """Number of factors of the given length"""
        return len(self.factors(length))

    def is_factor(self, word):
        return bytes(word) in self.word

    def occurrences(self, word):
        """Sorted start positions of word inside the generating word"""
        word = bytes(word)
        if word not in self._occurrences:
            positions = []
            start = self.word.find(word)
            while start != -1:
                positions.append(start)
                start = self.word.find(word, start + 1)
            self._occurrences[word] = positions
        return self._occurrences[word]

    def return_gap(self, word):
        """Largest distance between consecutive occurrences"""
        positions = self.occurrences(word)
        if len(positions) < 2:
            return None
        return max(b - a for a, b in zip(positions, positions[1:]))

    def recurrence_function(self, length):
        """
        R(length): every window of R(length) letters contains every factor of the length

        Returns:
            Integer, or None when some factor does not recur inside the generating word
        """
        worst = 0
        for u in self.factors(length):
            gap = self.return_gap(u)
            if gap is None:
                return None
            worst = max(worst, gap)
        return worst + length - 1

    def recurrence_table(self, cap=None):
        """R(length) for length = 1..cap"""
        cap = cap or self.language_length
        return {length: self.recurrence_function(length) for length in range(1, cap + 1)}

    def connector_gap(self, u, v, m):
        """
        Least gap t >= 1 placing v exactly m + t - 1 letters after the start of u

        Args:
            u: Window word of the first segment
            v: Window word of the second segment
            m: Length of the first segment

        Returns:
            Integer t, or None when no such placement exists in the generating word
        """
        first = self.occurrences(u)
        second = self.occurrences(v)
        if not first or not second:
            return None
        best = None
        for p in first:
            i = bisect_left(second, p + m)
            if i < len(second):
                t = second[i] - p - m + 1
                if best is None or t < best:
                    best = t
                    if best == 1:
                        break
        return best

    def describe(self):
        info = super().describe()
        info.update({
            "rules": {str(k): list(v) for k, v in self.rules.items()},
            "seed": self.seed,
            "language_length": self.language_length,
            "word_length": len(self.word),
        })
        return info
