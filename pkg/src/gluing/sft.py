"""
Exact gluing, periodic gluing and specification profiles for shifts of finite type

Shadowing at 2^-r only constrains z on the window [s_j - r, s_j + m_j - 1 + r] of
each segment, so every decision here depends on the window words alone and is
cached by them.
"""
import logging
from fractions import Fraction
from itertools import product

from src.errors import BadArgs, NotAnSft
from src.shadowing import Gap, find_shadow_sft, lex_gap_search, schedule, verify_shadow
from src.systems.symbolic import periodic_point
from src.utils import ordered_map
from .family import class_certificate, sft_family
from .profile import GluingProfile, SpecificationProfile, instance_table

logger = logging.getLogger(__name__)


class WindowGluer:
    """
    Word-level shadowing decisions for one shift of finite type and radius r

    Args:
        sft: SymbolicSystem
        r: Agreement radius (eps = 2^-r)
    """

    def __init__(self, sft, r):
        if not getattr(sft, "is_sft", False):
            raise NotAnSft(f"{sft.label}: exact gluing needs a shift of finite type")
        self.sft = sft
        self.r = r
        self.lo = -r if sft.two_sided else 0
        self.oracle = sft.oracle
        self._windows = {}
        self._feasible = {}
        self._periodic = {}

    def window(self, x, m):
        """Symbols of x on [lo, m - 1 + r]"""
        key = (x, m)
        if key not in self._windows:
            self._windows[key] = x.word(self.lo, m - 1 + self.r)
        return self._windows[key]

    def windows(self, C):
        return tuple(self.window(x, m) for x, m in C.entries)

    def _forced(self, words, starts, modulus=None):
        forced = {}
        for word, s in zip(words, starts):
            for idx, letter in enumerate(word):
                c = s + self.lo + idx
                if modulus is not None:
                    c %= modulus
                if forced.setdefault(c, letter) != letter:
                    return None
        return forced

    def feasible(self, words, lengths, gaps):
        """Whether some admissible z shadows the windows at these gaps"""
        key = (words, gaps)
        if key in self._feasible:
            return self._feasible[key]
        starts = [0]
        for m, t in zip(lengths, gaps):
            starts.append(starts[-1] + m + t - 1)
        forced = self._forced(words, starts)
        ok = forced is not None and self._fillable(sorted(forced.items()))
        self._feasible[key] = ok
        return ok

    def _fillable(self, items):
        A = self.sft.A
        for (c1, a), (c2, b) in zip(items, items[1:]):
            if c2 == c1 + 1:
                if not A[a, b]:
                    return False
            elif not self.oracle.has_path(a, b, c2 - c1):
                return False
        return True

    def min_gap(self, words, lengths, cap):
        """
        Least B such that a gap with entries <= B works

        Returns:
            (B, gaps) or (None, None) when nothing up to cap works
        """
        rank = len(words)
        if rank == 1:
            return 0, ()
        for bound in range(1, cap + 1):
            def ok(prefix):
                n = len(prefix) + 1
                return self.feasible(words[:n], lengths[:n], prefix)

            gaps, _ = lex_gap_search(rank, bound, ok)
            if gaps is not None:
                return bound, gaps
        return None, None

    def periodic_feasible(self, words, lengths, gaps, t):
        """Whether a point of period s_k + m_k + t shadows the windows"""
        key = (words, gaps, t)
        if key in self._periodic:
            return self._periodic[key]
        starts = [0]
        for m, g in zip(lengths, gaps):
            starts.append(starts[-1] + m + g - 1)
        period = starts[-1] + lengths[-1] + t
        forced = self._forced(words, starts, period)
        ok = forced is not None and self._closable(sorted(forced.items()), period)
        self._periodic[key] = ok
        return ok

    def _closable(self, items, period):
        if not self._fillable(items):
            return False
        (c_last, a), (c_first, b) = items[-1], items[0]
        return self.oracle.has_path(a, b, c_first + period - c_last)

    def periodic_word(self, words, lengths, gaps, t):
        """
        Cycle word of length s_k + m_k + t, coordinate 0 first, or None

        Free residues are filled with lexicographically least paths.
        """
        starts = [0]
        for m, g in zip(lengths, gaps):
            starts.append(starts[-1] + m + g - 1)
        period = starts[-1] + lengths[-1] + t
        forced = self._forced(words, starts, period)
        if forced is None or not self._closable(sorted(forced.items()), period):
            return None
        items = sorted(forced.items())
        cycle = {}
        for (c1, a), (c2, b) in zip(items, items[1:] + [(items[0][0] + period, items[0][1])]):
            cycle[c1 % period] = a
            if c2 > c1 + 1:
                for offset, letter in enumerate(self.oracle.lex_path(a, b, c2 - c1), start=1):
                    cycle[(c1 + offset) % period] = letter
        return tuple(cycle[c] for c in range(period))

    def min_periodic(self, words, lengths, cap):
        """
        Least B with gaps <= B and closing time t <= B giving a periodic witness

        Returns:
            (B, gaps, t) or (None, None, None)
        """
        rank = len(words)
        for bound in range(1, cap + 1):
            for gaps in product(range(1, bound + 1), repeat=rank - 1):
                for t in range(1, bound + 1):
                    if max(gaps + (t,)) != bound:
                        continue
                    if self.periodic_feasible(words, lengths, gaps, t):
                        return bound, gaps, t
        return None, None, None

    def spec_ok(self, words, lengths, M, slack):
        """Every gap tuple with entries in [M, M + slack] shadows"""
        rank = len(words)
        return all(
            self.feasible(words, lengths, gaps)
            for gaps in product(range(M, M + slack + 1), repeat=rank - 1)
        )


def _settings(config):
    gluing_config = (config or {}).get("gluing", {})
    return {
        "base_period": gluing_config.get("base_period", 4),
        "max_base": gluing_config.get("max_base_points", 64),
        "slack_extra": gluing_config.get("spec_slack_extra", 2),
    }


def _family(sft, L, k, settings):
    return sft_family(sft, L, k, settings["base_period"], settings["max_base"])


def search_cap(sft, r):
    """Gap bound that suffices for every instance when the graph is irreducible"""
    return 2 * r + sft.alphabet_size + 1


def _exceeds_profile(sft, r, L, k, certificate, variant):
    logger.info(f"{sft.label}: reducible transitions, {variant} fails at every bound")
    return GluingProfile(
        system=sft.label,
        epsilon=Fraction(1, 2 ** r),
        segment_length_cap=L,
        rank_cap=k,
        pool_descriptor="canonical periodic/heteroclinic family",
        M_required=None,
        M_max=None,
        per_instance=instance_table([]),
        exact=True,
        stabilized=None,
        certificate=certificate,
        variant=variant,
    )


def decide_gluing_sft(sft, r, L, k, config=None, threads=1):
    """
    Exact gluing bound M(2^-r) over the canonical instance family

    Args:
        sft: SymbolicSystem
        r: Radius (eps = 2^-r)
        L: Segment length cap
        k: Rank cap
        config: Optional config dict (gluing section)
        threads: Instance-parallel workers

    Returns:
        GluingProfile
    """
    if not getattr(sft, "is_sft", False):
        raise NotAnSft(f"{getattr(sft, 'label', sft)}: decide_gluing_sft needs a shift of finite type")
    if r < 0 or L < 1 or k < 1:
        raise BadArgs("r must be >= 0 and the caps >= 1")
    if not sft.irreducible:
        return _exceeds_profile(sft, r, L, k, class_certificate(sft), "gluing")

    settings = _settings(config)
    family, P = _family(sft, L, k, settings)
    gluer = WindowGluer(sft, r)
    cap = search_cap(sft, r)

    def solve(inst):
        words = gluer.windows(inst.C)
        return gluer.min_gap(words, tuple(inst.C.lengths), cap)

    results = ordered_map(solve, family, threads)
    rows = []
    for inst, (bound, gaps) in zip(family, results):
        rows.append({
            "instance": inst.label,
            "rank": inst.C.rank,
            "lengths": "/".join(map(str, inst.C.lengths)),
            "min_max_gap": bound,
            "gap": list(gaps) if gaps is not None else None,
        })
    table = instance_table(rows)

    if table["min_max_gap"].isna().any():
        logger.warning(f"{sft.label}: some instance needs a gap above {cap}")
        M_required = None
    else:
        M_required = int(table["min_max_gap"].max())
    shorter = [
        row["min_max_gap"] for row, inst in zip(rows, family) if max(inst.C.lengths) < L
    ]
    stabilized = None
    if M_required is not None and shorter:
        stabilized = max(shorter) == M_required

    worst = _worst_witness(sft, gluer, family, rows, r) if M_required else None
    logger.info(
        f"{sft.label}: M_required = {M_required} at r = {r} over {len(family)} instances "
        f"(L = {L}, k = {k}, base period {P})"
    )
    return GluingProfile(
        system=sft.label,
        epsilon=Fraction(1, 2 ** r),
        segment_length_cap=L,
        rank_cap=k,
        pool_descriptor=f"periodic points of least period <= {P} plus heteroclinic points",
        M_required=M_required,
        M_max=cap,
        per_instance=table,
        exact=True,
        stabilized=stabilized,
        certificate=worst,
        variant="gluing",
        extra={"base_period": P},
    )


def _worst_witness(sft, gluer, family, rows, r):
    """Witness for the first instance attaining the maximum, with its tightness check"""
    best = max(range(len(rows)), key=lambda i: (rows[i]["min_max_gap"], -i))
    inst, row = family[best], rows[best]
    gap = Gap(tuple(row["gap"]))
    found = find_shadow_sft(sft, inst.C, gap, r)
    verdict = verify_shadow(sft, inst.C, gap, found.witness.z, Fraction(1, 2 ** r))
    below = row["min_max_gap"] - 1
    tight = below < 1 or all(
        not gluer.feasible(gluer.windows(inst.C), tuple(inst.C.lengths), gaps)
        for gaps in product(range(1, below + 1), repeat=inst.C.rank - 1)
    )
    return {
        "instance": inst.label,
        "gap": list(gap.gaps),
        "witness": sft.point_to_json(found.witness.z),
        "verified": verdict.accepted,
        "tight": tight,
    }


def periodic_gluing_sft(sft, r, L, k, config=None, threads=1):
    """
    Periodic gluing bound: witnesses of period exactly s_k + m_k + t

    Returns:
        GluingProfile with variant "periodic"; the table carries the closing time t
    """
    if not getattr(sft, "is_sft", False):
        raise NotAnSft(f"{getattr(sft, 'label', sft)}: periodic_gluing_sft needs a shift of finite type")
    if not sft.irreducible:
        return _exceeds_profile(sft, r, L, k, class_certificate(sft), "periodic")

    settings = _settings(config)
    family, P = _family(sft, L, k, settings)
    gluer = WindowGluer(sft, r)
    cap = 2 * r + 2 * sft.alphabet_size + 2

    def solve(inst):
        words = gluer.windows(inst.C)
        return gluer.min_periodic(words, tuple(inst.C.lengths), cap)

    results = ordered_map(solve, family, threads)
    rows = []
    for inst, (bound, gaps, t) in zip(family, results):
        rows.append({
            "instance": inst.label,
            "rank": inst.C.rank,
            "lengths": "/".join(map(str, inst.C.lengths)),
            "min_max_gap": bound,
            "gap": list(gaps) if gaps is not None else None,
            "t": t,
        })
    table = instance_table(rows)
    table["t"] = [row["t"] for row in rows]

    failed = [row for row in rows if row["min_max_gap"] is None]
    M_required = None if failed else max(row["min_max_gap"] for row in rows)
    certificate = None
    if M_required is not None:
        certificate = _periodic_witness(sft, gluer, family, rows, r)
    logger.info(f"{sft.label}: periodic M_required = {M_required} at r = {r}")
    return GluingProfile(
        system=sft.label,
        epsilon=Fraction(1, 2 ** r),
        segment_length_cap=L,
        rank_cap=k,
        pool_descriptor=f"periodic points of least period <= {P} plus heteroclinic points",
        M_required=M_required,
        M_max=cap,
        per_instance=table,
        exact=True,
        certificate=certificate,
        variant="periodic",
        extra={"base_period": P},
    )


def periodic_witness(sft, C, r, gaps, t):
    """
    Periodic point of period s_k + m_k + t shadowing C, or None

    Returns:
        (z, period)
    """
    gluer = WindowGluer(sft, r)
    word = gluer.periodic_word(gluer.windows(C), tuple(C.lengths), tuple(gaps), t)
    if word is None:
        return None
    return periodic_point(sft, word), len(word)


def _periodic_witness(sft, gluer, family, rows, r):
    best = max(range(len(rows)), key=lambda i: (rows[i]["min_max_gap"], -i))
    inst, row = family[best], rows[best]
    gaps = tuple(row["gap"])
    z, period = periodic_witness(sft, inst.C, r, gaps, row["t"])
    sched = schedule(inst.C, Gap(gaps))
    verdict = verify_shadow(sft, inst.C, Gap(gaps), z, Fraction(1, 2 ** r))
    return {
        "instance": inst.label,
        "gap": list(gaps),
        "t": row["t"],
        "period": period,
        "period_matches": period == sched.span + row["t"] and sft.apply(z, period) == z,
        "witness": sft.point_to_json(z),
        "verified": verdict.accepted,
    }


def specification_profile_sft(sft, r, L, k, M_max, slack=None, config=None):
    """
    Least M such that every gap tuple with entries in [M, M + slack] shadows

    Args:
        sft: SymbolicSystem
        r: Radius (eps = 2^-r)
        L: Segment length cap
        k: Rank cap (>= 2 for a meaningful test)
        M_max: Largest M tried
        slack: Width of the tested gap window (default 2r + 2)

    Returns:
        SpecificationProfile
    """
    if not getattr(sft, "is_sft", False):
        raise NotAnSft(f"{getattr(sft, 'label', sft)}: specification needs a shift of finite type")
    settings = _settings(config)
    if slack is None:
        slack = 2 * r + settings["slack_extra"]
    profile = SpecificationProfile(
        system=sft.label,
        epsilon=Fraction(1, 2 ** r),
        M_max=M_max,
        slack=slack,
        segment_length_cap=L,
        rank_cap=k,
    )
    if not sft.irreducible:
        profile.certificate = class_certificate(sft)
        logger.info(f"{sft.label}: reducible, specification fails")
        return profile
    if sft.period != 1:
        profile.certificate = {
            "reason": "periodic transition graph",
            "period": sft.period,
            "detail": "paths between two given symbols only have lengths in one residue class",
        }
        logger.info(f"{sft.label}: period {sft.period}, specification fails")
        return profile

    family, _ = _family(sft, L, max(k, 2), settings)
    family = [inst for inst in family if inst.C.rank >= 2]
    profile.instances = len(family)
    gluer = WindowGluer(sft, r)
    prepared = []
    seen = set()
    for inst in family:
        key = (gluer.windows(inst.C), tuple(inst.C.lengths))
        if key not in seen:
            seen.add(key)
            prepared.append(key)

    for M in range(1, M_max + 1):
        if all(gluer.spec_ok(words, lengths, M, slack) for words, lengths in prepared):
            profile.M_uniform = M
            break
    logger.info(f"{sft.label}: M_uniform = {profile.M_uniform} at r = {r} (slack {slack})")
    return profile
