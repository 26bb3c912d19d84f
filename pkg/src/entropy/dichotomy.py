"""
Positive-entropy certificates built by gluing

The 2^n construction glues every word over {x, y} of length n into one orbit; when
x and y stay away from each other the glued points are (2mn, eps2)-separated,
which forces h >= ln 2 / (2m). The specification bound h >= ln N / M is the
classical counterpart for systems where every large gap works.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from src.errors import BadArgs, GluingFailed, NotAnSft, StayAwayViolated
from src.gluing import decide_gluing_sft, specification_profile_sft
from src.shadowing import OrbitSequence, find_gap_and_shadow, minimal_max_gap, verify_shadow
from src.systems.pools import grid_pool
from src.systems.recurrence import returns, stay_away_conditions
from src.utils import as_fraction, dyadic_floor_exponent
from .oracle import sft_entropy_oracle
from .separated import SeparatedSet, separated_count, verify_separated

logger = logging.getLogger(__name__)


@dataclass
class DichotomyResult:
    """
    The glued family E with its certificate

    bound = ln 2 / (2m) is a valid lower bound for h whenever verified is set.
    """

    separated: SeparatedSet
    m: int
    m_profile: int
    epsilon: Fraction
    epsilon2: Fraction
    r2: int
    n: int
    gaps: list
    bound: float
    verified: bool
    stay_away: dict = field(default_factory=dict)
    labels: list = field(default_factory=list)

    def to_dict(self):
        return {
            "witnesses": self.separated.count,
            "separation_length": self.separated.n,
            "m": self.m,
            "m_profile": self.m_profile,
            "epsilon": self.epsilon,
            "epsilon2": self.epsilon2,
            "r2": self.r2,
            "n": self.n,
            "bound": self.bound,
            "verified": self.verified,
            "stay_away": self.stay_away,
            "gaps": self.gaps,
            "labels": self.labels,
        }


def _check_nonrecurrent(system, x, eps, horizon):
    hit = returns(system, x, eps, horizon)
    if hit.found:
        raise StayAwayViolated(f"x returns within {eps} of itself at n = {hit.n}")


def dichotomy_construction(system, x, y, eps, n, M_max=64, pool=None, config=None, horizon=256):
    """
    Glue every xi in {x, y}^n with segment length m and certify separation

    Args:
        system: SymbolicSystem or grid system
        x: Non-recurrent point
        y: Point at distance >= eps from x
        eps: Stay-away scale
        n: Number of segments per glued orbit
        M_max: Largest gap tried
        pool: CandidatePool for grid systems
        config: Optional config dict (dichotomy section)
        horizon: Horizon recorded for the stay-away checks

    Returns:
        DichotomyResult

    Raises:
        StayAwayViolated: d(x, y) < eps, or x returns. Shifts check x before any
            gluing; grid systems glue first, so a grid that cannot glue reports
            GluingFailed even when every point recurs
        GluingFailed: Some word in {x, y}^n has no gap <= M_max
    """
    eps = as_fraction(eps)
    if n < 1 or M_max < 1:
        raise BadArgs("n and M_max must be >= 1")
    dichotomy_config = (config or {}).get("dichotomy", {})
    if system.distance(x, y) < eps:
        raise StayAwayViolated(f"d(x, y) = {system.distance(x, y)} is below eps = {eps}")
    if system.is_sft:
        _check_nonrecurrent(system, x, eps, horizon)

    if pool is None and system.is_finite:
        pool = grid_pool(system)

    r2 = dyadic_floor_exponent(eps / 3)
    eps2 = Fraction(1, 2 ** r2)
    m_profile = 1
    if system.is_sft:
        profile = decide_gluing_sft(system, r2, dichotomy_config.get("profile_length", 1), 2, config)
        if not profile.finite:
            raise GluingFailed(f"{system.label}: no gluing bound at eps2 = {eps2}", profile.certificate)
        m_profile = profile.M_required

    codes = list(product((0, 1), repeat=n))
    words = [tuple((x, y)[c] for c in code) for code in codes]
    labels = ["".join("xy"[c] for c in code) for code in codes]
    m = m_profile
    # longer segments can need longer gaps; iterate to a fixed point m >= every B_xi
    changed = True
    while changed:
        changed = False
        for xi, label in zip(words, labels):
            C = OrbitSequence(tuple((p, m) for p in xi))
            found = minimal_max_gap(system, C, eps2, M_max, pool)
            if found is None:
                raise GluingFailed(
                    f"{system.label}: {label} cannot be glued with gaps <= {M_max} at eps2 = {eps2}",
                    {"instance": label, "m": m},
                )
            if found[0] > m:
                m = found[0]
                changed = True

    if not system.is_sft:
        _check_nonrecurrent(system, x, eps, horizon)
    stay_away = stay_away_conditions(system, x, y, eps, horizon)

    points, gaps = [], []
    for xi, label in zip(words, labels):
        C = OrbitSequence(tuple((p, m) for p in xi))
        found = find_gap_and_shadow(system, C, eps2, m, pool)
        if found is None:
            raise GluingFailed(f"{system.label}: {label} lost its gap at m = {m}", {"instance": label, "m": m})
        gap, z = found
        if not verify_shadow(system, C, gap, z, eps2):
            raise GluingFailed(f"{system.label}: witness for {label} does not shadow", {"instance": label})
        points.append(z)
        gaps.append(list(gap.gaps))

    length = 2 * m * n
    ok, pair = verify_separated(system, points, length, eps2)
    if not ok:
        logger.warning(f"{system.label}: witnesses {labels[pair[0]]} and {labels[pair[1]]} are not separated")
    bound = math.log(2) / (2 * m)
    logger.info(
        f"{system.label}: {len(points)} glued witnesses, m = {m}, eps2 = {eps2}, "
        f"separated = {ok}, h >= {bound:.6f}"
    )
    separated = SeparatedSet(length, eps2, points, exact=False, method="glued 2^n family")
    return DichotomyResult(
        separated=separated,
        m=m,
        m_profile=m_profile,
        epsilon=eps,
        epsilon2=eps2,
        r2=r2,
        n=n,
        gaps=gaps,
        bound=bound,
        verified=ok,
        stay_away=stay_away,
        labels=labels,
    )


def spec_entropy_bound(N, M):
    """
    ln N / M

    Args:
        N: Size of a (1, 3 eps)-separated set (>= 2)
        M: Specification gap bound (>= 1)
    """
    if N < 2 or M < 1:
        raise BadArgs(f"need N >= 2 and M >= 1, got N = {N}, M = {M}")
    return math.log(N) / M


def spec_bound_check(sft, r=None, L=4, k=2, M_max=64, config=None, tol=1e-9):
    """
    Compare ln N / M_uniform with the spectral entropy

    N = s(1, 3 * 2^-r). Without r, the smallest r with N >= 2 is used.

    Returns:
        Dict with r, N, M_uniform, bound, oracle interval and holds
    """
    if not getattr(sft, "is_sft", False):
        raise NotAnSft(f"{getattr(sft, 'label', sft)}: the specification bound needs a shift of finite type")
    candidates = [r] if r is not None else range(1, 9)
    for radius in candidates:
        N = separated_count(sft, 1, Fraction(3, 2 ** radius)).count
        if N >= 2:
            break
    else:
        raise BadArgs(f"{sft.label}: s(1, 3 eps) < 2 at every radius tried")
    profile = specification_profile_sft(sft, radius, L, k, M_max, config=config)
    oracle = sft_entropy_oracle(sft)
    result = {
        "r": radius,
        "N": N,
        "M_uniform": profile.M_uniform,
        "oracle": oracle,
        "bound": None,
        "holds": None,
    }
    if profile.finite:
        bound = spec_entropy_bound(N, profile.M_uniform)
        result["bound"] = bound
        result["holds"] = oracle.upper >= bound - tol
    logger.info(f"{sft.label}: specification bound {result['bound']} at r = {radius} (N = {N})")
    return result
