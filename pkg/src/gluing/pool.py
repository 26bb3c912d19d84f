"""
Gluing profiles for every system kind
"""
import logging
from fractions import Fraction

from src.errors import BadArgs, PoolRequired
from src.shadowing import minimal_max_gap
from src.utils import as_fraction, ordered_map, shadow_radius
from .family import pool_family
from .profile import GluingProfile, instance_table
from .sft import decide_gluing_sft

logger = logging.getLogger(__name__)


def gluing_profile(system, eps, L, k, pool=None, M_max=64, config=None, threads=1):
    """
    Largest minimal max-gap over an instance family, for any system kind

    Shifts of finite type are decided exactly; grid systems search a pool; the
    substitution subshift uses the word-level connector search (rank 2).
    A negative answer outside shifts of finite type means failure up to M_max.

    Args:
        system: System
        eps: Positive scale
        L: Segment length cap
        k: Rank cap
        pool: CandidatePool (required for grid systems)
        M_max: Largest gap tried
        config: Optional config dict
        threads: Instance-parallel workers

    Returns:
        GluingProfile
    """
    eps = as_fraction(eps)
    if L < 1 or k < 1 or M_max < 1:
        raise BadArgs("L, k and M_max must be >= 1")
    if system.is_sft:
        r = max(shadow_radius(eps), 0)
        profile = decide_gluing_sft(system, r, L, k, config, threads)
        profile.epsilon = eps
        if profile.finite and profile.M_required > M_max:
            profile.extra["M_found"] = profile.M_required
            profile.M_required = None
        profile.M_max = M_max
        return profile
    if system.kind == "substitution_subshift":
        return connector_profile(system, eps, L, M_max, threads)
    return _pool_profile(system, eps, L, k, pool, M_max, config, threads)


def _pool_profile(system, eps, L, k, pool, M_max, config, threads):
    if not pool:
        raise PoolRequired(f"{system.label}: gluing_profile needs a nonempty pool")
    gluing_config = (config or {}).get("gluing", {})
    sample_size = gluing_config.get("base_sample", 8)
    seed = gluing_config.get("seed", 0)
    family = pool_family(pool, L, k, sample_size, seed)

    def solve(inst):
        return minimal_max_gap(system, inst.C, eps, M_max, pool)

    rows = []
    M_required = 0
    # stop at the first instance beyond M_max: the profile is exceeded either way
    batch = max(1, threads or 1)
    for start in range(0, len(family), batch):
        chunk = family[start:start + batch]
        for inst, found in zip(chunk, ordered_map(solve, chunk, threads)):
            rows.append({
                "instance": inst.label,
                "rank": inst.C.rank,
                "lengths": "/".join(map(str, inst.C.lengths)),
                "min_max_gap": found[0] if found else None,
                "gap": list(found[1].gaps) if found else None,
            })
            if found is None:
                M_required = None
                break
            M_required = max(M_required, found[0])
        if M_required is None:
            break

    if M_required is None:
        logger.warning(
            f"{system.label}: instance {rows[-1]['instance']} needs a gap above {M_max} at eps = {eps}"
        )
    else:
        logger.info(f"{system.label}: M_required = {M_required} at eps = {eps} ({len(rows)} instances)")
    return GluingProfile(
        system=system.label,
        epsilon=eps,
        segment_length_cap=L,
        rank_cap=k,
        pool_descriptor=f"{min(sample_size, len(pool))} sampled bases (seed {seed}); candidates: {pool.descriptor}",
        M_required=M_required,
        M_max=M_max,
        per_instance=instance_table(rows),
        exact=False,
        certificate={"failing_instance": rows[-1]["instance"]} if M_required is None else None,
        extra={"seed": seed},
    )


def connector_profile(system, eps, L, M_max=None, threads=1):
    """
    Word-level gluing profile of a substitution subshift

    Each instance is a pair of factors (u, v) of length L + 2r, the windows two
    segments of length L leave at eps = 2^-r; its entry is the least gap placing v
    after u inside the language.

    Returns:
        GluingProfile (variant "connector")
    """
    eps = as_fraction(eps)
    r = max(shadow_radius(eps), 0)
    width = L + 2 * r
    words = system.factors(width)
    pairs = [(u, v) for u in words for v in words]

    def solve(pair):
        return system.connector_gap(pair[0], pair[1], L)

    gaps = ordered_map(solve, pairs, threads)
    rows = []
    for (u, v), t in zip(pairs, gaps):
        rows.append({
            "instance": f"{u.hex()} | {v.hex()}",
            "rank": 2,
            "lengths": f"{L}/{L}",
            "min_max_gap": t,
            "gap": [t] if t is not None else None,
        })
    missing = any(t is None for t in gaps)
    M_found = None if missing else max(gaps)
    M_required = M_found
    if M_found is not None and M_max is not None and M_found > M_max:
        M_required = None
    logger.info(f"{system.label}: connector bound {M_found} at L = {L}, eps = {eps} ({len(pairs)} pairs)")
    return GluingProfile(
        system=system.label,
        epsilon=eps,
        segment_length_cap=L,
        rank_cap=2,
        pool_descriptor=f"all factor pairs of length {width} ({len(words)} factors)",
        M_required=M_required,
        M_max=M_max,
        per_instance=instance_table(rows),
        exact=False,
        variant="connector",
        extra={"M_found": M_found, "factor_count": len(words), "radius": r},
    )


def connector_growth(system, eps, lengths, threads=1):
    """
    Connector bound for each segment length

    Returns:
        Dict L -> bound, plus whether the sequence strictly increases
    """
    bounds = {}
    for L in lengths:
        bounds[L] = connector_profile(system, eps, L, None, threads).extra["M_found"]
    values = [bounds[L] for L in lengths]
    increasing = all(
        a is not None and b is not None and b > a for a, b in zip(values, values[1:])
    )
    return {"bounds": bounds, "strictly_increasing": increasing}


def sft_stabilization(sft, r, lengths, k=2, config=None):
    """M_required for each segment length, and the first length after which it stays fixed"""
    bounds = {L: decide_gluing_sft(sft, r, L, k, config).M_required for L in lengths}
    stable_from = None
    values = [bounds[L] for L in lengths]
    for i, L in enumerate(lengths):
        if all(v == values[i] for v in values[i:]):
            stable_from = L
            break
    return {"bounds": bounds, "stable_from": stable_from, "epsilon": Fraction(1, 2 ** r)}
