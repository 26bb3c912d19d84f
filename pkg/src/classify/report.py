"""
Classification report: property verdicts plus the theorem cross-checks

Each check states an implication between verdicts that must hold for a correct
implementation. A failing check points at a bug in the verdict code, not at the
mathematics.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import pandas as pd

from src.entropy import dichotomy_construction, entropy_estimate, periodic_counts
from src.errors import GluingToolkitError, NotMinimal
from src.gluing import connector_growth, decide_gluing_sft, gluing_profile, periodic_gluing_sft, pool_family
from src.shadowing import Gap, verify_shadow
from src.systems.pools import default_pool, periodic_pool, sampled_pool
from src.systems.recurrence import first_hit
from src.utils import as_fraction, dyadic_floor_exponent, section, shadow_radius
from .birkhoff import BirkhoffProbe, birkhoff_gap, birkhoff_witness_sft, ergodicity_probe
from .verdicts import (
    NO,
    UNKNOWN,
    YES,
    Verdict,
    covering_time,
    equicontinuity_modulus,
    find_nonrecurrent,
    is_minimal,
    is_transitive,
    stay_away_pair,
)

logger = logging.getLogger(__name__)

PASS, FAIL, NA, INCONCLUSIVE = "pass", "fail", "n/a", "inconclusive"


@dataclass
class TheoremCheck:
    id: str
    status: str
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return {"id": self.id, "status": self.status, "details": self.details}


@dataclass
class ClassificationReport:
    """
    Verdicts, theorem checks and the supporting computations

    tables holds the DataFrames written as CSV by the job runner.
    """

    system: str
    verdicts: dict
    theorem_checks: list
    details: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)

    @property
    def failures(self):
        return [c for c in self.theorem_checks if c.status == FAIL]

    def summary_table(self):
        rows = [
            {"item": name, "value": v.value, "scope": v.scope}
            for name, v in self.verdicts.items()
        ]
        entropy = self.details.get("entropy")
        if entropy is not None:
            kind = "lower-bound estimate" if entropy.lower_bound else "estimate"
            rows.append({"item": "entropy", "value": f"{entropy.h_estimate:.6f}", "scope": kind})
        for check in self.theorem_checks:
            rows.append({"item": check.id, "value": check.status, "scope": "theorem check"})
        return pd.DataFrame(rows, columns=["item", "value", "scope"])

    def print_summary(self):
        """Log the verdict and check table"""
        logger.info("=" * 60)
        logger.info(f"CLASSIFICATION: {self.system}")
        logger.info("=" * 60)
        for row in self.summary_table().itertuples(index=False):
            logger.info(f"{row.item:<16} {row.value:<14} {row.scope}")
        logger.info("=" * 60)

    def to_dict(self):
        return {
            "system": self.system,
            "verdicts": self.verdicts,
            "theorem_checks": self.theorem_checks,
            "failures": [c.id for c in self.failures],
            "details": self.details,
        }


def _gluing_verdict(system, eps, pool, transitive, L, k, M_max, config, threads):
    """Gluing verdict and the profile behind it"""
    if system.is_sft:
        r = max(shadow_radius(eps), 0)
        profile = decide_gluing_sft(system, r, L, k, config, threads)
        if profile.finite:
            return Verdict(YES, {"M_required": profile.M_required, "witness": profile.certificate},
                           scope=f"eps = 2^-{r}"), profile
        return Verdict(NO, profile.certificate, scope=f"eps = 2^-{r}"), profile
    if system.kind == "substitution_subshift":
        lengths = section(config, "classify").get("connector_lengths", [4, 8, 16, 32])
        growth = connector_growth(system, eps, lengths, threads)
        scope = "connector bound grows with segment length" if growth["strictly_increasing"] else "word level"
        return Verdict(UNKNOWN, caps=growth, exact=False, scope=scope), None
    profile = gluing_profile(system, eps, L, k, pool, M_max, config, threads)
    if transitive.value == NO:
        # gluing forces transitivity
        certificate = {"not_transitive": transitive.certificate, "M_required": profile.M_required}
        return Verdict(NO, certificate, scope="gluing implies transitivity"), profile
    caps = {"M_required": profile.M_required, "M_max": M_max, "instances": len(profile.per_instance)}
    return Verdict(UNKNOWN, caps=caps, exact=False, scope="pool search over a finite instance family"), profile


def _stay_away_inputs(system, stay_away, nonrecurrent, pool, eps):
    if stay_away is not None:
        return stay_away.x, stay_away.y, stay_away.epsilon
    if nonrecurrent is None:
        return None
    x = nonrecurrent.point
    for y in pool:
        if system.distance(x, y) >= eps:
            return x, y, eps
    return None


def _check_t1(system, verdicts, entropy, inputs, pool, config):
    if verdicts["gluing"].value != YES or verdicts["minimal"].value != NO:
        return TheoremCheck("T1", NA, {"reason": "needs certified gluing and a non-minimal system"})
    if inputs is None:
        return TheoremCheck("T1", INCONCLUSIVE, {"reason": "no non-recurrent point in the pool"})
    dichotomy_config = section(config, "dichotomy")
    x, y, eps = inputs
    try:
        result = dichotomy_construction(
            system, x, y, eps,
            n=dichotomy_config.get("n", 3),
            M_max=section(config, "classify").get("max_gap", 64),
            pool=pool,
            config=config,
            horizon=dichotomy_config.get("horizon", 64),
        )
    except GluingToolkitError as e:
        return TheoremCheck("T1", FAIL, {"error": str(e), "type": type(e).__name__})
    upper = entropy.oracle.upper if entropy.oracle is not None else None
    ok = entropy.h_estimate > 0 and result.verified and (upper is None or result.bound <= upper + 1e-9)
    details = {
        "h_estimate": entropy.h_estimate,
        "bound": result.bound,
        "oracle_upper": upper,
        "witnesses": result.separated.count,
        "m": result.m,
        "verified": result.verified,
    }
    return TheoremCheck("T1", PASS if ok else FAIL, details)


def _check_t5a(verdicts):
    if verdicts["equicontinuous"].value != YES or verdicts["transitive"].value != YES:
        return TheoremCheck("T5a", NA, {"reason": "needs equicontinuity and transitivity"})
    minimal = verdicts["minimal"].value
    return TheoremCheck("T5a", PASS if minimal == YES else FAIL, {"minimal": minimal})


def _equicontinuous_gaps(system, C, delta, N):
    """Gaps that let x_1 itself shadow C: wait until f^n(x_1) enters B(x_{j+1}, delta)"""
    x1 = C.points[0]
    s = 0
    gaps = []
    for j in range(C.rank - 1):
        base = s + C.lengths[j] - 1
        target = C.points[j + 1]
        for t in range(1, N + 2):
            if bool(system.within(system.apply(x1, base + t), target, delta)):
                break
        else:
            return None
        gaps.append(t)
        s = base + t
    return Gap(tuple(gaps))


def _check_t5b(system, verdicts, pool, L, k, M_max, config, threads):
    """Minimal equicontinuous grids: M_required <= N + 1, and x_1 shadows with those gaps"""
    applicable = (
        system.is_finite
        and verdicts["equicontinuous"].value == YES
        and verdicts["minimal"].value == YES
    )
    if not applicable:
        reason = {"reason": "needs a minimal equicontinuous grid system"}
        return TheoremCheck("T5b", NA, reason), TheoremCheck("equicontinuous_shadow", NA, reason)
    classify_config = section(config, "classify")
    gluing_config = section(config, "gluing")
    horizon = classify_config.get("horizon", 256)
    family = pool_family(pool, L, k, gluing_config.get("base_sample", 8), gluing_config.get("seed", 0))
    rows = []
    bound_ok = True
    shadow_ok = True
    for value in classify_config.get("t5_eps", ["1/2", "1/4", "1/8"]):
        eps = as_fraction(value)
        modulus = equicontinuity_modulus(system, eps, horizon)
        N = covering_time(system, modulus.delta)
        profile = gluing_profile(system, eps, L, k, pool, M_max, config, threads)
        fits = profile.finite and profile.M_required <= N + 1
        bound_ok = bound_ok and fits
        failed = 0
        for inst in family:
            gap = _equicontinuous_gaps(system, inst.C, modulus.delta, N)
            if gap is None or not verify_shadow(system, inst.C, gap, inst.C.points[0], eps):
                failed += 1
        shadow_ok = shadow_ok and failed == 0
        rows.append({
            "eps": eps,
            "delta": modulus.delta,
            "covering_time": N,
            "M_required": profile.M_required,
            "fits": fits,
            "constructive_failures": failed,
        })
    t5b = TheoremCheck("T5b", PASS if bound_ok else FAIL, {"rows": rows})
    shadow_check = TheoremCheck(
        "equicontinuous_shadow", PASS if shadow_ok else FAIL, {"instances": len(family), "rows": rows}
    )
    return t5b, shadow_check


def _average_pair(system, eps, stay_away, nonrecurrent, pool, horizon):
    """
    (x, y, source) with the orbit of x never within eps of y

    A stay-away pair is used when one was found; otherwise a periodic y is matched
    against the non-recurrent point and then the pool.
    """
    if stay_away is not None:
        return stay_away.x, stay_away.y, "stay-away pair"
    if not system.is_sft:
        return None
    starts = ([nonrecurrent.point] if nonrecurrent is not None else []) + list(pool)
    targets = list(periodic_pool(system, 4))
    for x in starts:
        for y in targets:
            if system.distance(x, y) < eps:
                continue
            hit = first_hit(system, x, y, eps, True, 0, horizon=horizon)
            if not hit.found and hit.exact:
                return x, y, "periodic target"
    return None


def _check_t41(system, verdicts, pair, eps, probe_result, config):
    classify_config = section(config, "classify")
    if verdicts["minimal"].value != NO:
        return TheoremCheck("T4.1", NA, {"reason": "needs a non-minimal system"})
    if verdicts["gluing"].value == YES:
        if pair is None:
            return TheoremCheck("T4.1", INCONCLUSIVE, {"reason": "no orbit stays away from a periodic point"})
        x, y, source = pair
        r = dyadic_floor_exponent(eps / 2)
        probe = BirkhoffProbe(y, Fraction(1, 2 ** r))
        length = classify_config.get("birkhoff_length", 4096)
        x_average = birkhoff_gap(system, x, probe, length)
        try:
            witness = birkhoff_witness_sft(
                system, y, r,
                classify_config.get("birkhoff_repeats", 8),
                classify_config.get("max_gap", 64),
            )
        except GluingToolkitError as e:
            return TheoremCheck("T4.1", FAIL, {"error": str(e)})
        ok = x_average == 0 and witness.holds and witness.average > x_average
        return TheoremCheck(
            "T4.1", PASS if ok else FAIL, {"source": source, "x_average": x_average, "witness": witness}
        )
    if probe_result is None:
        return TheoremCheck("T4.1", NA, {"reason": "no Birkhoff probe"})
    tolerance = classify_config.get("ue_tolerance", 0.01)
    if probe_result["spread"] <= tolerance:
        # agreeing averages predict that gluing fails
        ok = verdicts["gluing"].value != YES
        return TheoremCheck(
            "T4.1",
            PASS if ok else FAIL,
            {"spread": probe_result["spread"], "tolerance": tolerance, "gluing": verdicts["gluing"].value},
        )
    return TheoremCheck("T4.1", NA, {"spread": probe_result["spread"], "reason": "averages differ"})


def _check_t42(entropy, periodic, periodic_profile, config):
    if periodic is None or periodic_profile is None or not periodic_profile.finite:
        return TheoremCheck("T4.2", NA, {"reason": "needs a finite periodic gluing profile"})
    tolerance = section(config, "classify").get("tolerance", 0.05)
    ok = entropy.h_estimate <= periodic.p_hat + tolerance
    details = {"h_estimate": entropy.h_estimate, "p_hat": periodic.p_hat, "tolerance": tolerance}
    return TheoremCheck("T4.2", PASS if ok else FAIL, details)


def _check_nonrecurrent(verdicts, nonrecurrent):
    if verdicts["gluing"].value != YES or verdicts["minimal"].value != NO:
        return TheoremCheck("nonrecurrent_point", NA, {"reason": "needs certified gluing and a non-minimal system"})
    ok = nonrecurrent is not None and nonrecurrent.exact
    return TheoremCheck("nonrecurrent_point", PASS if ok else FAIL, {"nonrecurrent": nonrecurrent})


def classify(system, config=None, pool=None, threads=1, eps=None, L=None, k=None, M_max=None, horizon=None):
    """
    Run every verdict and the theorem cross-checks

    Args:
        system: System
        config: Config dict (classify, gluing, entropy, dichotomy sections)
        pool: CandidatePool (default: every grid point, or the probe pool for shifts)
        threads: Workers for instance-parallel profile searches
        eps, L, k, M_max, horizon: Overrides of the config defaults

    Returns:
        ClassificationReport
    """
    classify_config = section(config, "classify")
    gluing_config = section(config, "gluing")
    entropy_config = section(config, "entropy")
    horizon = horizon or classify_config.get("horizon", 256)
    M_max = M_max or classify_config.get("max_gap", 64)
    L = L or gluing_config.get("length_cap", 4)
    k = k or gluing_config.get("rank_cap", 3)
    seed = gluing_config.get("seed", 0)
    if eps is not None:
        eps = as_fraction(eps)
    elif system.is_finite:
        eps = as_fraction(classify_config.get("grid_eps", "1/8"))
    else:
        eps = Fraction(1, 2 ** classify_config.get("shadow_r", 1))
    pool = default_pool(system, config) if pool is None else pool
    word_level = system.kind == "substitution_subshift"
    logger.info(f"Classifying {system.label} at eps = {eps} ({pool.descriptor})")

    verdicts = {
        "transitive": is_transitive(system, word_cap=classify_config.get("word_cap", 8)),
        "minimal": is_minimal(system, recurrence_cap=classify_config.get("recurrence_cap", 64)),
    }
    modulus = None
    if word_level:
        verdicts["equicontinuous"] = Verdict(UNKNOWN, caps={"reason": "word-level system"}, exact=False)
    else:
        modulus = equicontinuity_modulus(system, eps, horizon, pool if system.is_sft else None)
        verdicts["equicontinuous"] = Verdict(
            modulus.status, modulus.to_dict(), exact=modulus.scope != "up to horizon", scope=modulus.scope
        )
    verdicts["gluing"], profile = _gluing_verdict(
        system, eps, pool, verdicts["transitive"], L, k, M_max, config, threads
    )

    if system.is_finite:
        eps_list = entropy_config.get("grid_eps_list", ["1/2", "1/4", "1/8"])
        n_max = entropy_config.get("grid_n_max", 64)
    else:
        eps_list = entropy_config.get("eps_list", ["1/2", "1/4"])
        n_max = entropy_config.get("n_max", 12)
    entropy = entropy_estimate(system, eps_list, n_max, config=config)

    periodic = periodic_profile = None
    if system.is_sft:
        periodic = periodic_counts(system, n_max, entropy_config.get("enumeration_limit", 12))
        periodic_profile = periodic_gluing_sft(system, max(shadow_radius(eps), 0), L, k, config, threads)

    nonrecurrent = stay_away = covering = probe_result = None
    if not word_level:
        nonrecurrent = find_nonrecurrent(system, eps, horizon, pool)
        pair_pool = sampled_pool(pool, classify_config.get("pair_pool", 64), seed)
        stay_away = stay_away_pair(system, eps, horizon, pair_pool)
        if system.is_finite and verdicts["minimal"].value == YES:
            try:
                covering = covering_time(system, eps)
            except NotMinimal as e:
                logger.warning(f"{system.label}: {e}")
        if stay_away is not None:
            center = stay_away.y
        elif system.is_finite:
            center = system.grid_size // 2
        else:
            center = next(iter(pool))
        probe = BirkhoffProbe(center, as_fraction(classify_config.get("birkhoff_eps", "1/16")))
        probe_result = ergodicity_probe(
            system, probe, pool,
            classify_config.get("birkhoff_samples", 16),
            classify_config.get("birkhoff_length", 4096),
            seed,
        )

    average_pair = None
    if not word_level and verdicts["gluing"].value == YES and verdicts["minimal"].value == NO:
        average_pair = _average_pair(system, eps, stay_away, nonrecurrent, pool, horizon)
    inputs = None if word_level else _stay_away_inputs(system, stay_away, nonrecurrent, pool, eps)
    t5b, shadow_check = _check_t5b(system, verdicts, pool, L, k, M_max, config, threads)
    checks = [
        _check_t1(system, verdicts, entropy, inputs, pool, config),
        _check_t5a(verdicts),
        t5b,
        _check_t41(system, verdicts, average_pair, eps, probe_result, config),
        _check_t42(entropy, periodic, periodic_profile, config),
        _check_nonrecurrent(verdicts, nonrecurrent),
        shadow_check,
    ]

    tables = {"entropy": entropy.table}
    if profile is not None and profile.per_instance is not None:
        tables["gluing"] = profile.per_instance
    if periodic is not None:
        tables["periodic"] = periodic.table
    if word_level and verdicts["minimal"].certificate:
        recurrence = verdicts["minimal"].certificate["recurrence_function"]
        tables["recurrence"] = pd.DataFrame(
            {"length": list(recurrence), "R": list(recurrence.values())}
        )

    details = {
        "epsilon": eps,
        "pool": pool.descriptor,
        "entropy": entropy,
        "gluing_profile": profile,
        "periodic": periodic,
        "periodic_profile": periodic_profile,
        "nonrecurrent": nonrecurrent,
        "stay_away": stay_away,
        "covering_time": covering,
        "ergodicity_probe": probe_result,
    }
    report = ClassificationReport(system.label, verdicts, checks, details, tables)
    report.print_summary()
    if report.failures:
        logger.error(f"{system.label}: failed checks {[c.id for c in report.failures]}")
    return report
