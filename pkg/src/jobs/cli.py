"""
Batch job runner: one JSON job file in, report.json and tables/*.csv out
"""
import json
import logging
import sys
import traceback
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import pandas as pd

from src.classify import classify, stay_away_pair
from src.entropy import (
    dichotomy_construction,
    entropy_estimate,
    periodic_counts,
    sft_entropy_oracle,
    spec_bound_check,
)
from src.errors import (
    GluingFailed,
    GluingToolkitError,
    InvalidSpec,
    JobValidationError,
    NotAnSft,
)
from src.gluing import (
    connector_growth,
    decide_gluing_sft,
    gluing_profile,
    periodic_gluing_sft,
    sft_stabilization,
    specification_profile_sft,
)
from src.shadowing import Gap, OrbitSequence, find_gap_and_shadow, find_shadow_sft, verify_shadow
from src.systems import POOL_KINDS, SystemSpec, build_system, load_spec, pool_from_descriptor, zoo_spec
from src.utils import as_fraction, section, shadow_radius, write_json, write_table

logger = logging.getLogger(__name__)

COMMANDS = ("classify", "entropy", "gluing", "dichotomy", "shadow", "periodic")
GLUING_VARIANTS = ("gluing", "periodic", "specification", "stabilization", "connector_growth")
ENTROPY_VARIANTS = ("estimate", "spec_bound")

# parameters that must be positive integers when present
POSITIVE_INTS = (
    "n_max", "L", "k", "M_max", "horizon", "n", "r", "slack",
    "enumeration_limit", "repeats", "samples", "length",
)

EXIT_OK, EXIT_INVALID, EXIT_CHECK_FAILED, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass
class JobConfig:
    """
    A parsed job file

    system is a zoo name, an inline spec object, or {"file": path} resolved
    relative to the job file.
    """

    name: str
    system: object
    command: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    base_dir: str = "."

    @classmethod
    def from_dict(cls, data, base_dir="."):
        if not isinstance(data, dict):
            raise JobValidationError("job must be a JSON object", "$")
        command = data.get("command")
        if command not in COMMANDS:
            raise JobValidationError(f"command must be one of {', '.join(COMMANDS)}, got {command!r}", "command")
        if "system" not in data:
            raise JobValidationError("system is required", "system")
        params = data.get("params", {})
        if not isinstance(params, dict):
            raise JobValidationError("params must be an object", "params")
        seed = data.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise JobValidationError(f"seed must be an integer, got {seed!r}", "seed")
        job = cls(
            name=str(data.get("name", command)),
            system=data["system"],
            command=command,
            params=params,
            seed=seed,
            base_dir=str(base_dir),
        )
        job.validate()
        return job

    @classmethod
    def load(cls, path):
        path = Path(path)
        try:
            with open(path, "r") as f:
                data = json.load(f)
        except FileNotFoundError as e:
            raise JobValidationError(f"job file not found: {path}", "job") from e
        except json.JSONDecodeError as e:
            raise JobValidationError(f"invalid JSON at line {e.lineno} column {e.colno}", "job") from e
        return cls.from_dict(data, path.parent)

    def validate(self):
        for key in POSITIVE_INTS:
            if key not in self.params:
                continue
            value = self.params[key]
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise JobValidationError(f"{key} must be a positive integer, got {value!r}", f"params.{key}")
        for key in ("eps", "eps_list"):
            if key not in self.params:
                continue
            values = self.params[key] if key == "eps_list" else [self.params[key]]
            if not isinstance(values, list) or not values:
                raise JobValidationError(f"{key} must be a nonempty list", f"params.{key}")
            for value in values:
                try:
                    eps = as_fraction(value)
                except (TypeError, ValueError, ZeroDivisionError) as e:
                    raise JobValidationError(f"{key} entry {value!r} is not a number", f"params.{key}") from e
                if eps <= 0:
                    raise JobValidationError(f"{key} entries must be positive, got {value!r}", f"params.{key}")
        pool = self.params.get("pool")
        if pool is not None:
            kind = pool.get("kind", "default") if isinstance(pool, dict) else pool
            if kind not in POOL_KINDS:
                raise JobValidationError(f"pool must name one of {', '.join(POOL_KINDS)}, got {pool!r}", "params.pool")
        variants = {"gluing": GLUING_VARIANTS, "entropy": ENTROPY_VARIANTS}.get(self.command)
        variant = self.params.get("variant")
        if variant is not None and (variants is None or variant not in variants):
            allowed = ", ".join(variants) if variants else "none"
            raise JobValidationError(f"variant {variant!r} not allowed for {self.command} ({allowed})", "params.variant")

    def spec(self):
        """Resolve the system field to a SystemSpec"""
        if isinstance(self.system, str):
            return zoo_spec(self.system)
        if isinstance(self.system, dict) and "file" in self.system:
            return load_spec(Path(self.base_dir) / self.system["file"])
        return SystemSpec.from_dict(self.system, "system")

    def to_dict(self):
        return {
            "name": self.name,
            "system": self.system,
            "command": self.command,
            "params": self.params,
            "seed": self.seed,
        }


def _eps(params, default="1/2"):
    if "eps" in params:
        return as_fraction(params["eps"])
    if "r" in params:
        return Fraction(1, 2 ** params["r"])
    return as_fraction(default)


def _radius(params):
    if "r" in params:
        return params["r"]
    return max(shadow_radius(_eps(params)), 0)


def _pool(system, job, config):
    """The pool named by params.pool, or the default pool for the system"""
    return pool_from_descriptor(system, job.params.get("pool"), config, job.seed)


def _job_config(config, job):
    """Config with the job's seed applied to the sections that sample"""
    merged = {name: dict(values) for name, values in (config or {}).items() if isinstance(values, dict)}
    merged.setdefault("gluing", {})["seed"] = job.seed
    return merged


def run_classify(system, job, config, threads):
    params = job.params
    report = classify(
        system,
        config,
        pool=_pool(system, job, config),
        threads=threads,
        eps=as_fraction(params["eps"]) if "eps" in params else None,
        L=params.get("L"),
        k=params.get("k"),
        M_max=params.get("M_max"),
        horizon=params.get("horizon"),
    )
    return report.to_dict(), report.tables, bool(report.failures)


def run_entropy(system, job, config, threads):
    params = job.params
    entropy_config = section(config, "entropy")
    if params.get("variant") == "spec_bound":
        result = spec_bound_check(
            system,
            params.get("r"),
            params.get("L", 4),
            params.get("k", 2),
            params.get("M_max", 64),
            config,
        )
        return result, {}, result["holds"] is False
    eps_list = params.get("eps_list", entropy_config.get("eps_list", ["1/2", "1/4"]))
    n_max = params.get("n_max", entropy_config.get("n_max", 12))
    report = entropy_estimate(system, eps_list, n_max, config=config)
    result = report.to_dict()
    if report.oracle is not None:
        result["oracle_gap"] = abs(report.h_estimate - report.oracle.midpoint)
    return result, {"entropy": report.table}, False


def run_gluing(system, job, config, threads):
    params = job.params
    gluing_config = section(config, "gluing")
    variant = params.get("variant", "gluing")
    L = params.get("L", gluing_config.get("length_cap", 4))
    k = params.get("k", gluing_config.get("rank_cap", 3))
    M_max = params.get("M_max", section(config, "shadowing").get("max_gap", 16))
    lengths = params.get("lengths", [4, 8, 16, 32])
    if variant == "connector_growth":
        result = connector_growth(system, _eps(params), lengths, threads)
        return result, {}, False
    if variant != "gluing" and not system.is_sft:
        raise NotAnSft(f"{system.label}: the {variant} variant needs a shift of finite type")
    r = _radius(params)
    if variant == "stabilization":
        result = sft_stabilization(system, r, lengths, params.get("k", 2), config)
        return result, {}, False
    if variant == "specification":
        profile = specification_profile_sft(system, r, L, k, M_max, params.get("slack"), config)
        return profile.to_dict(), {}, False
    if variant == "periodic":
        profile = periodic_gluing_sft(system, r, L, k, config, threads)
    elif system.is_sft:
        profile = decide_gluing_sft(system, r, L, k, config, threads)
    else:
        profile = gluing_profile(
            system, _eps(params), L, k, _pool(system, job, config), M_max, config, threads
        )
    tables = {"gluing": profile.per_instance} if profile.per_instance is not None else {}
    return profile.to_dict(), tables, False


def run_dichotomy(system, job, config, threads):
    params = job.params
    dichotomy_config = section(config, "dichotomy")
    eps = _eps(params)
    horizon = params.get("horizon", dichotomy_config.get("horizon", 64))
    pool = _pool(system, job, config)
    if "x" in params and "y" in params:
        x = system.parse_point(params["x"])
        y = system.parse_point(params["y"])
    else:
        pair = stay_away_pair(system, eps, horizon, pool)
        if pair is None:
            return {"outcome": "no stay-away pair in pool", "pool": pool.descriptor}, {}, False
        x, y = pair.x, pair.y
    try:
        result = dichotomy_construction(
            system, x, y, eps,
            n=params.get("n", dichotomy_config.get("n", 3)),
            M_max=params.get("M_max", 64),
            pool=pool,
            config=config,
            horizon=horizon,
        )
    except GluingFailed as e:
        # an expected negative outcome on systems without gluing
        logger.warning(f"{system.label}: {e}")
        return {"outcome": "GluingFailed", "message": str(e), "instance": e.instance}, {}, False
    data = result.to_dict()
    data["outcome"] = "constructed"
    failed = not result.verified
    if system.is_sft:
        oracle = sft_entropy_oracle(system)
        data["oracle"] = oracle
        data["bound_below_oracle"] = result.bound <= oracle.upper + 1e-9
        failed = failed or not data["bound_below_oracle"]
    witnesses = pd.DataFrame({
        "label": result.labels,
        "gaps": [list(g) for g in result.gaps],
        "point": [system.point_to_json(p) for p in result.separated.points],
    })
    return data, {"witnesses": witnesses}, failed


def run_shadow(system, job, config, threads):
    params = job.params
    if "C" not in params:
        raise JobValidationError("shadow jobs need an orbit sequence C", "params.C")
    C = OrbitSequence.from_json(system, params["C"])
    eps = _eps(params)
    if "z" in params:
        if "g" not in params:
            raise JobValidationError("verifying a given z needs the gap g", "params.g")
        verdict = verify_shadow(system, C, Gap(tuple(params["g"])), system.parse_point(params["z"]), eps)
        return {"mode": "verify", "verdict": verdict}, {}, False
    if "g" in params and system.is_sft:
        search = find_shadow_sft(system, C, Gap(tuple(params["g"])), _radius(params))
        return {"mode": "search", "result": search.to_dict(system)}, {}, False
    M_max = params.get("M_max", section(config, "shadowing").get("max_gap", 16))
    found = find_gap_and_shadow(system, C, eps, M_max, None if system.is_sft else _pool(system, job, config))
    if found is None:
        return {"mode": "gap search", "gap": None, "M_max": M_max}, {}, False
    gap, z = found
    return {"mode": "gap search", "gap": gap, "z": system.point_to_json(z), "M_max": M_max}, {}, False


def run_periodic(system, job, config, threads):
    params = job.params
    entropy_config = section(config, "entropy")
    if not system.is_sft:
        raise NotAnSft(f"{system.label}: periodic counts need a shift of finite type")
    n_max = params.get("n_max", entropy_config.get("n_max", 12))
    limit = params.get("enumeration_limit", entropy_config.get("enumeration_limit", 12))
    tolerance = params.get("tolerance", section(config, "classify").get("tolerance", 0.05))
    periodic = periodic_counts(system, n_max, limit)
    entropy = entropy_estimate(system, entropy_config.get("eps_list", ["1/2", "1/4"]), n_max, config=config)
    holds = entropy.h_estimate <= periodic.p_hat + tolerance
    result = {
        "periodic": periodic,
        "h_estimate": entropy.h_estimate,
        "tolerance": tolerance,
        "h_below_p": holds,
    }
    return result, {"periodic": periodic.table}, not holds


RUNNERS = {
    "classify": run_classify,
    "entropy": run_entropy,
    "gluing": run_gluing,
    "dichotomy": run_dichotomy,
    "shadow": run_shadow,
    "periodic": run_periodic,
}


def _error(e, stream=None):
    payload = {"error": str(e), "type": type(e).__name__, "field": getattr(e, "field", None) or getattr(e, "path", None)}
    stream = stream or sys.stderr
    stream.write(json.dumps(payload, sort_keys=True) + "\n")
    return payload


def run(job, out_dir, ci=False, threads=1, config=None):
    """
    Execute one job and write its artifacts

    Args:
        job: JobConfig, or a path to a job file
        out_dir: Directory for report.json and tables/
        ci: Treat theorem cross-check failures as fatal (exit 2)
        threads: Worker count (changes speed only)
        config: Config dict

    Returns:
        Exit status: 0 success, 1 validation error, 2 failed check with ci, 3 internal error
    """
    out_dir = Path(out_dir)
    try:
        if not isinstance(job, JobConfig):
            job = JobConfig.load(job)
        job_config = _job_config(config, job)
        system = build_system(job.spec(), job_config)
        logger.info("=" * 60)
        logger.info(f"Job {job.name}: {job.command} on {system.label}")
        logger.info("=" * 60)
        result, tables, failed = RUNNERS[job.command](system, job, job_config, threads)
    except (JobValidationError, InvalidSpec) as e:
        _error(e)
        return EXIT_INVALID
    except GluingToolkitError as e:
        logger.error(f"Job rejected: {e}")
        _error(e)
        return EXIT_INVALID
    except Exception as e:
        logger.error(f"Internal error: {e}")
        logger.debug(traceback.format_exc())
        _error(e)
        return EXIT_INTERNAL

    report = {
        "job": job.to_dict(),
        "seed": job.seed,
        "system": system.describe(),
        "command": job.command,
        "result": result,
        "checks_failed": failed,
    }
    write_json(report, out_dir / "report.json")
    for name, table in tables.items():
        write_table(table, out_dir / "tables" / f"{name}.csv")
    logger.info(f"Wrote {out_dir / 'report.json'} and {len(tables)} tables")
    if failed:
        logger.warning(f"Job {job.name}: cross-checks failed")
        if ci:
            return EXIT_CHECK_FAILED
    return EXIT_OK
