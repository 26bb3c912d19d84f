"""
System specs: JSON documents {kind, label, parameters} and their validation
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from src.errors import InvalidSpec
from .grid import MAP_KINDS, METRIC_KINDS, GridCircleSystem
from .substitution import SubstitutionSubshift
from .symbolic import SymbolicSystem

logger = logging.getLogger(__name__)

KINDS = ("sft", "circle_grid", "product", "substitution_subshift")


@dataclass(frozen=True)
class SystemSpec:
    """Declarative description of a system"""

    kind: str
    parameters: dict = field(default_factory=dict)
    label: str = ""

    @classmethod
    def from_dict(cls, data, path=""):
        """
        Build a spec from a parsed JSON object

        Args:
            data: Dict with kind, parameters and optional label
            path: JSON path prefix used in error messages
        """
        prefix = f"{path}." if path else ""
        if not isinstance(data, dict):
            raise InvalidSpec("system spec must be an object", path or "$")
        kind = data.get("kind")
        if kind not in KINDS:
            raise InvalidSpec(f"kind must be one of {', '.join(KINDS)}, got {kind!r}", f"{prefix}kind")
        parameters = data.get("parameters", {})
        if not isinstance(parameters, dict):
            raise InvalidSpec("parameters must be an object", f"{prefix}parameters")
        label = data.get("label", "")
        if not isinstance(label, str):
            raise InvalidSpec("label must be a string", f"{prefix}label")
        spec = cls(kind=kind, parameters=parameters, label=label)
        spec.validate(path)
        return spec

    def to_dict(self):
        return {"kind": self.kind, "label": self.label, "parameters": self.parameters}

    def validate(self, path=""):
        """Check parameter shapes and types, naming the offending JSON position"""
        prefix = f"{path}.parameters" if path else "parameters"
        p = self.parameters
        if self.kind == "sft":
            _validate_matrix(p.get("transitions"), f"{prefix}.transitions")
            if not isinstance(p.get("two_sided", True), bool):
                raise InvalidSpec("two_sided must be a boolean", f"{prefix}.two_sided")
        elif self.kind == "circle_grid":
            _validate_grid(p, prefix)
        elif self.kind == "product":
            factors = p.get("factors")
            if not isinstance(factors, list) or len(factors) < 2:
                raise InvalidSpec("product needs a list of at least two factors", f"{prefix}.factors")
            for i, factor in enumerate(factors):
                sub = SystemSpec.from_dict(factor, f"{prefix}.factors[{i}]")
                if sub.kind != "sft":
                    raise InvalidSpec("product factors must be sft specs", f"{prefix}.factors[{i}].kind")
        else:
            rules = p.get("rules")
            if not isinstance(rules, dict) or not rules:
                raise InvalidSpec("rules must be a nonempty object", f"{prefix}.rules")
            for letter, image in rules.items():
                if not isinstance(image, list) or not all(isinstance(c, int) for c in image):
                    raise InvalidSpec("image must be a list of integers", f"{prefix}.rules.{letter}")
                if not image:
                    raise InvalidSpec("substitution must be non-erasing", f"{prefix}.rules.{letter}")
            for key in ("seed", "language_length", "word_length"):
                if key in p and (not isinstance(p[key], int) or p[key] < 0):
                    raise InvalidSpec(f"{key} must be a nonnegative integer", f"{prefix}.{key}")


def _validate_matrix(matrix, path):
    if not isinstance(matrix, list) or not matrix:
        raise InvalidSpec("transitions must be a nonempty list of rows", path)
    n = len(matrix)
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != n:
            raise InvalidSpec(f"row must have {n} entries", f"{path}[{i}]")
        for j, value in enumerate(row):
            if value not in (0, 1) or isinstance(value, bool):
                raise InvalidSpec("entries must be 0 or 1", f"{path}[{i}][{j}]")
        if not any(row):
            raise InvalidSpec("row of zeros (stranded symbol)", f"{path}[{i}]")
    for j in range(n):
        if not any(matrix[i][j] for i in range(n)):
            raise InvalidSpec("column of zeros (stranded symbol)", f"{path}[*][{j}]")


def _validate_grid(p, prefix):
    map_kind = p.get("map")
    if map_kind not in MAP_KINDS:
        raise InvalidSpec(f"map must be one of {', '.join(MAP_KINDS)}", f"{prefix}.map")
    if "metric" in p and p["metric"] not in METRIC_KINDS:
        raise InvalidSpec(f"metric must be one of {', '.join(METRIC_KINDS)}", f"{prefix}.metric")
    if map_kind == "odometer":
        depth = p.get("depth")
        if not isinstance(depth, int) or depth < 1:
            raise InvalidSpec("odometer depth must be a positive integer", f"{prefix}.depth")
        if "grid_size" in p and p["grid_size"] != 2 ** depth:
            raise InvalidSpec("odometer grid_size must equal 2^depth", f"{prefix}.grid_size")
        if p.get("metric", "two_adic") != "two_adic":
            raise InvalidSpec("odometer requires the two_adic metric", f"{prefix}.metric")
        return
    grid_size = p.get("grid_size")
    if not isinstance(grid_size, int) or isinstance(grid_size, bool) or grid_size < 1:
        raise InvalidSpec("grid_size must be a positive integer", f"{prefix}.grid_size")
    if map_kind == "rotation" and not isinstance(p.get("step", 1), int):
        raise InvalidSpec("step must be an integer", f"{prefix}.step")


def build_system(spec, config=None):
    """
    Construct the system a spec describes

    Args:
        spec: SystemSpec or plain dict
        config: Optional config dict (systems section supplies substitution defaults)

    Returns:
        SymbolicSystem, GridCircleSystem or SubstitutionSubshift
    """
    if isinstance(spec, dict):
        spec = SystemSpec.from_dict(spec)
    else:
        spec.validate()
    p = spec.parameters
    systems_config = (config or {}).get("systems", {}).get("substitution", {})

    if spec.kind == "sft":
        system = SymbolicSystem(p["transitions"], p.get("two_sided", True), spec.label)
    elif spec.kind == "circle_grid":
        if p["map"] == "odometer":
            grid_size = 2 ** p["depth"]
        else:
            grid_size = p["grid_size"]
        system = GridCircleSystem(grid_size, p["map"], p.get("step", 1), p.get("metric"), spec.label)
    elif spec.kind == "product":
        matrices = [np.array(f["parameters"]["transitions"], dtype=int) for f in p["factors"]]
        sides = {f["parameters"].get("two_sided", True) for f in p["factors"]}
        if len(sides) != 1:
            raise InvalidSpec("product factors must share sidedness", "parameters.factors")
        product = matrices[0]
        for matrix in matrices[1:]:
            product = np.kron(product, matrix)
        system = SymbolicSystem(product.tolist(), sides.pop(), spec.label or "product")
    else:
        system = SubstitutionSubshift(
            p["rules"],
            seed=p.get("seed", 0),
            language_length=p.get("language_length", systems_config.get("language_length", 64)),
            word_length=p.get("word_length", systems_config.get("word_length", 16384)),
            label=spec.label,
        )
    logger.debug(f"Built {system.kind} system {system.label}")
    return system


def load_spec(path):
    """
    Read a system spec from a JSON file

    Raises:
        InvalidSpec: Unreadable JSON or invalid contents
    """
    path = Path(path)
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidSpec(f"invalid JSON at line {e.lineno} column {e.colno}", str(path)) from e
    return SystemSpec.from_dict(data)
