"""
Built-in systems used by the acceptance jobs
"""
from src.errors import InvalidSpec
from .spec import SystemSpec, build_system

ZOO = {
    "full2": {
        "kind": "sft",
        "label": "full2",
        "parameters": {"transitions": [[1, 1], [1, 1]]},
    },
    "full3": {
        "kind": "sft",
        "label": "full3",
        "parameters": {"transitions": [[1, 1, 1], [1, 1, 1], [1, 1, 1]]},
    },
    "golden": {
        "kind": "sft",
        "label": "golden",
        "parameters": {"transitions": [[1, 1], [1, 0]]},
    },
    "two_cycle": {
        "kind": "sft",
        "label": "two_cycle",
        "parameters": {"transitions": [[0, 1], [1, 0]]},
    },
    "disjoint_fixed": {
        "kind": "sft",
        "label": "disjoint_fixed",
        "parameters": {"transitions": [[1, 0], [0, 1]]},
    },
    "one_point": {
        "kind": "sft",
        "label": "one_point",
        "parameters": {"transitions": [[1]]},
    },
    "rotation_12_4": {
        "kind": "circle_grid",
        "label": "rotation_12_4",
        "parameters": {"grid_size": 12, "map": "rotation", "step": 4},
    },
    "rotation_7_3": {
        "kind": "circle_grid",
        "label": "rotation_7_3",
        "parameters": {"grid_size": 7, "map": "rotation", "step": 3},
    },
    "odometer_5": {
        "kind": "circle_grid",
        "label": "odometer_5",
        "parameters": {"map": "odometer", "depth": 5},
    },
    "odometer_8": {
        "kind": "circle_grid",
        "label": "odometer_8",
        "parameters": {"map": "odometer", "depth": 8},
    },
    "odometer_10": {
        "kind": "circle_grid",
        "label": "odometer_10",
        "parameters": {"map": "odometer", "depth": 10},
    },
    "square_16": {
        "kind": "circle_grid",
        "label": "square_16",
        "parameters": {"grid_size": 2 ** 16, "map": "square_map"},
    },
    "thue_morse": {
        "kind": "substitution_subshift",
        "label": "thue_morse",
        "parameters": {"rules": {"0": [0, 1], "1": [1, 0]}, "seed": 0},
    },
}


def zoo_spec(name):
    """SystemSpec of a named zoo entry"""
    if name not in ZOO:
        raise InvalidSpec(f"unknown zoo system {name!r}", "system")
    return SystemSpec.from_dict(ZOO[name])


def zoo_system(name, config=None):
    """Build a named zoo entry"""
    return build_system(zoo_spec(name), config)


def zoo_names():
    return sorted(ZOO)
