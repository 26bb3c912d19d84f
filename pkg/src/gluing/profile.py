"""
Gluing and specification profiles
"""
from dataclasses import dataclass, field
from fractions import Fraction

import pandas as pd

EXCEEDS = "exceeds M_max"


@dataclass
class GluingProfile:
    """
    Largest minimal max-gap over an instance family

    M_required is None when some instance needs more than M_max; exact says whether
    that negative answer is a proof (shifts of finite type) or only a search bound.
    """

    system: str
    epsilon: Fraction
    segment_length_cap: int
    rank_cap: int
    pool_descriptor: str
    M_required: int = None
    M_max: int = None
    per_instance: pd.DataFrame = None
    exact: bool = False
    stabilized: bool = None
    certificate: dict = None
    variant: str = "gluing"
    extra: dict = field(default_factory=dict)

    @property
    def finite(self):
        return self.M_required is not None

    def to_dict(self):
        table = self.per_instance if self.per_instance is not None else pd.DataFrame()
        return {
            "system": self.system,
            "variant": self.variant,
            "epsilon": self.epsilon,
            "segment_length_cap": self.segment_length_cap,
            "rank_cap": self.rank_cap,
            "pool": self.pool_descriptor,
            "M_required": self.M_required if self.finite else EXCEEDS,
            "M_max": self.M_max,
            "exact": self.exact,
            "stabilized": self.stabilized,
            "certificate": self.certificate,
            "instances": len(table),
            "extra": self.extra,
        }


@dataclass
class SpecificationProfile:
    """Least M such that every tested gap tuple with entries in [M, M + slack] shadows"""

    system: str
    epsilon: Fraction
    M_uniform: int = None
    M_max: int = None
    slack: int = None
    segment_length_cap: int = None
    rank_cap: int = None
    instances: int = 0
    certificate: dict = None

    @property
    def finite(self):
        return self.M_uniform is not None

    def to_dict(self):
        return {
            "system": self.system,
            "epsilon": self.epsilon,
            "M_uniform": self.M_uniform if self.finite else EXCEEDS,
            "M_max": self.M_max,
            "slack": self.slack,
            "segment_length_cap": self.segment_length_cap,
            "rank_cap": self.rank_cap,
            "instances": self.instances,
            "certificate": self.certificate,
        }


def instance_table(rows):
    """Per-instance DataFrame with a fixed column order"""
    columns = ["instance", "rank", "lengths", "min_max_gap", "gap"]
    df = pd.DataFrame(rows, columns=columns)
    return df
