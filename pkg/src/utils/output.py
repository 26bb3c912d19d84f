"""
Report serialization: JSON documents and CSV tables
"""
import json
import logging
import math
from fractions import Fraction
from pathlib import Path

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)


def to_jsonable(obj):
    """
    Convert report objects to plain JSON types

    Fractions become "p/q" strings, floats are rounded to 12 significant digits so
    reruns produce identical bytes, objects exposing to_dict() are expanded.
    """
    from .dyadic import fraction_to_str

    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, Fraction):
        return fraction_to_str(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isinf(value) or math.isnan(value):
            return str(value)
        return float(f"{value:.12g}")
    if hasattr(obj, "to_dict") and not isinstance(obj, pd.DataFrame):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, pd.DataFrame):
        return to_jsonable(obj.to_dict(orient="records"))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = list(obj)
        if isinstance(obj, (set, frozenset)):
            items = sorted(items, key=repr)
        return [to_jsonable(v) for v in items]
    return str(obj)


def write_json(data, path):
    """Write a JSON document with sorted keys"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(to_jsonable(data), f, indent=2, sort_keys=True)
        f.write("\n")
    logger.debug(f"Wrote {path}")
    return path


def write_table(df, path):
    """Write a DataFrame as CSV (Fractions rendered as p/q)"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df = df.copy()
    for column in df.columns:
        df[column] = df[column].map(
            lambda v: to_jsonable(v) if isinstance(v, (Fraction, tuple, list, dict)) else v
        )
    df.to_csv(path, index=False, float_format="%.12g")
    logger.debug(f"Wrote {path} ({len(df)} rows)")
    return path
