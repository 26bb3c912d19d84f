"""
Exact scale arithmetic shared by every metric in the toolkit

All distances are dyadic rationals 2^-j (or k/G on circle grids), so scales are
handled as Fractions and converted to window radii here.
"""
from fractions import Fraction

from src.errors import BadArgs


def as_fraction(value):
    """
    Parse a scale given as Fraction, int, float or "p/q" string

    Args:
        value: Scale value

    Returns:
        Fraction
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise BadArgs(f"Not a scale: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(1 << 40)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise BadArgs(f"Not a scale: {value!r}") from e
    raise BadArgs(f"Not a scale: {value!r}")


def fraction_to_str(value):
    """Render a Fraction as "p/q" (or "p" for integers)"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def shadow_radius(eps):
    """
    Agreement radius for ε-shadowing in a 2^-j metric

    d < eps holds iff the first disagreement index j satisfies 2^-j < eps, i.e. the
    sequences agree on every |i| with 2^-|i| >= eps.

    Args:
        eps: Positive scale

    Returns:
        Largest J with 2^-J >= eps, or -1 when eps > 1 (no constraint)
    """
    eps = as_fraction(eps)
    if eps <= 0:
        raise BadArgs(f"eps must be positive, got {eps}")
    if eps > 1:
        return -1
    j = 0
    while Fraction(1, 2 ** (j + 1)) >= eps:
        j += 1
    return j


def separation_depth(eps):
    """
    Number of disagreement indices that separate at scale eps

    d > eps holds iff the first disagreement index j has 2^-j > eps; those j are
    0..q-1 and q is returned.

    Args:
        eps: Positive scale

    Returns:
        q >= 0
    """
    eps = as_fraction(eps)
    if eps <= 0:
        raise BadArgs(f"eps must be positive, got {eps}")
    q = 0
    while Fraction(1, 2 ** q) > eps:
        q += 1
    return q


def dyadic_floor_exponent(value):
    """Smallest r with 2^-r <= value"""
    value = as_fraction(value)
    if value <= 0:
        raise BadArgs(f"value must be positive, got {value}")
    r = 0
    while Fraction(1, 2 ** r) > value:
        r += 1
    return r
