"""Unit conversion constants.

Internal units are SI everywhere (m, s, A, Ah, L). Imperial values are
accepted only at configuration boundaries and converted on the way in.
"""

INCH_M = 0.0254          # exact by definition
SQIN_SQM = 0.00064516    # exact: 0.0254 ** 2


def in_to_m(v: float) -> float:
    """Inches to meters."""
    return v * INCH_M


def m_to_in(v: float) -> float:
    """Meters to inches."""
    return v / INCH_M


def sqin_to_sqm(v: float) -> float:
    """Square inches to square meters."""
    return v * SQIN_SQM


def sqm_to_sqin(v: float) -> float:
    """Square meters to square inches."""
    return v / SQIN_SQM
