"""Unit conversions between the SI internals and the mm / GPa / degree /
gram / mN*m / N/mm reporting convention.

Everything inside the package is SI (m, Pa, kg, rad, N/m, N*m).  All
conversions live here so a unit bug has exactly one place to hide.
"""

import math


def mm_to_m(x):
    return x * 1e-3


def m_to_mm(x):
    return x * 1e3


def gpa_to_pa(x):
    return x * 1e9


def pa_to_gpa(x):
    return x * 1e-9


def deg_to_rad(x):
    return math.radians(x)


def rad_to_deg(x):
    return math.degrees(x)


def g_cm3_to_kg_m3(x):
    return x * 1e3


def kg_m3_to_g_cm3(x):
    return x * 1e-3


def kg_to_g(x):
    return x * 1e3


def g_to_kg(x):
    return x * 1e-3


def npm_to_npmm(x):
    """N/m -> N/mm."""
    return x * 1e-3


def npmm_to_npm(x):
    """N/mm -> N/m."""
    return x * 1e3


def nm_to_mnm(x):
    """N*m -> mN*m."""
    return x * 1e3


def mnm_to_nm(x):
    """mN*m -> N*m."""
    return x * 1e-3
