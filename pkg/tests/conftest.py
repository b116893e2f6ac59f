from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rationals(max_num: int = 10**4, max_den: int = 10**4):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


def padic_rationals(p: int, height: int = 200, max_exp: int = 4):
    """Rationals whose denominators carry powers of p, so non-integral inputs are common."""
    return st.builds(
        lambda n, d, e: Fraction(n, d * p**e),
        st.integers(-height, height),
        st.integers(1, height),
        st.integers(0, max_exp),
    )
