from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from robustlat.seqspace import Q, SeqVec

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_q = st.fractions(min_value=-4, max_value=4, max_denominator=16).map(lambda f: Q(f.numerator, f.denominator))


@st.composite
def seqvecs(draw, max_len: int = 8, values=small_q):
    coords = draw(st.dictionaries(st.integers(0, max_len - 1), values, max_size=max_len))
    return SeqVec(coords)


def as_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
