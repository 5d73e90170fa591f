import json
from importlib import resources

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from symdeg import EpsilonContext, Interval, RepClass, SymmetricQuiver, compatible_orientations
from symdeg.rep import epsilon_summand

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ALL_QUIVERS = [q for n in range(2, 7) for q in compatible_orientations(n)]

def rep(n, *pairs):
    """RepClass from (i, j) pairs, repeated pairs adding up."""
    return RepClass.of(n, *(Interval(i, j) for i, j in pairs))

def quivers(max_n=6):
    return st.sampled_from([q for q in ALL_QUIVERS if q.n <= max_n])

@st.composite
def classes(draw, quiver, max_summands=5):
    ivs = quiver.intervals
    picks = draw(st.lists(st.sampled_from(ivs), max_size=max_summands))
    return RepClass.of(quiver.n, *picks)

@st.composite
def epsilon_classes(draw, ctx, max_pieces=3):
    pieces = draw(st.lists(st.sampled_from(ctx.quiver.intervals), max_size=max_pieces))
    m = RepClass.zero(ctx.n)
    for u in pieces:
        m = m + epsilon_summand(ctx, u)
    return m

@st.composite
def contexts(draw, max_n=6):
    return EpsilonContext(draw(quivers(max_n)), draw(st.sampled_from([1, -1])))

def load_fixtures():
    root = resources.files("symdeg") / "fixtures"
    return [json.loads((root / f"worked-{k}.json").read_text()) for k in range(1, 7)]

@pytest.fixture(scope="session")
def fixtures():
    return load_fixtures()

A2 = SymmetricQuiver.parse("A2:>")
A3 = SymmetricQuiver.parse("A3:>>")
A4 = SymmetricQuiver.parse("A4:>>>")
A4_ALT = SymmetricQuiver.parse("A4:><>")
A5 = SymmetricQuiver.parse("A5:>>>>")
A5_ZIG = SymmetricQuiver.parse("A5:<>><")

