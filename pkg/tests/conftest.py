import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from mobius import generators as G

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def posets(draw, max_size=7):
    rng = random.Random(draw(seeds))
    return G.random_poset(rng, G.PosetConfig(max_size=max_size, density=draw(st.sampled_from([0.2, 0.4, 0.7]))))


@st.composite
def digraphs(draw):
    return G.random_digraph(random.Random(draw(seeds)))


@st.composite
def path_categories(draw):
    cfg = G.DagConfig(edge_prob=draw(st.sampled_from([0.3, 0.5])), max_morphisms=80)
    return G.random_path_category(random.Random(draw(seeds)), cfg)


@st.composite
def graded_categories(draw):
    return G.random_graded_category(random.Random(draw(seeds)), max_elements=5)


# acceptance lines, filled in by tests/test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])


@pytest.fixture(scope="session")
def acceptance():
    return ACCEPTANCE
