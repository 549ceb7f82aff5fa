import random
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import strategies as st

from affine_planner import _kernels
from affine_planner.actions import AbstractAction, AbstractBranch, AbstractEffect
from affine_planner.credal import Interval, StateSpace, UtilityFunction
from affine_planner.oracle import generators as gen

DATA = Path(__file__).parent / "data"


@pytest.fixture
def abc():
    return StateSpace(("a", "b", "c"))


@pytest.fixture
def lam_x(abc):
    """The two-branch worked action: move right with probability in [6/10, 8/10], else stay."""
    e1 = AbstractEffect({"a": "b", "b": "bc", "c": "c"})
    return AbstractAction(
        abc,
        [
            AbstractBranch(abc.all, (F(6, 10), F(8, 10)), e1),
            AbstractBranch(abc.all, (F(2, 10), F(4, 10)), AbstractEffect.identity(abc)),
        ],
    )


@pytest.fixture
def f_abc(abc):
    return UtilityFunction(abc, [0, 10, 4])


@pytest.fixture
def worked_path():
    return DATA / "worked.json"


@pytest.fixture(params=sorted(_kernels.BACKENDS))
def backend(request):
    """Run a test once per available kernel backend."""
    previous = _kernels.BACKEND
    _kernels.use(request.param)
    from affine_planner.oracle import vertices

    vertices._world_vertices.cache_clear()
    yield request.param
    _kernels.use(previous)
    vertices._world_vertices.cache_clear()


# -- hypothesis strategies ----------------------------------------------------------

small_fractions = st.builds(
    lambda d, n: F(min(n, d), d),
    st.sampled_from([1, 2, 3, 4, 5, 6, 8, 10, 12]),
    st.integers(min_value=0, max_value=12),
)


@st.composite
def intervals(draw):
    a, b = draw(small_fractions), draw(small_fractions)
    return Interval(min(a, b), max(a, b))


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)


SMALL = gen.Bounds(max_states=3, max_depth=2, max_arity=2, max_branches=2)
DEFAULT = gen.Bounds()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[n])
