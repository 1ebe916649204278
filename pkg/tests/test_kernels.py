import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kleenewand import _kernels_py, kernels

compiled = pytest.importorskip("kleenewand._kernels", reason="compiled kernels not built")


@st.composite
def table_pair(draw, max_n=40):
    n = draw(st.integers(0, max_n))
    m = draw(st.integers(1, max_n))
    f = tuple(draw(st.lists(st.integers(-1, m - 1), min_size=n, max_size=n)))
    g = tuple(draw(st.lists(st.integers(-1, 5), min_size=m, max_size=m)))
    return f, g


@st.composite
def wand_tables(draw, max_n=40):
    n = draw(st.integers(0, max_n))
    owner = draw(st.lists(st.sampled_from("nfg"), min_size=n, max_size=n))
    f = tuple(draw(st.integers(0, n - 1)) if o == "f" else -1 for o in owner)
    g = tuple(draw(st.integers(0, 3)) if o == "g" else -1 for o in owner)
    return f, g


@pytest.mark.skipif(os.environ.get("KLEENEWAND_PURE") == "1", reason="pure backend forced")
def test_selected_backend_is_compiled():
    assert kernels.BACKEND == "cython"
    assert kernels.wand is compiled.wand


@given(table_pair())
def test_compose_agrees(fg):
    f, g = fg
    assert compiled.compose(f, g) == _kernels_py.compose(f, g)


@given(table_pair())
def test_restrict_agrees(fg):
    assert compiled.restrict(fg[0]) == _kernels_py.restrict(fg[0])


@given(st.data())
def test_union_agrees(data):
    n = data.draw(st.integers(0, 30))
    f = tuple(data.draw(st.lists(st.integers(-1, 4), min_size=n, max_size=n)))
    g = tuple(data.draw(st.lists(st.integers(-1, 4), min_size=n, max_size=n)))
    assert compiled.union(f, g) == _kernels_py.union(f, g)


@given(wand_tables())
def test_wand_agrees(fg):
    assert compiled.wand(*fg) == _kernels_py.wand(*fg)


def test_wand_on_long_chain():
    n = 2000
    f = tuple(range(1, n)) + (-1,)
    g = (-1,) * (n - 1) + (0,)
    assert compiled.wand(f, g) == _kernels_py.wand(f, g) == (0,) * n


def test_pure_backend_can_be_forced():
    env = dict(os.environ, KLEENEWAND_PURE="1")
    out = subprocess.run([sys.executable, "-c",
                          "from kleenewand import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
