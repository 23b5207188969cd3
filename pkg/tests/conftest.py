import os
import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from sft2d.graph import Graph2D, load_graph
from sft2d.matrices import BinaryMatrix

sys.path.insert(0, os.path.dirname(__file__))

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
FIXTURE_NAMES = [f"ex{i}" for i in range(1, 8)]

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def fixture_graph(name: str) -> Graph2D:
    return load_graph(FIXTURES / f"{name}.json")


@pytest.fixture(scope="session")
def fx():
    return {name: fixture_graph(name) for name in FIXTURE_NAMES}


@st.composite
def binary_matrices(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=n, max_size=n))
    return BinaryMatrix.from_rows(rows)


@st.composite
def graphs(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n))
    mat = st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=n, max_size=n)
    return Graph2D.from_matrices(draw(mat), draw(mat))
