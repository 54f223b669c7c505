import json

import numpy as np
import pytest

from nilquiver.core.exact_linalg import PrimeField, RationalField
from nilquiver.models.quiver import Arrow, DimFiltration, Quiver
from nilquiver.services.a2_service import A2

# x --a--> y
A2_QUIVER = A2

# one loop
JORDAN = Quiver(vertices=("1",), arrows=(Arrow("a", "1", "1"),))

# 1 ==> 2
KRONECKER = Quiver(vertices=("1", "2"), arrows=(Arrow("l", "1", "2"), Arrow("m", "1", "2")))

# 1 <-- 2 --> 3
RUNNING = Quiver(vertices=("1", "2", "3"), arrows=(Arrow("a", "2", "1"), Arrow("c", "2", "3")))

# 1 -> 2 -> 3
A3 = Quiver(vertices=("1", "2", "3"), arrows=(Arrow("a", "1", "2"), Arrow("b", "2", "3")))

# D4 with a sink in the middle
D4 = Quiver(
    vertices=("1", "2", "3", "4"),
    arrows=(Arrow("a", "1", "3"), Arrow("b", "2", "3"), Arrow("c", "4", "3")),
)

# 1 <=> 2, loops at 2 and 3, 2 -> 3; separation quiver of type E_6
E6_SEPARATING = Quiver(
    vertices=("1", "2", "3"),
    arrows=(
        Arrow("a", "1", "2"),
        Arrow("b", "2", "1"),
        Arrow("c", "2", "2"),
        Arrow("d", "2", "3"),
        Arrow("e", "3", "3"),
    ),
)

SUITE = {
    "A2": A2_QUIVER,
    "Jordan": JORDAN,
    "Kronecker": KRONECKER,
    "D4": D4,
    "E6": E6_SEPARATING,
}


@pytest.fixture
def fp():
    return PrimeField(1_000_003)


@pytest.fixture
def f3():
    return PrimeField(3)


@pytest.fixture
def qq():
    return RationalField()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def quiver_json(q: Quiver) -> dict:
    return {
        "vertices": list(q.vertices),
        "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in q.arrows],
    }


@pytest.fixture
def write_quiver(tmp_path):
    """Write a quiver to tmp_path and return the file path as a string."""

    def _write(q: Quiver, name: str = "quiver.json") -> str:
        path = tmp_path / name
        path.write_text(json.dumps(quiver_json(q)), encoding="utf-8")
        return str(path)

    return _write


def random_filtration(rng, q: Quiver, s: int, step: int = 2) -> DimFiltration:
    """Weakly increasing dd with increments drawn from 0..step."""
    increments = rng.integers(0, step + 1, size=(s, len(q.vertices)))
    totals = increments.cumsum(axis=0)
    return DimFiltration(layers=tuple(tuple(int(x) for x in row) for row in totals))
