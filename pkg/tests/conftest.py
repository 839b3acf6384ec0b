import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from simptree.complex import parse_complex  # noqa: E402

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name: str):
    return parse_complex((FIXTURES / name).read_text())


def load_expect(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text())


@pytest.fixture
def tails():
    return parse_complex("xy, xz, yz, yu, zt")


@pytest.fixture
def chain():
    return parse_complex("xyz, yzu, uv")


@pytest.fixture
def fork():
    return parse_complex("xyu, xyz, xzv")


@pytest.fixture
def square():
    # F1..F4 = ab, bc, cd, da form a 4-cycle; G = ce hangs off c
    return parse_complex("ab, bc, cd, da, ce")


@pytest.fixture
def triangle():
    return parse_complex("xy, yz, zx")
