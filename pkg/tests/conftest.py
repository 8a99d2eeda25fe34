import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pdmark.fragment import Bounds, explore
from pdmark.gadget import build_gadget
from pdmark.pda import builtin_pda, config


@pytest.fixture(scope="session")
def ex1():
    return builtin_pda("example1")


@pytest.fixture(scope="session")
def dead():
    return builtin_pda("example1-dead")


@pytest.fixture(scope="session")
def gadget():
    return build_gadget()


@pytest.fixture(scope="session")
def ex1_frag5(ex1):
    # height 3 keeps every expanded vertex's shortest path inside the fragment
    return explore(ex1, [config("q_in")], Bounds(5, 3))


@pytest.fixture(scope="session")
def gadget_frag(gadget):
    return explore(gadget, [config("q_push", "312"), config("q_push", "222", "132")], Bounds(3, 4))
