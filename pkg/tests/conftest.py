import random
from pathlib import Path

import pytest

from dehncolor import build, diagram

DATA = Path(__file__).resolve().parent.parent / "data" / "diagrams"


def load(name):
    return diagram.load(DATA / f"{name}.dg")


@pytest.fixture
def circle():
    return load("circle")


@pytest.fixture
def trefoil():
    return load("trefoil")


@pytest.fixture
def theta():
    return load("theta")


@pytest.fixture
def k4():
    return load("k4")


def small_diagrams(count, seed=0, max_crossings=4, max_regions=6):
    """Connected diagrams (some with a 2-valent vertex) of bounded size."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = build.random_knotlike(rng.randrange(0, max_crossings + 1), rng,
                                  width=rng.choice([1, 2]))
        if d.num_regions <= max_regions:
            out.append(d)
    return out


def _match(d, e, a, b):
    """Extend the dart map a -> b along arcs and rotations; None on conflict."""
    fwd, back = {}, {}
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x in fwd or y in back:
            if fwd.get(x) != y or back.get(y) != x:
                return None
            continue
        nx, i = d.dart_home[x]
        ny, j = e.dart_home[y]
        if nx.kind != ny.kind or nx.valency != ny.valency:
            return None
        if nx.kind == diagram.CROSSING and (nx.over - i) % 2 != (ny.over - j) % 2:
            return None
        fwd[x], back[y] = y, x
        n = nx.valency
        stack.append((nx.rotation[(i + 1) % n], ny.rotation[(j + 1) % n]))
        stack.append((d.partner[x], e.partner[y]))
    return fwd


def isomorphic(d, e):
    """Same rotation system and crossing data up to renaming (connected diagrams)."""
    if len(d.darts) != len(e.darts) or len(d.nodes) != len(e.nodes):
        return False
    if not d.darts:
        return True
    a = min(d.darts)
    return any(_match(d, e, a, b) is not None and len(_match(d, e, a, b)) == len(d.darts)
               for b in e.darts)


# acceptance criteria report lines, printed after the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
