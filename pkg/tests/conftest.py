from __future__ import annotations

import random
import sys

from hypothesis import strategies as st

from shortbrauer.pairpart import PairPartition, vertex_at


def matching_from_order(n: int, m: int, order) -> PairPartition:
    """Pair consecutive entries of a permutation of the disk positions."""
    pairs = [(vertex_at(order[k], n, m), vertex_at(order[k + 1], n, m)) for k in range(0, len(order), 2)]
    return PairPartition(n, m, pairs)


@st.composite
def diagrams(draw, n: int | None = None, m: int | None = None, max_side: int = 5):
    if n is None:
        n = draw(st.integers(0, max_side))
    if m is None:
        m = draw(st.integers(0, max_side).filter(lambda k: (k + n) % 2 == 0))
    order = draw(st.permutations(list(range(1, n + m + 1))))
    return matching_from_order(n, m, order)


def random_diagram(rng: random.Random, n: int, m: int) -> PairPartition:
    order = list(range(1, n + m + 1))
    rng.shuffle(order)
    return matching_from_order(n, m, order)


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance lines at the end of the run."""
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
