from __future__ import annotations

import random
import sys
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

from gendist.monounary import MonoAlg, attach_tail, disjoint_union, generate, make_mpl, relabel

DATA = Path(__file__).resolve().parents[1] / "src" / "gendist" / "data"


@st.composite
def monoalgs(draw, min_size: int = 1, max_size: int = 8) -> MonoAlg:
    n = draw(st.integers(min_size, max_size))
    f = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    return MonoAlg(tuple(f))


@st.composite
def trees(draw, max_size: int = 10) -> MonoAlg:
    """Tree algebras: a root fixed point and every other vertex pointing lower, shuffled."""
    n = draw(st.integers(1, max_size))
    f = [0] + [draw(st.integers(0, i - 1)) for i in range(1, n)]
    perm = draw(st.permutations(range(n)))
    return relabel(MonoAlg(tuple(f)), perm)


def random_alg(rng: random.Random, max_size: int = 8, min_size: int = 1) -> MonoAlg:
    n = rng.randint(min_size, max_size)
    return MonoAlg(tuple(rng.randrange(n) for _ in range(n)))


def random_tree(rng: random.Random, max_size: int = 10) -> MonoAlg:
    n = rng.randint(1, max_size)
    f = [0] + [rng.randrange(i) for i in range(1, n)]
    perm = list(range(n))
    rng.shuffle(perm)
    return relabel(MonoAlg(tuple(f)), perm)


def random_large_extension(rng: random.Random, a: MonoAlg, max_extra: int = 3) -> MonoAlg:
    """An algebra into which ``a`` embeds largely, shuffled."""
    if rng.random() < 0.5:
        b = attach_tail(a, rng.randrange(a.n), rng.randint(1, max_extra))
    else:
        n = rng.randint(1, max_extra)
        b = disjoint_union(a, make_mpl(n, rng.randint(0, max_extra - n) if max_extra > n else 0))
    perm = list(range(b.n))
    rng.shuffle(perm)
    return relabel(b, perm)


def brute_mgen(a: MonoAlg) -> int:
    everything = frozenset(range(a.n))
    for k in range(1, a.n + 1):
        for xs in combinations(range(a.n), k):
            if generate(a, xs) == everything:
                return k
    raise AssertionError("unreachable")


def subuniverses(a: MonoAlg) -> set[frozenset[int]]:
    """All non-empty closed subsets, as unions of one-generated pieces."""
    singles = {generate(a, (x,)) for x in range(a.n)}
    found = set(singles)
    frontier = list(singles)
    while frontier:
        s = frontier.pop()
        for t in singles:
            u = s | t
            if u not in found:
                found.add(u)
                frontier.append(u)
    return found


@pytest.fixture(scope="session")
def fig_a() -> MonoAlg:
    from gendist.monounary import parse_mua

    return parse_mua((DATA / "figA.mua").read_text())


@pytest.fixture(scope="session")
def fig_b() -> MonoAlg:
    from gendist.monounary import parse_mua

    return parse_mua((DATA / "figB.mua").read_text())


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not getattr(module, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[n])
