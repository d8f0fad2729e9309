import functools

import pytest

from lorenz_zeta.symbolic import enumerate_admissible_pairs, parse_pair


@functools.lru_cache(maxsize=None)
def corpus(max_len: int = 4, min_total: int = 3):
    """Admissible pairs with component lengths <= max_len and a buildable template."""
    return tuple(p for p in enumerate_admissible_pairs(max_len, max_len) if len(p.x) + len(p.y) >= min_total)


@pytest.fixture
def outer_pair():
    return parse_pair("LRRRL0,RLLR0")


@pytest.fixture
def inner_pair():
    return parse_pair("LRR0,RL0")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
