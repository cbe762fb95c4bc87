from functools import lru_cache

import pytest

from ktschubert import FlagK, WeylGroup, build_root_system


@lru_cache(maxsize=None)
def engine(cartan_type: str, rank: int) -> FlagK:
    return FlagK(WeylGroup(build_root_system(cartan_type, rank)))


@pytest.fixture(scope="session")
def make_engine():
    return engine


def elt(K: FlagK, word: str):
    """'121' -> s1 s2 s1 (one-based letters)."""
    return K.W.from_word([int(c) - 1 for c in word])


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_acceptance_results", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
