import random

import pytest

from propertyb.atlas import fano, single_vertex, triangle
from propertyb.constructions import aht, layered_construction, product_construction, swap_construction

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def small_constructions():
    """Named construction outputs with at most 22 vertices."""
    tri, fa, sv = triangle(), fano(), single_vertex()
    return {
        "single_vertex": sv,
        "triangle": tri,
        "fano": fa,
        "aht(single,3)": aht(sv, 3),
        "swap(single,3)": swap_construction(sv, 3),
        "layered(single,3)": layered_construction(sv, 3),
        "aht(triangle,4)": aht(tri, 4),
        "swap(triangle,4)": swap_construction(tri, 4),
        "layered(triangle,4)": layered_construction(tri, 4),
        "aht(fano,5)": aht(fa, 5),
        "swap(fano,5)": swap_construction(fa, 5),
        "product(single,fano)": product_construction(sv, fa),
        "product(triangle,triangle)": product_construction(tri, tri),
        "product(triangle,fano)": product_construction(tri, fa),
    }


def deletion_corpus(seeds_per_k=5, seed=20261016):
    """Every small construction plus copies with k = 1, 2, 3 random edges removed."""
    rng = random.Random(seed)
    corpus = []
    for name, h in small_constructions().items():
        corpus.append((name, h))
        for k in (1, 2, 3):
            if k >= len(h):
                continue
            for s in range(seeds_per_k):
                gone = rng.sample(h.edges, k)
                corpus.append((f"{name}-{k}#{s}", h.without_edges(gone)))
    return corpus


@pytest.fixture(scope="session")
def constructions_small():
    return small_constructions()
