import pytest

from isk4color.oracle import contains_isk4, enumerate_graphs
from isk4color.patterns import find_k33, find_triangle


@pytest.fixture(scope="session")
def all_graphs_7():
    """Every graph up to isomorphism with 1..7 vertices (connected or not)."""
    return {n: list(enumerate_graphs(n)) for n in range(1, 8)}


@pytest.fixture(scope="session")
def connected_corpus_8():
    """Every connected graph up to isomorphism with 1..8 vertices."""
    return {n: list(enumerate_graphs(n, connected=True)) for n in range(1, 9)}


@pytest.fixture(scope="session")
def isk4_free_connected_8(connected_corpus_8):
    return {
        n: [g for g in graphs if contains_isk4(g) is None]
        for n, graphs in connected_corpus_8.items()
    }


@pytest.fixture(scope="session")
def tf_isk4_free_connected_8(isk4_free_connected_8):
    return {
        n: [g for g in graphs if find_triangle(g) is None]
        for n, graphs in isk4_free_connected_8.items()
    }


@pytest.fixture(scope="session")
def lemma_class_connected_8(tf_isk4_free_connected_8):
    """{K4-subdivision, triangle, K33}-free connected graphs up to n=8."""
    return {
        n: [g for g in graphs if find_k33(g) is None]
        for n, graphs in tf_isk4_free_connected_8.items()
    }
