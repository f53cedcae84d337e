import random

import pytest

from prymdice.graph import GraphInvolution, MultiGraph


@pytest.fixture
def triangle():
    return MultiGraph(
        ["u", "v", "w"],
        [("a", "u", "v"), ("b", "v", "w"), ("c", "w", "u")],
    )


@pytest.fixture
def k5():
    verts = [f"v{i}" for i in range(1, 6)]
    edges = [
        (f"e{i}{j}", f"v{i}", f"v{j}")
        for i in range(1, 6)
        for j in range(i + 1, 6)
    ]
    return MultiGraph(verts, edges)


@pytest.fixture
def swapped_loops():
    """One vertex carrying two loops exchanged by the involution."""
    g = MultiGraph(["w"], [("p", "w", "w"), ("q", "w", "w")])
    return g, GraphInvolution(g, {"w": "w"}, {"p": "q", "q": "p"})


@pytest.fixture
def reversed_banana():
    """Two vertices, two parallel edges, each edge flipped end-for-end."""
    g = MultiGraph(["u", "v"], [("e", "u", "v"), ("f", "u", "v")])
    return g, GraphInvolution(g, {"u": "v", "v": "u"}, {"e": "e", "f": "f"})


@pytest.fixture
def twin_loops():
    """Two disjoint single-loop vertices exchanged by the involution."""
    g = MultiGraph(["u", "v"], [("p", "u", "u"), ("q", "v", "v")])
    return g, GraphInvolution(g, {"u": "v", "v": "u"}, {"p": "q", "q": "p"})


def seeded_rng(salt: int = 0) -> random.Random:
    return random.Random(987654321 + salt)


def two_invariant_triangles():
    """Two invariant triangles joined by four invariant edges: the standard
    family-dependence counterexample."""
    verts = ["u1", "u2", "u3", "w1", "w2", "w3"]
    edges = [
        ("a1", "u1", "u2"), ("a2", "u2", "u3"), ("a3", "u3", "u1"),
        ("b1", "w1", "w2"), ("b2", "w2", "w3"), ("b3", "w3", "w1"),
        ("c1", "u1", "w1"), ("c2", "u2", "w2"), ("c3", "u1", "w2"), ("c4", "u2", "w1"),
    ]
    g = MultiGraph(verts, edges)
    vmap = {"u1": "u2", "u2": "u1", "u3": "u3", "w1": "w2", "w2": "w1", "w3": "w3"}
    emap = {
        "a1": "a1", "a2": "a3", "a3": "a2",
        "b1": "b1", "b2": "b3", "b3": "b2",
        "c1": "c2", "c2": "c1", "c3": "c4", "c4": "c3",
    }
    return g, GraphInvolution(g, vmap, emap)
