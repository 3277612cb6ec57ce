"""Shared brute-force helpers.

Everything here is deliberately naive and independent of the library's own
enumeration strategy, so tests can cross-check two implementations.
"""

import itertools

from hypothesis import strategies as st

from degcensus import BipartiteGraph, DegreePair


def brute_bipartite(s, t):
    """Every simple bipartite graph with the given margins, by raw product.

    Chooses each row's column subset independently, then filters on the
    column sums.  Exponential; keep sum(s) small.
    """
    m, n = len(s), len(t)
    row_choices = [list(itertools.combinations(range(n), si)) for si in s]
    out = []
    for rows in itertools.product(*row_choices):
        cols = [0] * n
        for chosen in rows:
            for j in chosen:
                cols[j] += 1
        if cols == list(t):
            edges = [(i, j) for i, chosen in enumerate(rows) for j in chosen]
            out.append(BipartiteGraph(m, n, edges))
    return out


def brute_permanent(matrix):
    n = len(matrix)
    total = 0
    for perm in itertools.permutations(range(n)):
        prod = 1
        for i, j in enumerate(perm):
            prod *= matrix[i][j]
        total += prod
    return total


@st.composite
def bipartite_graphs(draw, max_side=4, max_edges=None):
    """A random simple bipartite graph; its margins give a valid DegreePair."""
    m = draw(st.integers(1, max_side))
    n = draw(st.integers(1, max_side))
    cells = [(i, j) for i in range(m) for j in range(n)]
    edges = draw(
        st.lists(st.sampled_from(cells), unique=True, max_size=max_edges or m * n)
    )
    return BipartiteGraph(m, n, edges)


@st.composite
def degree_pairs(draw, max_side=4):
    g = draw(bipartite_graphs(max_side=max_side))
    return g.degree_pair()


@st.composite
def square_graphs(draw, max_side=4, loop_free=False):
    n = draw(st.integers(2, max_side))
    cells = [
        (i, j) for i in range(n) for j in range(n) if not (loop_free and i == j)
    ]
    edges = draw(st.lists(st.sampled_from(cells), unique=True, max_size=len(cells)))
    return BipartiteGraph(n, n, edges)


def degrees_of(edges, m, n):
    s = [0] * m
    t = [0] * n
    for i, j in edges:
        s[i] += 1
        t[j] += 1
    return DegreePair(s, t)
