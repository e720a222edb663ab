from hypothesis import strategies as st

from lowcond import UndirectedGraph


@st.composite
def graphs(draw, min_vertices=1, max_vertices=8):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    labels = [str(i) for i in range(1, n + 1)]
    return UndirectedGraph(labels, [(labels[i], labels[j]) for (i, j), keep in zip(pairs, chosen) if keep])
