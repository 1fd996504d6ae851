import os
import sys

from hypothesis import strategies as st

from rigi.graph import ColoredGraph
from rigi.groups import Z, Z2, GroupElement, cyclic, gamma

sys.path.insert(0, os.path.dirname(__file__))


def z2(n, edges):
    return ColoredGraph.build(Z2, n, edges)


def loops(*colors):
    return z2(1, [(0, 0, c) for c in colors])


def color_strategy(tag, bound):
    c = st.integers(-bound, bound)
    if tag.kind == "Z2":
        return st.builds(lambda x, y: GroupElement(tag, (x, y)), c, c)
    if tag.kind == "Z":
        return st.builds(lambda x: GroupElement(tag, (x, 0)), c)
    if tag.kind in ("cyclic", "reflection"):
        return st.builds(lambda r: GroupElement(tag, r=r), st.integers(0, tag.order - 1))
    return st.builds(lambda x, y, r: GroupElement(tag, (x, y), r), c, c, st.integers(0, tag.k - 1))


@st.composite
def colored_graphs(draw, tag=Z2, max_n=3, max_m=6, bound=1, min_m=0):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(min_m, max_m))
    vert = st.integers(0, n - 1)
    col = color_strategy(tag, bound)
    edges = [(draw(vert), draw(vert), draw(col)) for _ in range(m)]
    return ColoredGraph.build(tag, n, edges)


ABELIAN_TAGS = [Z2, Z, cyclic(3), cyclic(4)]
ALL_TAGS = ABELIAN_TAGS + [gamma(2), gamma(3), gamma(4), gamma(6)]


@st.composite
def any_graph(draw, tags=ALL_TAGS, **kw):
    tag = draw(st.sampled_from(tags))
    return draw(colored_graphs(tag=tag, **kw))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES):
            terminalreporter.write_line(line)
