import re
from pathlib import Path

from flipforest.core import Flip, FlipSeq, NcTree
from flipforest.render import RenderSpec, render_frames, render_tree, vertex_position
from flipforest.strategies import transform_sqrt

from helpers import figure_caterpillars, tree

GOLDEN = Path(__file__).parent / "golden" / "caterpillar_right.svg"

LINE = re.compile(r'<line x1="([-\d.]+)" y1="([-\d.]+)" x2="([-\d.]+)" y2="([-\d.]+)" ([^/]*)/>')
CIRCLE = re.compile(r'<circle cx="([-\d.]+)" cy="([-\d.]+)"')


def drawn_edges(svg):
    """Recover labelled edges from line endpoints by matching circle centres."""
    centres = {(float(x), float(y)): k for k, (x, y) in enumerate(CIRCLE.findall(svg), start=1)}
    out = {}
    for x1, y1, x2, y2, style in LINE.findall(svg):
        a, b = centres[(float(x1), float(y1))], centres[(float(x2), float(y2))]
        out[(min(a, b), max(a, b))] = style
    return out


def test_vertex_one_on_top_clockwise():
    spec = RenderSpec()
    x1, y1 = vertex_position(1, 8, spec)
    x2, _ = vertex_position(2, 8, spec)
    assert abs(x1 - spec.size / 2) < 1e-9
    assert all(y1 < vertex_position(k, 8, spec)[1] for k in range(2, 9))
    assert x2 > x1


def test_figure_tree_topology_and_golden():
    (_, _), (right, bold) = figure_caterpillars()
    t = NcTree.checked(8, right)
    svg = render_tree(t, RenderSpec(highlight=frozenset(bold)))
    styles = drawn_edges(svg)
    assert set(styles) == set(right)
    assert {e for e, s in styles.items() if "#e67e22" in s} == bold
    assert svg == GOLDEN.read_text()


def test_frames_count_and_marks():
    start = tree(4, 12, 23, 34)
    seq = FlipSeq(start, (Flip((3, 4), (1, 4)), Flip((2, 3), (1, 3))))
    frames = render_frames(seq)
    assert len(frames) == len(seq) + 1
    assert set(drawn_edges(frames[0])) == start.edges
    last = drawn_edges(frames[2])
    assert "stroke-dasharray" in last[(2, 3)]
    assert 'stroke-width="4"' in last[(1, 3)]
    assert "dasharray" not in frames[0]


def test_frames_deterministic():
    seq = transform_sqrt(NcTree.star(9), NcTree.border_path(9))
    assert render_frames(seq) == render_frames(seq)
    assert len(render_frames(FlipSeq(NcTree.star(5)))) == 1


def test_labels_optional():
    svg = render_tree(NcTree.star(5), RenderSpec(labels=False))
    assert "<text" not in svg
