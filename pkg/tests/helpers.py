"""Independent oracles used by the tests.

Nothing here goes through the library's crossing predicate or validator:
crossing is decided geometrically on real coordinates, and trees are checked
with a separate union-find.
"""

from __future__ import annotations

import itertools
import math
import re
from pathlib import Path

from flipforest.core import NcTree
from flipforest.structure import verify_parallel


def tree(n: int, *pairs) -> NcTree:
    """``tree(4, 12, 23, 34)`` or ``tree(4, (1, 2), ...)``."""
    edges = []
    for p in pairs:
        if isinstance(p, int):
            a, b = divmod(p, 10)
        else:
            a, b = p
        edges.append((a, b))
    return NcTree.checked(n, edges)


def point(k: int, n: int) -> tuple[float, float]:
    theta = math.pi / 2 - 2 * math.pi * (k - 1) / n
    return math.cos(theta), math.sin(theta)


def _orient(p, q, r) -> float:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def segments_cross(e, f, n: int) -> bool:
    """Proper intersection of two chords drawn on the unit circle."""
    if set(e) & set(f):
        return False
    p1, p2 = point(e[0], n), point(e[1], n)
    q1, q2 = point(f[0], n), point(f[1], n)
    d1, d2 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    d3, d4 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    return d1 * d2 < 0 and d3 * d4 < 0


def is_nc_spanning_tree(n: int, edges) -> bool:
    edges = [tuple(sorted(e)) for e in edges]
    if len(set(edges)) != n - 1:
        return False
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in edges:
        if not 1 <= a < b <= n:
            return False
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    for e, f in itertools.combinations(edges, 2):
        if segments_cross(e, f, n):
            return False
    return True


def brute_max_chain(t: NcTree, strict: bool = False) -> int:
    """Largest edge subset that has some order and orientation passing ``verify_parallel``."""
    edges = sorted(t.edges)
    for k in range(len(edges), 0, -1):
        for subset in itertools.combinations(edges, k):
            for perm in itertools.permutations(subset):
                for flips in itertools.product((False, True), repeat=k):
                    chain = [(b, a) if f else (a, b) for (a, b), f in zip(perm, flips)]
                    if verify_parallel(chain, strict):
                        return k
    return 0


def replay(seq) -> list[NcTree]:
    return list(seq.trees())


def lemma2_instance(n: int, rng):
    """Random ``(A, B, i)`` satisfying the prefix hypothesis."""
    from flipforest.harness import random_tree
    from flipforest.moves import add_border_prefix
    from flipforest.strategies import clear_arc

    i = rng.randrange(1, n + 1)
    a = add_border_prefix(random_tree(n, rng.randrange(10**9)), i).end
    b = clear_arc(random_tree(n, rng.randrange(10**9)), i).end
    return a, b, i


PAPER = Path(__file__).resolve().parents[1] / "paper.md"


def figure_caterpillars():
    """Both caterpillars of the caterpillar figure, read off its tikz source.

    Returns ``[(edges, bold_edges), (edges, bold_edges)]`` with node ``A``
    as label 1, ``B`` as 2 and so on around the circle.
    """
    text = PAPER.read_text()
    start = text.index(r"\label{fig:caterpillar}")
    body = text[text.rindex(r"\begin{figure}", 0, start):start]
    out = []
    for half in body.split(r"\tikzset{xshift")[:2]:
        edges, bold = set(), set()
        for line in half.splitlines():
            line = line.strip()
            if not line.startswith(r"\draw"):
                continue
            names = re.findall(r"\(([A-H])\)", line)
            labels = [ord(c) - ord("A") + 1 for c in names]
            for a, b in zip(labels, labels[1:]):
                e = (min(a, b), max(a, b))
                edges.add(e)
                if "ultra thick" in line:
                    bold.add(e)
        out.append((edges, bold))
    return out
