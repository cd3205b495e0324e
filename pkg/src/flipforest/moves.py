"""Reusable flip gadgets: border-edge insertion and the optimal prefix transformation.

The prefix transformation takes a tree ``A`` that contains the border path
``1-2-...-i`` and a tree ``B`` with no edge joining two labels above ``i``, and
produces a sequence of exactly ``|A ^ B| / 2`` flips between them, which is
optimal since a flip changes the symmetric difference by at most two.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from .core import (
    Edge,
    Flip,
    FlipSeq,
    NcTree,
    border_edges,
    edge,
    edges_cross,
    flip_problem,
    fundamental_cycle,
    is_border,
    is_valid_flip,
    prefix_path,
)
from .errors import (
    AllBorderTree,
    Crossing,
    EdgeAlreadyPresent,
    HypothesisViolated,
    MismatchedN,
    NoGoodFlipFound,
    NoRemovableOutsideAvoid,
    NotBorderTree,
    ResultInvalid,
)

log = logging.getLogger(__name__)
trace_log = logging.getLogger("flipforest.trace")


def claim1_flip(tree: NcTree, e: Edge, avoid=frozenset()) -> Flip:
    """Flip that inserts the border edge ``e`` and removes a non-border cycle edge.

    Prefers cycle edges outside ``avoid``, then the lexicographically smallest.
    """
    e = edge(*e)
    n = tree.n
    if not is_border(e, n):
        raise ValueError(f"{e} is not a border edge for n={n}")
    if e in tree.edges:
        raise EdgeAlreadyPresent(e)
    if tree.is_all_border():
        raise AllBorderTree(f"every edge of {tree} is a hull edge")
    cycle = fundamental_cycle(tree, e)[1:]
    candidates = sorted(f for f in cycle if not is_border(f, n))
    if not candidates:
        raise AllBorderTree(f"cycle of {e} has only hull edges")
    free = [f for f in candidates if f not in avoid]
    if not free:
        raise NoRemovableOutsideAvoid(e, candidates)
    return Flip(free[0], e)


def _prefix_fallback(tree: NcTree, e: Edge, i: int, avoid) -> Flip:
    # Claim 1 exhausted: remove any cycle edge that is neither a prefix edge nor
    # avoided, preferring non-border edges.
    protected = set(prefix_path(i))
    cycle = [f for f in fundamental_cycle(tree, e)[1:] if f not in protected]
    key = lambda f: (f in avoid, is_border(f, tree.n), f)  # noqa: E731
    best = min(cycle, key=key)
    log.info("border-prefix fallback on %s: removing %s to add %s", tree, best, e)
    return Flip(best, e)


def add_border_prefix(tree: NcTree, i: int, avoid=frozenset()) -> FlipSeq:
    """Flip ``tree`` until it contains the border path ``1-2-...-i``.

    Prefix edges are added in increasing order, one flip each.
    """
    flips = []
    cur = tree
    for e in prefix_path(i):
        if e in cur.edges:
            continue
        try:
            f = claim1_flip(cur, e, avoid)
        except (AllBorderTree, NoRemovableOutsideAvoid):
            f = _prefix_fallback(cur, e, i, avoid)
        flips.append(f)
        cur = cur.replace(f.removed, f.added)
    return FlipSeq(tree, tuple(flips))


@dataclass
class GoodFlipTrace:
    """Candidate edges visited while searching for a good flip."""

    chain: list = field(default_factory=list)
    flip: Flip | None = None
    fallback: bool = False

    def as_dict(self) -> dict:
        return {
            "chain": [list(e) for e in self.chain],
            "flip": None if self.flip is None else [list(self.flip.removed), list(self.flip.added)],
            "fallback": self.fallback,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def check_lemma2_hypothesis(a: NcTree, b: NcTree, i: int) -> None:
    if a.n != b.n:
        raise MismatchedN(a.n, b.n)
    if not 1 <= i <= a.n:
        raise HypothesisViolated(f"bound i={i} outside [1, {a.n}]")
    for e in prefix_path(i):
        if e not in a.edges:
            raise HypothesisViolated(f"prefix tree lacks border edge {e}", e)
    for e in sorted(b.edges):
        if e[0] > i:
            raise HypothesisViolated(f"target tree has edge {e} beyond i={i}", e)


def lemma2_cut(tree: NcTree) -> int:
    """Smallest ``i`` such that ``tree`` has no edge with both endpoints above ``i``."""
    return max(a for a, _ in tree.edges)


def good_flip(a: NcTree, b: NcTree, i: int) -> tuple[Flip, GoodFlipTrace]:
    """A flip on ``a`` towards ``b`` that shrinks ``|a ^ b|`` by two.

    ``b`` must already contain the prefix path; every label above ``i`` is
    then a leaf of ``b``.  The search starts from the leftmost differing edge
    and follows crossing edges with ever smaller leaves.
    """
    trace = GoodFlipTrace()
    diff = a.edges - b.edges
    missing = b.edges - a.edges
    if not diff:
        raise NoGoodFlipFound(trace)
    parent = {}
    for x, y in b.edges:
        if y > i:
            parent[y] = x
    current = min(diff, key=lambda e: (e[0], -e[1]))
    seen = set()
    for _ in range(a.n - i + 1):
        trace.chain.append(current)
        seen.add(current)
        x, y = current
        # both endpoints of an edge beyond the prefix are leaves of b; the one
        # cut off from the prefix by removing the edge is the one to reattach
        leaves = [y, x] if x > i else [y]
        blocked = None
        for leaf in leaves:
            added = edge(leaf, parent[leaf])
            if added not in missing:
                continue
            f = Flip(current, added)
            problem = flip_problem(a, f)
            if problem is None:
                trace.flip = f
                return f, trace
            if isinstance(problem, ResultInvalid) and isinstance(problem.reason, Crossing):
                blocked = (leaf, added)
                break
        if blocked is None:
            break
        leaf, added = blocked
        crossing = [g for g in diff if g not in seen and edges_cross(g, added)]
        lower = [g for g in crossing if g[1] < leaf]
        if not (lower or crossing):
            break
        current = max(lower or crossing, key=lambda g: (g[1], -g[0]))

    trace.fallback = True
    for r in sorted(diff, key=lambda e: (e[0], -e[1])):
        for add in sorted(missing):
            f = Flip(r, add)
            if is_valid_flip(a, f):
                trace.flip = f
                log.info("good-flip fallback used: %s", trace.to_json())
                return f, trace
    raise NoGoodFlipFound(trace)


def lemma2_transform(a: NcTree, b: NcTree, i: int, traces: list | None = None) -> FlipSeq:
    """Sequence from ``a`` (holding the prefix path up to ``i``) to ``b`` of length ``|a ^ b| / 2``."""
    check_lemma2_hypothesis(a, b, i)
    phase1 = add_border_prefix(b, i, avoid=a.edges)
    b1 = phase1.end
    cur = a
    flips = []
    while cur != b1:
        f, trace = good_flip(cur, b1, i)
        if traces is not None:
            traces.append(trace)
        if trace_log.isEnabledFor(logging.DEBUG):
            trace_log.debug(trace.to_json())
        flips.append(f)
        cur = cur.replace(f.removed, f.added)
    return FlipSeq(a, tuple(flips)).then(phase1.reversed())


def to_border_tree(tree: NcTree) -> FlipSeq:
    """Insert missing hull edges in index order until only hull edges remain."""
    flips = []
    cur = tree
    for e in border_edges(tree.n):
        if cur.is_all_border():
            break
        if e in cur.edges:
            continue
        f = claim1_flip(cur, e)
        flips.append(f)
        cur = cur.replace(f.removed, f.added)
    return FlipSeq(tree, tuple(flips))


def missing_hull_edge(tree: NcTree) -> Edge:
    if not tree.is_all_border():
        raise NotBorderTree(f"{tree} has a non-hull edge")
    rest = set(border_edges(tree.n)) - tree.edges
    # n = 2: the single edge is the whole hull
    return rest.pop() if rest else None


def connect_border_trees(ta: NcTree, tb: NcTree) -> FlipSeq:
    """At most one flip joins two trees made only of hull edges."""
    ma, mb = missing_hull_edge(ta), missing_hull_edge(tb)
    if ta == tb:
        return FlipSeq(ta)
    return FlipSeq(ta, (Flip(mb, ma),))


def via_border_trees(t1: NcTree, t2: NcTree) -> FlipSeq:
    """``t1`` to a border tree, across to ``t2``'s border tree, then back down to ``t2``."""
    s1 = to_border_tree(t1)
    s2 = to_border_tree(t2)
    return s1.then(connect_border_trees(s1.end, s2.end)).then(s2.reversed())
