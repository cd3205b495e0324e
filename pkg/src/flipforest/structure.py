"""Structural analyses of a tree that decide which strategy applies and what it costs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .core import Edge, NcTree, cyclic_strictly_between, edge
from .errors import NotACaterpillar, NotAHamiltonianPath, NotAPathInTree


def arc(n: int, start: int, end: int) -> list[int]:
    """Labels met walking up (cyclically) from ``start`` to ``end``, both included."""
    out = [start]
    while out[-1] != end:
        out.append(out[-1] % n + 1)
    return out


# --- parallel edges -------------------------------------------------------

def verify_parallel(chain, strict: bool = False) -> bool:
    """Do the oriented edges ``(a_k, b_k)`` read ``a_1..a_t, b_t..b_1`` in cyclic order?

    Equal neighbours in that word are allowed unless ``strict``.
    """
    chain = list(chain)
    if not chain:
        return True
    word = [a for a, _ in chain] + [b for _, b in reversed(chain)]
    if strict and len(set(word)) != len(word):
        return False
    if any(a == b for a, b in chain):
        return False
    if len(set(word)) == 1:
        return False
    descents = sum(1 for k in range(len(word)) if word[k] > word[(k + 1) % len(word)])
    return descents <= 1


@dataclass
class ParallelChain:
    """Oriented parallel edges plus the two arcs they span."""

    edges: list
    n: int
    strict: bool = False

    @property
    def t(self) -> int:
        return len(self.edges)

    @property
    def side_a(self) -> list[int]:
        return arc(self.n, self.edges[0][0], self.edges[-1][0])

    @property
    def side_b(self) -> list[int]:
        return arc(self.n, self.edges[-1][1], self.edges[0][1])

    def copy(self) -> "ParallelChain":
        return ParallelChain(list(self.edges), self.n, self.strict)

    def as_dict(self) -> dict:
        return {"t": self.t, "strict": self.strict, "edges": [list(e) for e in self.edges]}


def _longest_nested(intervals: list[Edge], strict: bool) -> list[Edge]:
    """Longest chain of nested intervals, outermost first."""
    if not intervals:
        return []
    order = sorted(intervals, key=lambda iv: (-(iv[1] - iv[0]), iv))
    m = len(order)
    best = [1] * m
    nxt = [-1] * m

    def inside(inner: Edge, outer: Edge) -> bool:
        if strict:
            return outer[0] < inner[0] and inner[1] < outer[1]
        return outer[0] <= inner[0] and inner[1] <= outer[1] and inner != outer

    for k in range(m - 1, -1, -1):
        inner = [j for j in range(k + 1, m) if inside(order[j], order[k])]
        if inner:
            # prefer strictly nested successors, so strict chains are found when they tie
            j = max(inner, key=lambda j: (best[j], _strictly_inside(order[j], order[k]), order[j][0]))
            best[k] = best[j] + 1
            nxt[k] = j
    start = max(range(m), key=lambda k: (best[k], -k))
    out = []
    while start >= 0:
        out.append(order[start])
        start = nxt[start]
    return out


def _strictly_inside(inner: Edge, outer: Edge) -> bool:
    return outer[0] < inner[0] and inner[1] < outer[1]


@lru_cache(maxsize=4096)
def _best_chain(tree: NcTree, strict: bool) -> ParallelChain:
    n = tree.n
    best: list = []
    best_rot = 0
    for r in range(n):
        # cut the cycle just before label r + 1
        fwd = lambda x: (x - 1 - r) % n + 1  # noqa: E731
        intervals = [edge(fwd(a), fwd(b)) for a, b in tree.edges]
        chain = _longest_nested(intervals, strict)
        if len(chain) > len(best):
            best, best_rot = chain, r
    back = lambda x: (x - 1 + best_rot) % n + 1  # noqa: E731
    oriented = [(back(lo), back(hi)) for lo, hi in best]
    word = [a for a, _ in oriented] + [b for _, b in oriented]
    return ParallelChain(oriented, n, strict=len(set(word)) == len(word))


def max_parallel_chain(tree: NcTree) -> ParallelChain:
    """A maximum set of parallel edges of ``tree``, with a witness orientation.

    In a suitable rotation of the labels parallel edges are exactly weakly
    nested intervals, so each of the ``n`` cuts is solved by a longest-chain
    dynamic program.
    """
    return _best_chain(tree, strict=False).copy()


def max_strict_parallel_chain(tree: NcTree) -> ParallelChain:
    return _best_chain(tree, strict=True).copy()


@dataclass
class Connector:
    path: list
    trivial: bool
    side: str


@dataclass
class GapDecomposition:
    """Connector paths between consecutive chain edges and the gap vertex sets."""

    chain: ParallelChain
    connectors: list = field(default_factory=list)
    gaps_a: list = field(default_factory=list)
    gaps_b: list = field(default_factory=list)

    def count(self, side: str) -> int:
        return sum(1 for q in self.connectors if q.side == side)

    @property
    def w(self) -> int:
        return max(self.count("A"), self.count("B"))

    @property
    def majority(self) -> str:
        return "A" if self.count("A") >= self.count("B") else "B"

    def b(self, side: str = "B") -> int:
        gaps = self.gaps_b if side == "B" else self.gaps_a
        return sum(len(g) - 1 for g in gaps)


def gap_decomposition(tree: NcTree, chain: ParallelChain) -> GapDecomposition:
    n = tree.n
    side_a, side_b = set(chain.side_a), set(chain.side_b)
    dec = GapDecomposition(chain)
    for (a1, b1), (a2, b2) in zip(chain.edges, chain.edges[1:]):
        dec.gaps_a.append(arc(n, a1, a2))
        dec.gaps_b.append(arc(n, b2, b1))
        shared = {a1, b1} & {a2, b2}
        if shared:
            v = min(shared)
            side = "A" if v in (a1, a2) and v not in (b1, b2) else "B"
            dec.connectors.append(Connector([v], True, side))
            continue
        best = None
        for u in (a1, b1):
            for v in (a2, b2):
                p = tree.path(u, v)
                if best is None or len(p) < len(best):
                    best = p
        if set(best) <= side_a:
            side = "A"
        elif set(best) <= side_b:
            side = "B"
        else:
            side = "mixed"
        dec.connectors.append(Connector(best, False, side))
    return dec


# --- caterpillars ---------------------------------------------------------

@dataclass
class Spine:
    """Internal nodes of a caterpillar in path order."""

    nodes: list
    n: int

    @property
    def j(self) -> int:
        """Label of the last spine node once the first one is relabelled ``1``."""
        if not self.nodes:
            return 1
        return (self.nodes[-1] - self.nodes[0]) % self.n + 1


def spine(tree: NcTree) -> Spine:
    internal = [v for v in range(1, tree.n + 1) if tree.degree(v) >= 2]
    if not internal:
        return Spine([], tree.n)
    inside = set(internal)
    deg = {v: sum(1 for w in tree.adj[v] if w in inside) for v in internal}
    ends = [v for v in internal if deg[v] <= 1]
    if any(d > 2 for d in deg.values()) or len(ends) not in (1, 2):
        raise NotACaterpillar(f"internal nodes of {tree} do not induce a path")
    order = [min(ends)]
    prev = None
    while True:
        step = [w for w in tree.adj[order[-1]] if w in inside and w != prev]
        if not step:
            break
        prev = order[-1]
        order.append(step[0])
    if len(order) != len(internal):
        raise NotACaterpillar(f"internal nodes of {tree} are not connected")
    return Spine(order, tree.n)


def is_caterpillar(tree: NcTree) -> bool:
    try:
        spine(tree)
    except NotACaterpillar:
        return False
    return True


def _opposite(v: int, w: int, u: int, x: int) -> bool:
    """Do ``u`` and ``x`` lie on different sides of the chord ``vw``?"""
    return cyclic_strictly_between(v, u, w) != cyclic_strictly_between(v, x, w)


def is_nice_caterpillar(tree: NcTree) -> bool:
    sp = spine(tree)
    for v, w in zip(sp.nodes, sp.nodes[1:]):
        for u in tree.adj[v]:
            if u == w:
                continue
            for x in tree.adj[w]:
                if x != v and not _opposite(v, w, u, x):
                    return False
    return True


# --- paths ----------------------------------------------------------------

def _farthest(tree: NcTree, src: int) -> tuple[int, dict]:
    parent = {src: None}
    queue = deque([src])
    last = src
    while queue:
        last = queue.popleft()
        for w in sorted(tree.adj[last]):
            if w not in parent:
                parent[w] = last
                queue.append(w)
    return last, parent


def longest_path(tree: NcTree) -> list[int]:
    """A longest path of the tree by the double breadth-first sweep."""
    far, _ = _farthest(tree, 1)
    other, parent = _farthest(tree, far)
    path = [other]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path


@dataclass
class PathClassification:
    """Separating/series tags for the edges of a subpath ``x_1..x_{t+1}``."""

    path: list
    tags: list

    @property
    def t(self) -> int:
        return len(self.path) - 1

    @property
    def s(self) -> int:
        return sum(1 for tag in self.tags if tag in ("series", "both"))

    @property
    def p(self) -> int:
        return sum(1 for tag in self.tags if tag in ("separating", "both"))

    def separating_edges(self) -> list[Edge]:
        return [
            (self.path[k], self.path[k + 1])
            for k, tag in enumerate(self.tags)
            if tag in ("separating", "both")
        ]


def classify_subpath(tree: NcTree, path) -> PathClassification:
    path = list(path)
    if len(path) < 2 or len(set(path)) != len(path):
        raise NotAPathInTree(f"{path} is not a simple path")
    for u, v in zip(path, path[1:]):
        if edge(u, v) not in tree.edges:
            raise NotAPathInTree(f"{(u, v)} is not an edge of {tree}")
    t = len(path) - 1
    tags = []
    for k in range(t):
        if k == 0 or k == t - 1:
            tags.append("both")
            continue
        v, w = path[k], path[k + 1]
        sep = _opposite(v, w, path[k - 1], path[k + 2])
        tags.append("separating" if sep else "series")
    return PathClassification(path, tags)


def orient_parallel(edges, n: int) -> list[Edge] | None:
    """Orient and order ``edges`` as a parallel chain, or ``None`` if they are not parallel."""
    edges = [edge(*e) for e in edges]
    for r in range(n):
        fwd = lambda x: (x - 1 - r) % n + 1  # noqa: E731
        back = lambda x: (x - 1 + r) % n + 1  # noqa: E731
        ivs = sorted((edge(fwd(a), fwd(b)) for a, b in edges), key=lambda iv: (iv[0] - iv[1], iv))
        if all(o[0] <= i[0] and i[1] <= o[1] for o, i in zip(ivs, ivs[1:])):
            return [(back(lo), back(hi)) for lo, hi in ivs]
    return None


@dataclass
class HamPathStats:
    """Split of the hull by the two ends of a Hamiltonian path."""

    order: list
    top: list
    bottom: list
    b_t: int
    b_b: int

    @property
    def n_t(self) -> int:
        return len(self.top)

    @property
    def n_b(self) -> int:
        return len(self.bottom)


def hamiltonian_order(tree: NcTree) -> list[int]:
    leaves = tree.leaves()
    if len(leaves) != 2:
        raise NotAHamiltonianPath(f"{tree} has {len(leaves)} leaves")
    x1 = min(leaves)
    order = [x1]
    prev = None
    while len(order) < tree.n:
        (nxt,) = [w for w in tree.adj[order[-1]] if w != prev]
        prev = order[-1]
        order.append(nxt)
    return order


def is_hamiltonian_path(tree: NcTree) -> bool:
    return len(tree.leaves()) == 2


def ham_path_stats(tree: NcTree) -> HamPathStats:
    order = hamiltonian_order(tree)
    x1, xn = order[0], order[-1]
    top, bottom = arc(tree.n, x1, xn), arc(tree.n, xn, x1)

    def borders(part):
        return sum(1 for u, v in zip(part, part[1:]) if edge(u, v) in tree.edges)

    return HamPathStats(order, top, bottom, borders(top), borders(bottom))
