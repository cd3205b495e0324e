"""Brute-force ground truth: every non-crossing spanning tree and the flip graph on them."""

from __future__ import annotations

import hashlib
import itertools
import os
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .core import NcTree, edge, edges_cross, half_delta
from .errors import MismatchedN, TooLarge

DEFAULT_MAX_N = 9


def max_n() -> int:
    return int(os.environ.get("FLIPFOREST_MAX_N", DEFAULT_MAX_N))


def _guard(n: int) -> None:
    limit = max_n()
    if n > limit:
        raise TooLarge(n, limit)
    if n < 2:
        raise ValueError("need at least two points")


def chords(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]


def canonical_key(tree: NcTree) -> bytes:
    """Sorted edge list as a fixed-width byte string (two bytes per edge)."""
    return bytes(x for e in sorted(tree.edges) for x in e)


def tree_from_key(n: int, key: bytes) -> NcTree:
    return NcTree(n, frozenset((key[k], key[k + 1]) for k in range(0, len(key), 2)))


def enumerate_trees(n: int) -> list[NcTree]:
    """All non-crossing spanning trees on ``n`` points, sorted by canonical key.

    Depth-first growth of non-crossing forests over the chords in
    lexicographic order, pruned when too few chords remain.
    """
    _guard(n)
    cs = chords(n)
    m = len(cs)
    cross = [0] * m
    for i, e in enumerate(cs):
        for j, f in enumerate(cs):
            if edges_cross(e, f):
                cross[i] |= 1 << j
    need = n - 1
    out: list[tuple[int, ...]] = []

    def grow(k: int, chosen: list[int], blocked: int, comp: list[int]) -> None:
        if len(chosen) == need:
            out.append(tuple(chosen))
            return
        if m - k < need - len(chosen):
            return
        for j in range(k, m):
            if m - j < need - len(chosen):
                return
            if blocked >> j & 1:
                continue
            a, b = cs[j]
            ca, cb = comp[a], comp[b]
            if ca == cb:
                continue
            merged = [cb if c == ca else c for c in comp]
            chosen.append(j)
            grow(j + 1, chosen, blocked | cross[j], merged)
            chosen.pop()

    grow(0, [], 0, list(range(n + 1)))
    trees = [NcTree(n, frozenset(cs[j] for j in idx)) for idx in out]
    trees.sort(key=canonical_key)
    return trees


def _prufer_decode(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(1, n + 1) if degree[v] == 1)
        edges.append(edge(leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = (v for v in range(1, n + 1) if degree[v] == 1)
    edges.append(edge(u, w))
    return edges


def enumerate_trees_prufer(n: int) -> list[NcTree]:
    """Second enumeration: decode every labelled tree and keep the non-crossing ones."""
    _guard(n)
    if n == 2:
        return [NcTree(2, frozenset({(1, 2)}))]
    out = []
    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        es = _prufer_decode(seq, n)
        if not any(edges_cross(e, f) for e, f in itertools.combinations(es, 2)):
            out.append(NcTree(n, frozenset(es)))
    out.sort(key=canonical_key)
    return out


def closed_form_count(n: int) -> int:
    """Known count of non-crossing spanning trees on ``n`` points in convex position."""
    return comb(3 * n - 3, n - 1) // (2 * n - 1)


def neighbors(tree: NcTree) -> list[NcTree]:
    """Every tree one valid flip away, sorted by canonical key."""
    n = tree.n
    out = []
    for e in chords(n):
        if e in tree.edges:
            continue
        hit = [f for f in tree.edges if edges_cross(e, f)]
        if len(hit) > 1:
            continue
        path = tree.path(*e)
        cycle = [edge(path[k], path[k + 1]) for k in range(len(path) - 1)]
        removable = cycle if not hit else [f for f in cycle if f == hit[0]]
        for r in removable:
            out.append(tree.replace(r, e))
    out.sort(key=canonical_key)
    return out


@dataclass
class FlipGraph:
    n: int
    trees: list
    adj: list
    index: dict = field(repr=False, default_factory=dict)

    def __len__(self) -> int:
        return len(self.trees)

    def id(self, tree: NcTree) -> int:
        return self.index[canonical_key(tree)]

    def distances_from(self, src: int) -> list[int]:
        dist = [-1] * len(self.trees)
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def distance_matrix(self) -> np.ndarray:
        """All-pairs distances (int16) via scipy's unweighted shortest paths."""
        rows, cols = [], []
        for u, nbrs in enumerate(self.adj):
            rows.extend([u] * len(nbrs))
            cols.extend(nbrs)
        m = len(self.trees)
        mat = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(m, m))
        out = np.empty((m, m), dtype=np.int16)
        step = 512
        for lo in range(0, m, step):
            idx = np.arange(lo, min(m, lo + step))
            d = shortest_path(mat, directed=False, unweighted=True, indices=idx)
            out[lo:lo + len(idx)] = d.astype(np.int16)
        return out

    def snapshot_text(self) -> str:
        lines = [f"n {self.n} trees {len(self.trees)}"]
        for t in self.trees:
            lines.append(" ".join(f"{a}-{b}" for a, b in sorted(t.edges)))
        for u, nbrs in enumerate(self.adj):
            lines.append(f"{u}: " + " ".join(map(str, nbrs)))
        return "\n".join(lines) + "\n"

    def save(self, directory) -> Path:
        """Write the snapshot under a content-addressed filename."""
        text = self.snapshot_text()
        digest = hashlib.sha256(text.encode()).hexdigest()[:16]
        path = Path(directory) / f"flipgraph-n{self.n}-{digest}.txt"
        path.write_text(text)
        return path

    @classmethod
    def load(cls, path) -> "FlipGraph":
        lines = Path(path).read_text().splitlines()
        head = lines[0].split()
        n, count = int(head[1]), int(head[3])
        trees = []
        for line in lines[1:1 + count]:
            es = [tuple(map(int, tok.split("-"))) for tok in line.split()]
            trees.append(NcTree(n, frozenset(es)))
        adj = []
        for line in lines[1 + count:1 + 2 * count]:
            _, rest = line.split(":", 1)
            adj.append([int(x) for x in rest.split()])
        return cls(n, trees, adj, {canonical_key(t): k for k, t in enumerate(trees)})


@lru_cache(maxsize=None)
def flip_graph(n: int) -> FlipGraph:
    trees = enumerate_trees(n)
    index = {canonical_key(t): k for k, t in enumerate(trees)}
    adj = [[index[canonical_key(u)] for u in neighbors(t)] for t in trees]
    return FlipGraph(n, trees, adj, index)


@lru_cache(maxsize=None)
def distance_matrix(n: int) -> np.ndarray:
    return flip_graph(n).distance_matrix()


def exact_distance(t1: NcTree, t2: NcTree) -> int:
    """Flip distance by bidirectional breadth-first search."""
    if t1.n != t2.n:
        raise MismatchedN(t1.n, t2.n)
    _guard(t1.n)
    if t1 == t2:
        return 0
    k1, k2 = canonical_key(t1), canonical_key(t2)
    dist = [{k1: 0}, {k2: 0}]
    frontier = [[t1], [t2]]
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        mine, other = dist[side], dist[1 - side]
        nxt = []
        best = None
        for t in frontier[side]:
            d = mine[canonical_key(t)] + 1
            for u in neighbors(t):
                ku = canonical_key(u)
                if ku in other:
                    cand = d + other[ku]
                    best = cand if best is None else min(best, cand)
                if ku not in mine:
                    mine[ku] = d
                    nxt.append(u)
        if best is not None:
            return best
        frontier[side] = nxt
    raise RuntimeError("flip graph is disconnected")


def diameter(n: int) -> tuple[int, tuple[NcTree, NcTree]]:
    """Largest flip distance on ``n`` points with the first extremal pair found."""
    _guard(n)
    g = flip_graph(n)
    if len(g) == 1:
        return 0, (g.trees[0], g.trees[0])
    d = distance_matrix(n)
    flat = int(np.argmax(d))
    i, j = divmod(flat, d.shape[1])
    return int(d[i, j]), (g.trees[i], g.trees[j])


def lower_bound_holds(t1: NcTree, t2: NcTree, dist: int) -> bool:
    return dist >= half_delta(t1, t2)
