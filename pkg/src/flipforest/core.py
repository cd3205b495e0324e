"""Trees, flips and flip sequences on points in convex position.

Points are labelled ``1..n`` in hull order.  Because the points are in convex
position, whether two chords cross depends only on the cyclic order of their
endpoints, so no coordinates are ever stored.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

from .errors import (
    AddedAlreadyPresent,
    BadLabel,
    Crossing,
    EdgeAlreadyPresent,
    HasCycle,
    MismatchedN,
    NotSpanning,
    RemovedNotPresent,
    ResultInvalid,
    StepInvalid,
    WrongEdgeCount,
    WrongEndpoint,
)

Edge = tuple[int, int]


def edge(a: int, b: int) -> Edge:
    """Canonical form of the chord ``ab`` (smaller label first)."""
    if a == b:
        raise BadLabel((a, b), 0)
    return (a, b) if a < b else (b, a)


def cyclic_strictly_between(a: int, x: int, b: int) -> bool:
    """True iff ``x`` lies strictly inside the arc walked from ``a`` up to ``b``."""
    if a < b:
        return a < x < b
    return x > a or x < b


def edges_cross(e: Edge, f: Edge) -> bool:
    a, b = e
    c, d = f
    if a == c or a == d or b == c or b == d:
        return False
    return (a < c < b) != (a < d < b)


def edges_cross_any(e: Edge, others: Iterable[Edge]) -> bool:
    a, b = e
    for c, d in others:
        if a != c and a != d and b != c and b != d and (a < c < b) != (a < d < b):
            return True
    return False


def is_border(e: Edge, n: int) -> bool:
    """Hull edge test; the closing edge ``(1, n)`` counts as a border edge."""
    a, b = e
    return b - a == 1 or (a == 1 and b == n and n > 2)


def border_edges(n: int) -> list[Edge]:
    """All hull edges in index order: ``(1,2), ..., (n-1,n), (1,n)``."""
    out = [(j, j + 1) for j in range(1, n)]
    if n > 2:
        out.append((1, n))
    return out


def prefix_path(i: int) -> list[Edge]:
    """The border path ``(1,2), ..., (i-1,i)`` on the first ``i`` labels."""
    return [(j, j + 1) for j in range(1, i)]


def _adjacency(n: int, edges: Iterable[Edge]) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def _tree_path(adj: dict[int, list[int]], src: int, dst: int) -> list[int] | None:
    parent = {src: src}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                queue.append(w)
    if dst not in parent:
        return None
    path = [dst]
    while path[-1] != src:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def validate_tree(n: int, edges: Iterable[Edge]) -> None:
    """Raise the first violated clause, checked in the order count, cycle, spanning, crossing."""
    edges = [tuple(e) for e in edges]
    if len(set(edges)) != n - 1 or len(edges) != n - 1:
        raise WrongEdgeCount(n, len(set(edges)))
    for a, b in edges:
        if not (1 <= a < b <= n):
            raise BadLabel((a, b), n)
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in sorted(edges):
        ra, rb = find(e[0]), find(e[1])
        if ra == rb:
            raise HasCycle(e)
        parent[ra] = rb
    root = find(1)
    for v in range(2, n + 1):
        if find(v) != root:
            raise NotSpanning(v)
    ordered = sorted(edges)
    for k, e in enumerate(ordered):
        for f in ordered[k + 1:]:
            if edges_cross(e, f):
                raise Crossing(e, f)


@dataclass(frozen=True)
class NcTree:
    """A non-crossing spanning tree, compared by its edge set."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(edge(*e) for e in self.edges))

    @classmethod
    def _raw(cls, n: int, edges: frozenset) -> "NcTree":
        # edges already canonical
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "edges", edges)
        return obj

    @classmethod
    def checked(cls, n: int, edges: Iterable[Edge]) -> "NcTree":
        edges = [edge(*e) for e in edges]
        validate_tree(n, edges)
        return cls(n, frozenset(edges))

    @classmethod
    def border_path(cls, n: int, missing: Edge | None = None) -> "NcTree":
        """Hull minus one edge (the closing edge ``(1, n)`` by default)."""
        if missing is None:
            return cls(n, frozenset(prefix_path(n)))
        hull = set(border_edges(n))
        hull.discard(edge(*missing))
        return cls(n, frozenset(hull))

    @classmethod
    def star(cls, n: int, center: int = 1) -> "NcTree":
        return cls(n, frozenset(edge(center, v) for v in range(1, n + 1) if v != center))

    def __iter__(self) -> Iterator[Edge]:
        return iter(sorted(self.edges))

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, e) -> bool:
        return edge(*e) in self.edges

    def __repr__(self) -> str:
        body = ",".join(f"{a}-{b}" for a, b in sorted(self.edges))
        return f"NcTree(n={self.n}, {{{body}}})"

    @cached_property
    def adj(self) -> dict[int, list[int]]:
        return _adjacency(self.n, self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def leaves(self) -> list[int]:
        return [v for v in range(1, self.n + 1) if len(self.adj[v]) == 1]

    def path(self, u: int, v: int) -> list[int]:
        """Vertex path between ``u`` and ``v`` in the tree."""
        return _tree_path(self.adj, u, v)

    def border_count(self) -> int:
        return sum(1 for e in self.edges if is_border(e, self.n))

    def is_all_border(self) -> bool:
        return all(is_border(e, self.n) for e in self.edges)

    def key(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def replace(self, removed: Edge, added: Edge) -> "NcTree":
        """Unchecked edge exchange."""
        out = NcTree._raw(self.n, (self.edges - {removed}) | {added})
        old = self.__dict__.get("adj")
        if old is not None:
            # patch the four touched adjacency lists instead of rebuilding
            adj = dict(old)
            (a, b), (c, d) = removed, added
            adj[a] = [w for w in adj[a] if w != b]
            adj[b] = [w for w in adj[b] if w != a]
            adj[c] = adj[c] + [d]
            adj[d] = adj[d] + [c]
            out.__dict__["adj"] = adj
        return out


class Flip(NamedTuple):
    removed: Edge
    added: Edge

    def inverse(self) -> "Flip":
        return Flip(self.added, self.removed)

    def __str__(self) -> str:
        return f"-{self.removed} +{self.added}"


def make_flip(removed, added) -> Flip:
    return Flip(edge(*removed), edge(*added))


def fundamental_cycle(tree: NcTree, e: Edge) -> list[Edge]:
    """Edges of the unique cycle of ``tree + e``, starting with ``e`` itself."""
    e = edge(*e)
    if e in tree.edges:
        raise EdgeAlreadyPresent(e)
    a, b = e
    if not (1 <= a < b <= tree.n):
        raise BadLabel(e, tree.n)
    path = tree.path(a, b)
    return [e] + [edge(path[k], path[k + 1]) for k in range(len(path) - 1)]


def flip_problem(tree: NcTree, flip: Flip):
    """Return the reason ``flip`` is invalid on ``tree``, or ``None`` when it is valid.

    Assumes ``tree`` itself is valid, so only the added edge needs checking.
    """
    removed, added = flip
    if removed not in tree.edges:
        return RemovedNotPresent(removed)
    if added in tree.edges:
        return AddedAlreadyPresent(added)
    a, b = added
    if not (1 <= a < b <= tree.n):
        return ResultInvalid(BadLabel(added, tree.n))
    path = tree.path(a, b)
    on_cycle = any(edge(path[k], path[k + 1]) == removed for k in range(len(path) - 1))
    if not on_cycle:
        return ResultInvalid(HasCycle(added))
    others = tree.edges - {removed}
    if not edges_cross_any(added, others):
        return None
    for f in sorted(others):
        if edges_cross(added, f):
            return ResultInvalid(Crossing(added, f))
    return None


def is_valid_flip(tree: NcTree, flip: Flip) -> bool:
    return flip_problem(tree, flip) is None


def apply_flip(tree: NcTree, flip: Flip) -> NcTree:
    flip = make_flip(*flip)
    problem = flip_problem(tree, flip)
    if problem is not None:
        raise problem
    return tree.replace(flip.removed, flip.added)


def symmetric_difference(t1: NcTree, t2: NcTree) -> frozenset:
    if t1.n != t2.n:
        raise MismatchedN(t1.n, t2.n)
    return t1.edges ^ t2.edges


def half_delta(t1: NcTree, t2: NcTree) -> int:
    """Lower bound on the flip distance: half the symmetric difference."""
    return len(symmetric_difference(t1, t2)) // 2


@dataclass(frozen=True)
class Relabeling:
    """Rotation of the hull labels, optionally preceded by reversing their order.

    ``x -> ((s(x) - 1 + rotation) mod n) + 1`` where ``s(x) = n + 1 - x`` when
    ``reversed`` and the identity otherwise.
    """

    n: int
    rotation: int = 0
    reversed: bool = False

    @classmethod
    def sending(cls, n: int, src: int, dst: int, reversed: bool = False) -> "Relabeling":
        """The relabeling (of the given orientation) that maps ``src`` to ``dst``."""
        if reversed:
            return cls(n, (dst - 1 + src) % n, True)
        return cls(n, (dst - src) % n, False)

    def __call__(self, x: int) -> int:
        if self.reversed:
            return (self.rotation - x) % self.n + 1
        return (x - 1 + self.rotation) % self.n + 1

    def inverse(self) -> "Relabeling":
        if self.reversed:
            return self
        return Relabeling(self.n, (-self.rotation) % self.n, False)

    def is_identity(self) -> bool:
        return self.rotation % self.n == 0 and not self.reversed

    @cached_property
    def _table(self) -> tuple[int, ...]:
        return (0,) + tuple(self(x) for x in range(1, self.n + 1))

    def edge(self, e: Edge) -> Edge:
        m = self._table
        a, b = m[e[0]], m[e[1]]
        return (a, b) if a < b else (b, a)

    def edges(self, es: Iterable[Edge]) -> frozenset:
        m = self._table
        out = []
        for a, b in es:
            a, b = m[a], m[b]
            out.append((a, b) if a < b else (b, a))
        return frozenset(out)

    def tree(self, t: NcTree) -> NcTree:
        if self.is_identity():
            return t
        return NcTree._raw(t.n, self.edges(t.edges))

    def flip(self, f: Flip) -> Flip:
        if self.is_identity():
            return f
        return Flip(self.edge(f.removed), self.edge(f.added))

    def seq(self, s: "FlipSeq") -> "FlipSeq":
        return FlipSeq(self.tree(s.start), tuple(self.flip(f) for f in s.flips))


def relabel(tree: NcTree, rho: Relabeling) -> NcTree:
    return rho.tree(tree)


@dataclass(frozen=True)
class FlipSeq:
    """A start tree plus an ordered list of flips."""

    start: NcTree
    flips: tuple = ()

    def __post_init__(self):
        if not all(type(f) is Flip for f in self.flips):
            object.__setattr__(self, "flips", tuple(make_flip(*f) for f in self.flips))

    def __len__(self) -> int:
        return len(self.flips)

    def trees(self) -> Iterator[NcTree]:
        """Every tree along the sequence, start included; raises ``StepInvalid``."""
        t = self.start
        yield t
        for k, f in enumerate(self.flips):
            try:
                t = apply_flip(t, f)
            except Exception as exc:
                raise StepInvalid(k, exc) from exc
            yield t

    @cached_property
    def end(self) -> NcTree:
        """Final tree, replayed without validation (see ``validate_sequence``)."""
        edges = set(self.start.edges)
        for removed, added in self.flips:
            edges.discard(removed)
            edges.add(added)
        return NcTree._raw(self.start.n, frozenset(edges))

    def reversed(self) -> "FlipSeq":
        return FlipSeq(self.end, tuple(f.inverse() for f in reversed(self.flips)))

    def then(self, other: "FlipSeq") -> "FlipSeq":
        if other.start != self.end:
            raise WrongEndpoint()
        return FlipSeq(self.start, self.flips + other.flips)

    @classmethod
    def chain(cls, start: NcTree, *parts: "FlipSeq") -> "FlipSeq":
        seq = cls(start)
        for p in parts:
            seq = seq.then(p)
        return seq


def validate_sequence(seq: FlipSeq, expected_end: NcTree | None = None) -> int:
    """Replay ``seq``; return its length when every step and the endpoint are valid."""
    validate_tree(seq.start.n, seq.start.edges)
    last = seq.start
    for last in seq.trees():
        pass
    if expected_end is not None and last != expected_end:
        raise WrongEndpoint()
    return len(seq)
