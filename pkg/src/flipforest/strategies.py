"""Whole-tree transformation strategies and the dispatcher that picks the shortest.

Every strategy has the same shape: relabel so that some arc of the hull sits
at the top labels, prepare the first tree so it has no edge inside that arc,
grow the border path over the rest of the hull in the second tree, and join
the two with the optimal prefix transformation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import isqrt

from .core import (
    FlipSeq,
    NcTree,
    Relabeling,
    edge,
    flip_problem,
    half_delta,
    validate_sequence,
)
from .errors import (
    FlipForestError,
    MismatchedN,
    NotNiceCaterpillar,
    NoValidLabeling,
    PreconditionFailed,
    ReconnectFailed,
)
from .formats import format_sequence
from .moves import (
    add_border_prefix,
    lemma2_cut,
    lemma2_transform,
    via_border_trees,
)
from .structure import (
    arc,
    classify_subpath,
    ham_path_stats,
    is_nice_caterpillar,
    longest_path,
    max_parallel_chain,
    max_strict_parallel_chain,
    spine,
)

log = logging.getLogger(__name__)


# --- bounds ---------------------------------------------------------------

def bound_sqrt(n: int) -> int:
    return 2 * n - isqrt(n) + 1


def bound_three_halves(n: int) -> int:
    return (3 * n + 1) // 2


def bound_parallel(tree: NcTree) -> int:
    n = tree.n
    t = max_parallel_chain(tree).t
    ts = max_strict_parallel_chain(tree).t
    return min(2 * n - t // 2, 2 * n - ts + 1)


def bound_long_path(tree: NcTree) -> int:
    t = len(longest_path(tree)) - 1
    return 2 * tree.n - t // 3


# --- shared plumbing ------------------------------------------------------

def _merge(t1: NcTree, prep: FlipSeq, t2: NcTree, i: int) -> FlipSeq:
    """``t1`` -> (prep) -> prepared tree -> ``t2`` via a border prefix on ``t2`` up to ``i``."""
    ready = prep.end
    grown = add_border_prefix(t2, i, avoid=ready.edges)
    core = lemma2_transform(grown.end, ready, i)
    return prep.then(core.reversed()).then(grown.reversed())


def _tail_relabeling(n: int, first: int, last: int) -> tuple[Relabeling, int]:
    """Rotation sending the arc ``first..last`` to the top labels; returns it and ``i``."""
    rho = Relabeling.sending(n, last, n)
    size = len(arc(n, first, last))
    return rho, n - size


def _unrelabel(rho: Relabeling, seq: FlipSeq) -> FlipSeq:
    return rho.inverse().seq(seq)


def _shortest(cands):
    return min(cands, key=lambda s: (len(s), format_sequence(s)))


# --- Lemma 2 applied directly ---------------------------------------------

def _prefix_length(tree: NcTree) -> int:
    i = 1
    while i < tree.n and (i, i + 1) in tree.edges:
        i += 1
    return i


def transform_lemma2(t1: NcTree, t2: NcTree) -> FlipSeq:
    """Optimal sequence when the two trees fit the prefix hypothesis under some relabeling."""
    if t1 == t2:
        return FlipSeq(t1)
    n = t1.n
    for reversed_ in (False, True):
        for r in range(n):
            rho = Relabeling(n, r, reversed_)
            a, b = rho.tree(t1), rho.tree(t2)
            if lemma2_cut(b) <= _prefix_length(a):
                return _unrelabel(rho, lemma2_transform(a, b, lemma2_cut(b)))
            if lemma2_cut(a) <= _prefix_length(b):
                return _unrelabel(rho, lemma2_transform(b, a, lemma2_cut(a)).reversed())
    raise PreconditionFailed("no relabeling puts the pair in prefix position")


# --- sections (2n - sqrt n) -----------------------------------------------

def sections(n: int) -> list[list[int]]:
    s = isqrt(n - 1) + 1 if n > 1 else 1
    return [list(range(lo, min(lo + s, n + 1))) for lo in range(1, n + 1, s)]


def empty_sections(tree: NcTree) -> list[list[int]]:
    """Sections with no tree edge having both endpoints inside."""
    out = []
    for sec in sections(tree.n):
        lo, hi = sec[0], sec[-1]
        if not any(lo <= a and b <= hi for a, b in tree.edges):
            out.append(sec)
    return out


def transform_sqrt(t1: NcTree, t2: NcTree) -> FlipSeq:
    """Through an edge-free section when one exists, and through border trees otherwise.

    Both routes are built when a largest edge-free section exists and the
    shorter one is kept.
    """
    if t1 == t2:
        return FlipSeq(t1)
    cands = [via_border_trees(t1, t2)]
    free = empty_sections(t1)
    if free:
        sec = max(free, key=len)
        rho, i = _tail_relabeling(t1.n, sec[0], sec[-1])
        a, b = rho.tree(t1), rho.tree(t2)
        cands.insert(0, _unrelabel(rho, _merge(a, FlipSeq(a), b, i)))
    return _shortest(cands)


# --- nice caterpillars ----------------------------------------------------

def caterpillar_labeling(t1: NcTree) -> tuple[Relabeling, int]:
    """Relabeling with a spine end at ``1`` and the smallest valid far-end label ``j``."""
    if not is_nice_caterpillar(t1):
        raise NotNiceCaterpillar(f"{t1} is not a nice caterpillar")
    n = t1.n
    nodes = spine(t1).nodes or [1]
    best = None
    for w, other in ((nodes[0], nodes[-1]), (nodes[-1], nodes[0])):
        for reversed_ in (False, True):
            rho = Relabeling.sending(n, w, 1, reversed_)
            j = rho(other)
            if lemma2_cut(rho.tree(t1)) <= j and (best is None or j < best[1]):
                best = (rho, j)
    if best is None:
        raise NoValidLabeling(f"no spine-end labeling of {t1} fits the prefix hypothesis")
    if best[1] > n // 2 + 1:
        log.info("caterpillar %s needs j=%d > n/2+1", t1, best[1])
    return best


def transform_caterpillar(t1: NcTree, t2: NcTree) -> FlipSeq:
    rho, j = caterpillar_labeling(t1)
    if t1 == t2:
        return FlipSeq(t1)
    a, b = rho.tree(t1), rho.tree(t2)
    return _unrelabel(rho, _merge(a, FlipSeq(a), b, j))


# --- Hamiltonian paths ----------------------------------------------------

def _reconnect(tree: NcTree, removed, i: int, prefer) -> NcTree:
    """Replace ``removed`` by an edge with an endpoint at most ``i`` that keeps a valid tree."""
    u, v = removed
    side = set()
    stack = [u]
    while stack:
        x = stack.pop()
        side.add(x)
        for y in tree.adj[x]:
            if y not in side and edge(x, y) != removed:
                stack.append(y)
    options = []
    for x in side:
        for y in range(1, tree.n + 1):
            if y in side or (x > i and y > i):
                continue
            e = edge(x, y)
            if e != removed:
                options.append(e)
    options.sort(key=lambda e: (e not in prefer, e))
    for e in options:
        if flip_problem(tree, (removed, e)) is None:
            return e
    raise ReconnectFailed(f"no reconnection for {removed} in {tree}")


def _ham_plan(t1: NcTree, t2: NcTree, first: int, last: int) -> FlipSeq:
    n = t1.n
    rho = Relabeling.sending(n, first, 1)
    i = len(arc(n, first, last))
    a, b = rho.tree(t1), rho.tree(t2)
    inner = sorted(e for e in a.edges if e[0] > i)
    grown = add_border_prefix(b, i, avoid=a.edges - set(inner)).end
    flips = []
    cur = a
    for r in inner:
        e = _reconnect(cur, r, i, grown.edges)
        flips.append((r, e))
        cur = cur.replace(r, e)
    return _unrelabel(rho, _merge(a, FlipSeq(a, tuple(flips)), b, i))


def transform_ham_path(t1: NcTree, t2: NcTree) -> FlipSeq:
    """Best of the two plans that keep the path's top or bottom hull arc."""
    stats = ham_path_stats(t1)
    if t1 == t2:
        return FlipSeq(t1)
    x1, xn = stats.order[0], stats.order[-1]
    return _shortest([_ham_plan(t1, t2, x1, xn), _ham_plan(t1, t2, xn, x1)])


# --- parallel edges -------------------------------------------------------

def clear_arc(tree: NcTree, i: int, prefer=frozenset()) -> FlipSeq:
    """Flip away every edge with both endpoints above ``i``, outermost edges first.

    Each removed edge is replaced by an edge from one of its endpoints to a
    label at most ``i``, so exactly one flip is spent per such edge.
    """
    flips = []
    cur = tree
    while True:
        inner = sorted(e for e in cur.edges if e[0] > i)
        if not inner:
            break
        exterior = [
            e for e in inner
            if not any(f != e and f[0] <= e[0] and e[1] <= f[1] for f in inner)
        ]
        done = False
        for e in exterior + [e for e in inner if e not in exterior]:
            options = sorted(
                (edge(x, end) for end in e for x in range(1, i + 1)),
                key=lambda g: (g not in prefer, g),
            )
            for g in options:
                if flip_problem(cur, (e, g)) is None:
                    flips.append((e, g))
                    cur = cur.replace(e, g)
                    done = True
                    break
            if done:
                break
        if not done:
            raise ReconnectFailed(f"cannot clear labels above {i} in {cur}")
    return FlipSeq(tree, tuple(flips))


def _side_plan(t1: NcTree, t2: NcTree, side: list[int]) -> FlipSeq:
    rho, i = _tail_relabeling(t1.n, side[0], side[-1])
    a, b = rho.tree(t1), rho.tree(t2)
    keep = frozenset(e for e in a.edges if e[0] <= i)
    grown = add_border_prefix(b, i, avoid=keep).end
    prep = clear_arc(a, i, prefer=grown.edges)
    return _unrelabel(rho, _merge(a, prep, b, i))


def transform_parallel(t1: NcTree, t2: NcTree) -> FlipSeq:
    """Clear the cheaper side of a maximum parallel chain, then merge."""
    if t1 == t2:
        return FlipSeq(t1)
    chain = max_parallel_chain(t1)
    return _shortest([_side_plan(t1, t2, chain.side_b), _side_plan(t1, t2, chain.side_a)])


# --- long subpaths --------------------------------------------------------

def long_path_candidates(t1: NcTree, t2: NcTree) -> dict:
    path = longest_path(t1)
    pc = classify_subpath(t1, path)
    return {
        "classification": pc,
        "parallel": transform_parallel(t1, t2),
        "border": via_border_trees(t1, t2),
    }


def transform_long_path(t1: NcTree, t2: NcTree) -> FlipSeq:
    """Shorter of the parallel-chain route and the border-tree route."""
    if t1 == t2:
        return FlipSeq(t1)
    c = long_path_candidates(t1, t2)
    return _shortest([c["parallel"], c["border"]])


# --- dispatcher -----------------------------------------------------------

@dataclass(frozen=True)
class Strategy:
    name: str
    run: object
    bound: object


STRATEGIES = {
    "lemma2": Strategy("lemma2", transform_lemma2, lambda t1, t2: half_delta(t1, t2)),
    "hampath": Strategy("hampath", transform_ham_path, lambda t1, t2: bound_three_halves(t1.n)),
    "caterpillar": Strategy("caterpillar", transform_caterpillar, lambda t1, t2: bound_three_halves(t1.n)),
    "longpath": Strategy("longpath", transform_long_path, lambda t1, t2: bound_long_path(t1)),
    "parallel": Strategy("parallel", transform_parallel, lambda t1, t2: bound_parallel(t1)),
    "sqrt": Strategy("sqrt", transform_sqrt, lambda t1, t2: bound_sqrt(t1.n)),
}


def run_strategy(name: str, t1: NcTree, t2: NcTree) -> FlipSeq:
    """Run one named strategy with ``t1`` in the structured role."""
    if t1.n != t2.n:
        raise MismatchedN(t1.n, t2.n)
    return STRATEGIES[name].run(t1, t2)


def transform_best(t1: NcTree, t2: NcTree) -> tuple[FlipSeq, list[dict]]:
    """Every applicable strategy in both orientations; the shortest valid sequence wins."""
    report = []
    found = []
    for name, strat in STRATEGIES.items():
        for orientation, (x, y) in (("forward", (t1, t2)), ("reverse", (t2, t1))):
            row = {"name": name, "orientation": orientation, "applicable": True,
                   "length": None, "bound": None, "valid": False}
            try:
                seq = strat.run(x, y)
            except PreconditionFailed:
                row["applicable"] = False
                report.append(row)
                continue
            if orientation == "reverse":
                seq = seq.reversed()
            row["bound"] = strat.bound(x, y)
            row["length"] = len(seq)
            try:
                validate_sequence(seq, t2)
                row["valid"] = True
                found.append(seq)
            except FlipForestError as exc:
                log.error("%s/%s produced an invalid sequence: %s", name, orientation, exc)
            report.append(row)
    return _shortest(found), report
