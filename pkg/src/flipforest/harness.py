"""Random instances, bound audits and the diameter probe."""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import asdict, dataclass, field

import numpy as np

from . import oracle
from .core import NcTree, half_delta, validate_sequence
from .errors import FlipForestError, PreconditionFailed
from .formats import format_tree
from .strategies import STRATEGIES, caterpillar_labeling
from .structure import (
    is_caterpillar,
    is_nice_caterpillar,
    longest_path,
    max_parallel_chain,
    max_strict_parallel_chain,
)

EXHAUSTIVE_MAX_N = 6
UNIFORM_MAX_N = 8


def random_tree(n: int, seed: int, uniform: bool = False) -> NcTree:
    """Deterministic random tree for ``(n, seed)``.

    The default walks all chords in a seeded random order and keeps each one
    that neither crosses nor closes a cycle.  The result is not uniformly
    distributed.  ``uniform`` picks from the full enumeration (``n <= 8``).
    """
    if n < 2:
        raise ValueError("need at least two points")
    if uniform:
        if n > UNIFORM_MAX_N:
            raise ValueError(f"uniform sampling is limited to n <= {UNIFORM_MAX_N}")
        trees = oracle.enumerate_trees(n)
        return trees[random.Random(seed).randrange(len(trees))]
    rows, cols = np.triu_indices(n, k=1)
    order = np.random.default_rng(seed).permutation(len(rows))
    ends_a, ends_b = rows[order] + 1, cols[order] + 1
    comp = list(range(n + 1))
    members = {v: [v] for v in range(1, n + 1)}
    # hi[v] / lo[v]: largest / smallest neighbour of v so far.  A chord (a, b)
    # crosses the forest iff a vertex strictly between a and b has a
    # neighbour outside [a, b].
    hi = [0] * (n + 2)
    lo = [n + 1] * (n + 2)
    kept: list = []
    for start in range(0, len(order), _CHUNK):
        a_s, b_s = ends_a[start:start + _CHUNK], ends_b[start:start + _CHUNK]
        # rejection is permanent, so chords already inside one component can be dropped in bulk
        comp_arr = np.asarray(comp)
        live = (comp_arr[a_s] != comp_arr[b_s]) & ~_crossing_mask(hi, lo, a_s, b_s)
        for a, b in zip(a_s[live].tolist(), b_s[live].tolist()):
            ca, cb = comp[a], comp[b]
            if ca == cb:
                continue
            if b - a > 1 and (max(hi[a + 1:b]) > b or min(lo[a + 1:b]) < a):
                continue
            kept.append((a, b))
            hi[a] = max(hi[a], b)
            lo[b] = min(lo[b], a)
            if len(members[ca]) < len(members[cb]):
                ca, cb = cb, ca
            for v in members[cb]:
                comp[v] = ca
            members[ca].extend(members.pop(cb))
            if len(kept) == n - 1:
                return NcTree(n, frozenset(kept))
    return NcTree(n, frozenset(kept))


_CHUNK = 512


def _sparse_table(values, op):
    table = [np.asarray(values)]
    step = 1
    while 2 * step <= len(values):
        prev = table[-1]
        table.append(op(prev[:-step], prev[step:]))
        step *= 2
    return table


def _crossing_mask(hi, lo, a_s, b_s):
    """Vectorised form of the per-chord crossing test, via range max/min tables."""
    left, right = a_s + 1, b_s - 1
    inner = right >= left
    out = np.zeros(len(a_s), dtype=bool)
    if not inner.any():
        return out
    left, right = left[inner], right[inner]
    level = np.floor(np.log2(right - left + 1)).astype(int)
    tail = right - (1 << level) + 1
    his = _sparse_table(hi, np.maximum)
    los = _sparse_table(lo, np.minimum)
    top = np.empty(len(left), dtype=np.int64)
    bot = np.empty(len(left), dtype=np.int64)
    for k in np.unique(level):
        sel = level == k
        top[sel] = np.maximum(his[k][left[sel]], his[k][tail[sel]])
        bot[sel] = np.minimum(los[k][left[sel]], los[k][tail[sel]])
    out[inner] = (top > b_s[inner]) | (bot < a_s[inner])
    return out


COLUMNS = [
    "n", "pair", "tree1", "tree2", "half_delta", "exact",
    "t_parallel", "t_strict", "path_t", "caterpillar", "nice", "min_j",
]
STRATEGY_NAMES = list(STRATEGIES)
for _name in STRATEGY_NAMES:
    COLUMNS += [f"{_name}_length", f"{_name}_bound"]


@dataclass
class AuditRow:
    n: int
    pair: str
    tree1: str
    tree2: str
    half_delta: int
    exact: int | None
    t_parallel: int
    t_strict: int
    path_t: int
    caterpillar: bool
    nice: bool
    min_j: int | None
    lengths: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    def flat(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if k in COLUMNS}
        for name in STRATEGY_NAMES:
            d[f"{name}_length"] = self.lengths.get(name)
            d[f"{name}_bound"] = self.bounds.get(name)
        return d

    def check(self) -> list[str]:
        """Every violated inequality of ``bound >= length >= exact >= half_delta``."""
        out = []
        if self.exact is not None and self.exact < self.half_delta:
            out.append(f"exact {self.exact} < |D|/2 {self.half_delta}")
        for name, length in self.lengths.items():
            bound = self.bounds[name]
            if length > bound:
                out.append(f"{name} length {length} > bound {bound}")
            if self.exact is not None and length < self.exact:
                out.append(f"{name} length {length} < exact {self.exact}")
            if length < self.half_delta:
                out.append(f"{name} length {length} < |D|/2 {self.half_delta}")
        return out


def _edge_str(tree: NcTree) -> str:
    return " ".join(f"{a}-{b}" for a, b in sorted(tree.edges))


def audit_pair(t1: NcTree, t2: NcTree, pair: str, exact: int | None = None) -> AuditRow:
    """Run every applicable strategy with ``t1`` in the structured role."""
    nice = is_caterpillar(t1) and is_nice_caterpillar(t1)
    row = AuditRow(
        n=t1.n,
        pair=pair,
        tree1=_edge_str(t1),
        tree2=_edge_str(t2),
        half_delta=half_delta(t1, t2),
        exact=exact,
        t_parallel=max_parallel_chain(t1).t,
        t_strict=max_strict_parallel_chain(t1).t,
        path_t=len(longest_path(t1)) - 1,
        caterpillar=is_caterpillar(t1),
        nice=nice,
        min_j=caterpillar_labeling(t1)[1] if nice else None,
    )
    for name, strat in STRATEGIES.items():
        try:
            seq = strat.run(t1, t2)
        except PreconditionFailed:
            continue
        try:
            validate_sequence(seq, t2)
        except FlipForestError as exc:
            row.violations.append(f"{name} invalid sequence: {exc}")
            continue
        row.lengths[name] = len(seq)
        row.bounds[name] = strat.bound(t1, t2)
    row.violations += row.check()
    return row


def _pairs(n: int, samples: int, rng: random.Random):
    if n <= EXHAUSTIVE_MAX_N:
        trees = oracle.enumerate_trees(n)
        for a, t1 in enumerate(trees):
            for b, t2 in enumerate(trees):
                yield f"{a}:{b}", t1, t2
        return
    for k in range(samples):
        s1, s2 = rng.randrange(2**31), rng.randrange(2**31)
        yield f"s{k}:{s1}:{s2}", random_tree(n, s1), random_tree(n, s2)


def audit(n_set, samples: int, seed: int, exact_max_n: int = 7) -> list[AuditRow]:
    """Exhaustive pairs for ``n <= 6``, ``samples`` seeded random pairs above."""
    rows = []
    for n in sorted(set(n_set)):
        rng = random.Random(f"{seed}:{n}")
        dist = graph = None
        if n <= min(exact_max_n, oracle.max_n()):
            graph = oracle.flip_graph(n)
            dist = oracle.distance_matrix(n)
        for pair, t1, t2 in _pairs(n, samples, rng):
            exact = None
            if dist is not None:
                exact = int(dist[graph.id(t1), graph.id(t2)])
            rows.append(audit_pair(t1, t2, pair, exact))
    rows.sort(key=lambda r: (r.n, r.pair))
    return rows


def violations(rows) -> list[dict]:
    return [
        {"n": r.n, "pair": r.pair, "tree1": r.tree1, "tree2": r.tree2, "violations": r.violations}
        for r in rows
        if r.violations
    ]


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r.flat())
    return buf.getvalue()


def rows_to_json(rows) -> str:
    doc = {"columns": COLUMNS, "rows": [r.flat() for r in rows], "violations": violations(rows)}
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def conjecture_probe(n: int) -> dict:
    """Diameter of the flip graph against ``3n/2``; observational only."""
    diam, (t1, t2) = oracle.diameter(n)
    return {
        "n": n,
        "max_distance": diam,
        "witness_pair": [format_tree(t1), format_tree(t2)],
        "ratio": diam / (1.5 * n),
    }
