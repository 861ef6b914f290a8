"""Exact combinatorics of P-constructions.

A construction is described by a :class:`PartSizeTree`: the level-1 part
sizes plus, for each recursive part, the tree used inside it. The maximum
edge count ``p_n`` satisfies

    p_n = max(0, max_{n_1+...+n_m = n} blow(n_1..n_m) + sum_{i in R} p_{n_i})

with ``n_i < n`` for recursive parts. Parts already complete through the
profile k*e_i are left out of the recursive sum since their edges coincide.
All counts are exact Python ints.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb

from .pattern import Hypergraph, Pattern, PatternError


@dataclass(frozen=True)
class PartSizeTree:
    """Part sizes of one P-construction at every level.

    ``sizes == ()`` is the empty construction on ``total`` vertices. A
    recursive part with no entry in ``children`` spans no edges.
    """

    total: int
    sizes: tuple = ()
    children: tuple = field(default=())  # sorted (part index, PartSizeTree) pairs

    @classmethod
    def stop(cls, n: int) -> "PartSizeTree":
        return cls(n)

    @classmethod
    def of(cls, sizes, children=None) -> "PartSizeTree":
        children = children or {}
        return cls(sum(sizes), tuple(sizes), tuple(sorted(children.items())))

    @property
    def is_empty(self) -> bool:
        return not self.sizes

    def child(self, i):
        for j, t in self.children:
            if j == i:
                return t
        return None

    def to_dict(self) -> dict:
        """1-based JSON-friendly form."""
        if self.is_empty:
            return {"total": self.total, "empty": True}
        return {
            "total": self.total,
            "sizes": list(self.sizes),
            "children": {str(i + 1): t.to_dict() for i, t in self.children},
        }

    @classmethod
    def from_dict(cls, d) -> "PartSizeTree":
        if d.get("empty"):
            return cls.stop(d["total"])
        ch = {int(i) - 1: cls.from_dict(c) for i, c in d.get("children", {}).items()}
        return cls.of(d["sizes"], ch)


def tree_violations(p: Pattern, t: PartSizeTree) -> list:
    problems = []
    if t.is_empty:
        return problems
    if len(t.sizes) != p.m:
        return [f"size vector has length {len(t.sizes)} != m={p.m}"]
    if any(s < 0 for s in t.sizes):
        problems.append("negative part size")
    if sum(t.sizes) != t.total:
        problems.append("part sizes do not sum to the total")
    for i in p.R:
        if t.total > 0 and t.sizes[i] >= t.total:
            problems.append(f"recursive part {i + 1} is the whole vertex set")
    for i, c in t.children:
        if i not in p.R:
            problems.append(f"child at non-recursive part {i + 1}")
        elif c.total != t.sizes[i]:
            problems.append(f"child at part {i + 1} has {c.total} vertices, part has {t.sizes[i]}")
        problems += tree_violations(p, c)
    return problems


def blowup_edge_count(p: Pattern, sizes) -> int:
    """Number of k-sets whose profile w.r.t. parts of the given sizes lies in E."""
    total = 0
    for Y in p.E:
        c = 1
        for s, a in zip(sizes, Y):
            c *= comb(s, a)
            if not c:
                break
        total += c
    return total


def recursive_gain_parts(p: Pattern) -> list:
    """Indices of R whose recursion can add edges.

    If k*e_i is in E the blow-up already makes V_i complete, so a construction
    inside V_i adds nothing and must not be counted twice.
    """
    out = []
    for i in sorted(p.R):
        full = [0] * p.m
        full[i] = p.k
        if tuple(full) not in p.profiles:
            out.append(i)
    return out


def compositions(n: int, m: int):
    """All (n_1..n_m) of non-negative integers with sum n, lexicographic."""
    if m == 0:
        if n == 0:
            yield ()
        return
    if m == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, m - 1):
            yield (first,) + rest


@dataclass
class PnResult:
    n: int
    value: int
    witness: PartSizeTree
    n_optimal: int  # distinct optimal level-1 size vectors


class _PnTable:
    """Bottom-up table of p_0..p_N for one pattern, extended on demand."""

    def __init__(self, p: Pattern):
        self.p = p
        self.rows = []  # (value, best sizes or None, count)
        self.trees = {}

    def extend(self, n: int):
        p = self.p
        R = sorted(p.R)
        gain = recursive_gain_parts(p)
        while len(self.rows) <= n:
            N = len(self.rows)
            if N == 0:
                self.rows.append((0, None, 1))
                continue
            best, arg, count = 0, None, 0
            for sizes in compositions(N, p.m):
                if any(sizes[i] == N for i in R):
                    continue
                val = blowup_edge_count(p, sizes) + sum(self.rows[sizes[i]][0] for i in gain)
                if arg is None or val > best:
                    best, arg, count = val, sizes, 1
                elif val == best:
                    count += 1
            if best == 0:
                arg = None
            self.rows.append((best, arg, count))

    def tree(self, n: int) -> PartSizeTree:
        if n in self.trees:
            return self.trees[n]
        value, sizes, _ = self.rows[n]
        if sizes is None:
            t = PartSizeTree.stop(n)
        else:
            children = {}
            for i in recursive_gain_parts(self.p):
                if self.rows[sizes[i]][0] > 0:
                    children[i] = self.tree(sizes[i])
            t = PartSizeTree.of(sizes, children)
        self.trees[n] = t
        return t


_TABLES = {}


def _table(p: Pattern, n: int) -> _PnTable:
    t = _TABLES.get(p)
    if t is None:
        t = _TABLES[p] = _PnTable(p)
    t.extend(n)
    return t


def max_pn(p: Pattern, n: int) -> PnResult:
    """Exact p_n with one optimal tree.

    Among optimal level-1 size vectors the lexicographically smallest is
    kept; when p_n = 0 the witness is the empty construction.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    table = _table(p, n)
    value, _, count = table.rows[n]
    return PnResult(n, value, table.tree(n), count)


def pn_values(p: Pattern, n_max: int) -> list:
    table = _table(p, n_max)
    return [row[0] for row in table.rows[: n_max + 1]]


def ratio_sequence(p: Pattern, n_max: int) -> list:
    """Rows (n, p_n, p_n / C(n, k)) for n = k..n_max, densities exact."""
    if n_max < p.k:
        raise ValueError(f"n_max={n_max} is below k={p.k}")
    values = pn_values(p, n_max)
    return [(n, values[n], Fraction(values[n], comb(n, p.k))) for n in range(p.k, n_max + 1)]


def construction_structure(p: Pattern, t: PartSizeTree):
    """Build the construction of ``t``; also return every vertex's branch.

    Vertices are labelled depth first: part 1 (with everything nested in
    it) comes first, then part 2, and so on. Branches are 0-based tuples.
    """
    problems = tree_violations(p, t)
    if problems:
        raise PatternError("; ".join(problems))
    edges = set()
    branches = [()] * t.total

    def fill(node: PartSizeTree, start: int, prefix: tuple):
        if node.is_empty:
            for v in range(start, start + node.total):
                branches[v] = prefix
            return
        blocks, off = [], start
        for s in node.sizes:
            blocks.append(range(off, off + s))
            off += s
        for Y in p.E:
            pools = [combinations(blocks[i], a) for i, a in enumerate(Y) if a]
            for parts in product(*pools):
                edges.add(tuple(sorted(v for part in parts for v in part)))
        for i, block in enumerate(blocks):
            child = node.child(i)
            if child is not None:
                fill(child, block.start, prefix + (i,))
            else:
                for v in block:
                    branches[v] = prefix + (i,)

    fill(t, 0, ())
    return Hypergraph(t.total, p.k, frozenset(edges)), branches


def build_construction(p: Pattern, t: PartSizeTree) -> Hypergraph:
    return construction_structure(p, t)[0]


def tree_edge_count(p: Pattern, t: PartSizeTree) -> int:
    if t.is_empty:
        return 0
    gain = recursive_gain_parts(p)
    return blowup_edge_count(p, t.sizes) + sum(tree_edge_count(p, c) for i, c in t.children if i in gain)


def all_part_size_trees(p: Pattern, n: int):
    """Every PartSizeTree on n vertices (exhaustive, for small n only)."""
    yield PartSizeTree.stop(n)
    if n == 0:
        return
    R = sorted(p.R)
    for sizes in compositions(n, p.m):
        if any(sizes[i] == n for i in R):
            continue
        # each recursive part independently gets no child or any tree on its size
        options = [[None] + list(all_part_size_trees(p, sizes[i])) for i in R]
        for choice in product(*options):
            children = {i: c for i, c in zip(R, choice) if c is not None}
            yield PartSizeTree.of(sizes, children)


def random_part_size_tree(p: Pattern, n: int, rng, stop_prob=0.2, depth=0) -> PartSizeTree:
    """A random valid tree on n vertices; ``rng`` is a numpy Generator."""
    if n == 0 or p.m == 0 or rng.random() < stop_prob * (depth > 0):
        return PartSizeTree.stop(n)
    R = sorted(p.R)
    if len(R) == p.m and (n == 1 or p.m == 1):
        return PartSizeTree.stop(n)  # no split keeps every recursive part proper
    while True:
        sizes = tuple(int(s) for s in rng.multinomial(n, [1 / p.m] * p.m))
        if not any(sizes[i] == n for i in R):
            break
    children = {}
    for i in R:
        if sizes[i] and rng.random() < 0.7:
            children[i] = random_part_size_tree(p, sizes[i], rng, stop_prob, depth + 1)
    return PartSizeTree.of(sizes, children)


@dataclass
class DegreeReport:
    min: int
    max: int
    argmin: int


def min_degree_report(g: Hypergraph) -> DegreeReport:
    deg = g.degrees()
    if not deg:
        return DegreeReport(0, 0, -1)
    lo = min(deg)
    return DegreeReport(lo, max(deg), deg.index(lo))
