"""Embeddability into P-constructions and the finite forbidden families.

Every search here works on the graph's own vertex set, matching the
definition of F_n. For hereditary patterns (see ``is_hereditary``) this is
the same as embedding into a P-construction of any size. Choose a level-1 partition, check each edge is either covered
by the blow-up of E or sits inside one recursive part, then recurse into
recursive parts.

All searches are exhaustive and meant for desk-scale inputs. Caps raise
:class:`CapExceededError` instead of truncating.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import comb, factorial

from .constructions import PartSizeTree, construction_structure
from .pattern import Hypergraph, Pattern, pattern_automorphisms


class CapExceededError(RuntimeError):
    """An exhaustive search was asked to go beyond its configured size."""


def _env_int(name, default):
    return int(os.environ.get(name, default))


# largest C(n, k) for which all k-graphs on n vertices are enumerated
MAX_EDGE_SLOTS = _env_int("PATTERN_TURAN_MAX_EDGE_SLOTS", 21)
MAX_CANON_VERTICES = _env_int("PATTERN_TURAN_MAX_CANON_VERTICES", 10)
RIGIDITY_CAP = _env_int("PATTERN_TURAN_RIGIDITY_CAP", 8)


@dataclass
class EmbeddingWitness:
    """Branch (0-based legal sequence) of every vertex in the host construction."""

    assignment: dict

    def to_dict(self) -> dict:
        return {str(v): [i + 1 for i in b] for v, b in sorted(self.assignment.items())}


class _Embedder:
    def __init__(self, g: Hypergraph, p: Pattern):
        self.p = p
        self.edges = [tuple(e) for e in g.sorted_edges()]
        self.E = p.profiles
        self.R = p.R
        self.prefixes = set()
        for Y in p.E:
            for sub in product(*(range(a + 1) for a in Y)):
                self.prefixes.add(sub)
        self.memo = {}

    def _edges_in(self, S):
        return [e for e in self.edges if all(v in S for v in e)]

    def _profile(self, e, part):
        Y = [0] * self.p.m
        for v in e:
            Y[part[v]] += 1
        return tuple(Y)

    def _edge_ok(self, e, part, complete):
        """Whether edge ``e`` can still be realised at this level."""
        assigned = [v for v in e if v in part]
        if not assigned:
            return True
        first = part[assigned[0]]
        same = all(part[v] == first for v in assigned)
        if same and first in self.R:
            return True
        Y = [0] * self.p.m
        for v in assigned:
            Y[part[v]] += 1
        Y = tuple(Y)
        return Y in self.E if complete else Y in self.prefixes

    def level_one(self, S):
        """Yield level-1 assignments of S (vertex -> part) meeting the edge rule."""
        edges = self._edges_in(S)
        n = len(S)
        deg = {v: 0 for v in S}
        for e in edges:
            for v in e:
                deg[v] += 1
        order = sorted(S, key=lambda v: (-deg[v], v))
        incident = {v: [e for e in edges if v in e] for v in S}
        m, R = self.p.m, self.R
        part, sizes = {}, [0] * m

        def rec(idx):
            if idx == n:
                if n and any(sizes[i] == n for i in R):
                    return
                yield dict(part)
                return
            v = order[idx]
            for j in range(m):
                part[v] = j
                sizes[j] += 1
                if all(self._edge_ok(e, part, all(u in part for u in e)) for e in incident[v]):
                    yield from rec(idx + 1)
                sizes[j] -= 1
                del part[v]

        yield from rec(0)

    def deferred(self, S, part):
        """Recursive parts whose internal edges are not covered by the blow-up."""
        out = {}
        for e in self._edges_in(S):
            j = part[e[0]]
            if all(part[v] == j for v in e) and self._profile(e, part) not in self.E:
                out.setdefault(j, set()).update(e)
        return {j: frozenset(v for v in S if part[v] == j) for j in out}

    def complete(self, S, part):
        """Branches below this level, or None if a recursive part fails."""
        branches = {v: (part[v],) for v in S}
        for j, Sj in self.deferred(S, part).items():
            sub = self.solve(Sj)
            if sub is None:
                return None
            for v, b in sub.items():
                branches[v] = (j,) + b
        return branches

    def solve(self, S):
        S = frozenset(S)
        if S in self.memo:
            return self.memo[S]
        result = None
        if not self._edges_in(S):
            result = {v: () for v in S}
        else:
            for part in self.level_one(S):
                result = self.complete(S, part)
                if result is not None:
                    break
        self.memo[S] = result
        return result


def embeds_into_p_construction(f: Hypergraph, p: Pattern):
    """An EmbeddingWitness if ``f`` embeds into a P-construction, else None."""
    if f.k != p.k:
        raise ValueError(f"uniformity mismatch: graph k={f.k}, pattern k={p.k}")
    branches = _Embedder(f, p).solve(range(f.n))
    return None if branches is None else EmbeddingWitness(dict(sorted(branches.items())))


def is_embeddable(f: Hypergraph, p: Pattern) -> bool:
    return embeds_into_p_construction(f, p) is not None


# -- isomorphism ------------------------------------------------------------

def _refined_colors(f: Hypergraph) -> list:
    incident = [[] for _ in range(f.n)]
    for e in f.edges:
        for v in e:
            incident[v].append(e)
    colors = [0] * f.n
    n_classes = 1
    while True:
        sigs = []
        for v in range(f.n):
            nb = sorted(tuple(sorted(colors[u] for u in e if u != v)) for e in incident[v])
            sigs.append((colors[v], tuple(nb)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [ranks[s] for s in sigs]
        if len(ranks) == n_classes:
            return colors
        n_classes = len(ranks)


def canonical_form(f: Hypergraph, cap: int | None = None) -> bytes:
    """Isomorphism-invariant byte string.

    Vertices are split into colour classes by iterated degree refinement;
    the result is the lexicographically least edge list over all labellings
    that list classes in order.
    """
    cap = MAX_CANON_VERTICES if cap is None else cap
    if f.n > cap:
        raise CapExceededError(f"canonical_form: {f.n} vertices exceeds cap {cap}")
    colors = _refined_colors(f)
    classes = [[v for v in range(f.n) if colors[v] == c] for c in sorted(set(colors))]
    best = None
    for orders in product(*(permutations(c) for c in classes)):
        perm = [0] * f.n
        pos = 0
        for order in orders:
            for v in order:
                perm[v] = pos
                pos += 1
        key = sorted(tuple(sorted(perm[v] for v in e)) for e in f.edges)
        if best is None or key < best:
            best = key
    body = ";".join(",".join(map(str, e)) for e in best)
    return f"{f.n}:{f.k}:{colors and sorted(colors)}|{body}".encode()


def are_isomorphic(f: Hypergraph, g: Hypergraph) -> bool:
    return f.n == g.n and f.k == g.k and len(f) == len(g) and canonical_form(f) == canonical_form(g)


def _check_slots(n, k):
    if comb(n, k) > MAX_EDGE_SLOTS:
        raise CapExceededError(
            f"enumerating {k}-graphs on {n} vertices ({comb(n, k)} edge slots) exceeds cap {MAX_EDGE_SLOTS}"
        )


def graphs_up_to_iso(n: int, k: int, keep=None):
    """Isomorphism classes of k-graphs on n vertices, grouped by edge count.

    Built by adding one edge at a time; ``keep(g)`` restricts the search to a
    family closed under edge deletion (e.g. F-free graphs). Returns a list
    whose entry e holds the classes with e edges.
    """
    _check_slots(n, k)
    slots = list(combinations(range(n), k))
    empty = Hypergraph(n, k, frozenset())
    if keep is not None and not keep(empty):
        return []
    levels = [{canonical_form(empty): empty}]
    while levels[-1]:
        nxt = {}
        for g in levels[-1].values():
            for s in slots:
                if s in g.edges:
                    continue
                h = Hypergraph(n, k, g.edges | {s})
                key = canonical_form(h)
                if key in nxt:
                    continue
                if keep is None or keep(h):
                    nxt[key] = h
        levels.append(nxt)
    levels.pop()
    return [[lv[key] for key in sorted(lv)] for lv in levels]


# -- subgraphs and homomorphisms -------------------------------------------

def _map_search(f: Hypergraph, g: Hypergraph, injective: bool, count: bool):
    """Backtracking over maps V(f) -> V(g) sending edges to edges.

    Returns the number of such maps (count=True) or the first one found.
    Vertices of f outside every edge are handled in closed form.
    """
    gedges = g.edges
    incident = {}
    for e in f.edges:
        for v in e:
            incident.setdefault(v, []).append(e)
    active = sorted(incident, key=lambda v: (-len(incident[v]), v))
    idle = [v for v in range(f.n) if v not in incident]
    image = {}
    used = set()
    total = 0

    def edge_ok(e):
        img = [image[v] for v in e]
        return len(set(img)) == len(img) and tuple(sorted(img)) in gedges

    def rec(i):
        nonlocal total
        if i == len(active):
            if count:
                total += 1
                return None
            return dict(image)
        v = active[i]
        for w in range(g.n):
            if injective and w in used:
                continue
            image[v] = w
            if all(edge_ok(e) for e in incident[v] if all(u in image for u in e)):
                used.add(w)
                found = rec(i + 1)
                used.discard(w)
                if found is not None:
                    del image[v]
                    return found
            del image[v]
        return None

    if injective and f.n > g.n:
        return 0 if count else None
    found = rec(0)
    if count:
        free = g.n - len(active)
        factor = 1
        if injective:
            for j in range(len(idle)):
                factor *= free - j
        else:
            factor = g.n ** len(idle)
        return total * factor
    if found is None or (idle and g.n == 0):
        return None
    spare = iter(w for w in range(g.n) if not injective or w not in set(found.values()))
    for v in idle:
        found[v] = next(spare) if injective else 0
    return found


def find_subgraph(f: Hypergraph, g: Hypergraph):
    """An injective map embedding ``f`` into ``g`` (not induced), or None."""
    if f.k != g.k:
        return None
    return _map_search(f, g, injective=True, count=False)


def is_free(g: Hypergraph, family) -> bool:
    """True iff no member of ``family`` is a subgraph of ``g``."""
    return all(find_subgraph(F, g) is None for F in family)


def find_homomorphism(f: Hypergraph, g: Hypergraph):
    if f.k != g.k:
        return None
    return _map_search(f, g, injective=False, count=False)


def count_homomorphisms(f: Hypergraph, g: Hypergraph) -> int:
    return _map_search(f, g, injective=False, count=True)


# -- forbidden families and Turán numbers -----------------------------------

def _family_key(F: Hypergraph):
    return (F.n, len(F), canonical_form(F))


def minimal_members(family) -> list:
    """Members with no proper subgraph (fewer vertices or edges) in the family."""
    fam = sorted(family, key=_family_key)
    out = []
    for F in fam:
        if not any(find_subgraph(H, F) is not None for H in out):
            out.append(F)
    return out


def forbidden_family(p: Pattern, n_max: int, minimal: bool = False) -> list:
    """Non-embeddable k-graphs on at most n_max vertices, one per class.

    Ordered by vertex count, then edge count, then canonical form.
    """
    members = []
    for n in range(p.k, n_max + 1):
        _check_slots(n, p.k)
    for n in range(p.k, n_max + 1):
        for level in graphs_up_to_iso(n, p.k):
            members += [g for g in level if not is_embeddable(g, p)]
    members.sort(key=_family_key)
    return minimal_members(members) if minimal else members


@dataclass
class ExResult:
    n: int
    value: int
    extremal_graphs: list


def ex_bruteforce(n: int, family=None, p: Pattern | None = None, k: int | None = None) -> ExResult:
    """Exact ex(n, family) with every extremal graph up to isomorphism.

    With a pattern and no family, the family is the pattern's forbidden
    family on n vertices. Free graphs are grown one edge at a time from the
    empty graph, which reaches every free graph since freeness survives
    edge deletion.
    """
    if family is None:
        if p is None:
            raise ValueError("need a family or a pattern")
        family = forbidden_family(p, n)
    family = list(family)
    if k is None:
        k = p.k if p is not None else (family[0].k if family else None)
    if k is None:
        raise ValueError("uniformity unknown: pass k for an empty family")
    _check_slots(n, k)
    if not family:
        return ExResult(n, comb(n, k), [Hypergraph.complete(n, k)])
    core = minimal_members(family)
    levels = graphs_up_to_iso(n, k, keep=lambda g: is_free(g, core))
    if not levels:
        return ExResult(n, 0, [])
    return ExResult(n, len(levels) - 1, levels[-1])


# -- blow-ups ----------------------------------------------------------------

def blowup(f: Hypergraph, weights) -> Hypergraph:
    """Replace vertex i by weights[i] clones; clones of i get a contiguous block."""
    if len(weights) != f.n:
        raise ValueError("need one weight per vertex")
    blocks, off = [], 0
    for w in weights:
        blocks.append(range(off, off + w))
        off += w
    edges = set()
    for e in f.edges:
        for pick in product(*(blocks[v] for v in e)):
            edges.add(tuple(sorted(pick)))
    return Hypergraph(off, f.k, frozenset(edges))


def blowup_closure_contains(f: Hypergraph, family) -> bool:
    """True iff some blow-up of ``f`` contains a member of ``family``.

    Equivalent to a homomorphism from some member into ``f``.
    """
    return any(find_homomorphism(F, f) is not None for F in family)


# -- rigidity ----------------------------------------------------------------

def check_rigidity(t: PartSizeTree, p: Pattern, cap: int | None = None) -> bool:
    """Whether the construction of ``t`` is rigid.

    Every P-construction host on the same vertex set is tried through its
    level-1 partition U; hosts using at least two parts must place each
    level-1 part V_i inside U_{h(i)} for a single pattern automorphism h.
    """
    cap = RIGIDITY_CAP if cap is None else cap
    if t.is_empty:
        raise ValueError("the empty construction has no level-1 partition")
    if t.total > cap:
        raise CapExceededError(f"rigidity check on {t.total} vertices exceeds cap {cap}")
    g, branches = construction_structure(p, t)
    V = [[v for v in range(g.n) if branches[v][0] == i] for i in range(p.m)]
    autos = pattern_automorphisms(p)
    emb = _Embedder(g, p)
    S = frozenset(range(g.n))
    for part in emb.level_one(S):
        if len(set(part.values())) < 2:
            continue
        if emb.complete(S, part) is None:
            continue
        if not any(all(part[v] == h[i] for i in range(p.m) for v in V[i]) for h in autos):
            return False
    return True
