"""Patterns, profiles and finite k-graphs.

Parts are indexed from 0 in the Python API. File formats, CLI output and
human-facing reports use 1-based part indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import factorial

Profile = tuple  # tuple[int, ...] of multiplicities, length m, summing to k


class PatternError(ValueError):
    """Raised when a pattern or hypergraph violates its invariants."""


@dataclass(frozen=True)
class Pattern:
    """A pattern (m, E, R) over k-multisets.

    ``E`` holds profiles as multiplicity tuples, ``R`` holds 0-based
    recursive part indices.
    """

    k: int
    m: int
    E: tuple = ()
    R: frozenset = frozenset()

    def __post_init__(self):
        # keep input order-independent but preserve duplicates for validation
        object.__setattr__(self, "E", tuple(sorted(tuple(int(a) for a in Y) for Y in self.E)))
        object.__setattr__(self, "R", frozenset(int(i) for i in self.R))

    @property
    def profiles(self) -> frozenset:
        return frozenset(self.E)

    def check(self) -> "Pattern":
        problems = validate_pattern(self)
        if problems:
            raise PatternError("; ".join(problems))
        return self

    def relabel(self, h) -> "Pattern":
        """Pattern with part ``i`` renamed to ``h[i]``."""
        return Pattern(self.k, self.m, [permute_profile(Y, h) for Y in self.E], {h[i] for i in self.R})

    def __str__(self):
        E = ", ".join("(" + ",".join(map(str, Y)) + ")" for Y in self.E)
        R = ",".join(str(i + 1) for i in sorted(self.R))
        return f"P(k={self.k}, m={self.m}, E={{{E}}}, R={{{R}}})"


@dataclass(frozen=True)
class Hypergraph:
    """A k-graph on vertices ``0..n-1`` with edges stored as sorted tuples."""

    n: int
    k: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        edges = frozenset(tuple(sorted(int(v) for v in e)) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        for e in edges:
            if len(set(e)) != self.k:
                raise PatternError(f"edge {e} does not have {self.k} distinct vertices")
            if e[0] < 0 or e[-1] >= self.n:
                raise PatternError(f"edge {e} has a vertex outside 0..{self.n - 1}")

    def __len__(self):
        return len(self.edges)

    @classmethod
    def complete(cls, n: int, k: int) -> "Hypergraph":
        return cls(n, k, frozenset(combinations(range(n), k)))

    @property
    def density(self):
        from fractions import Fraction
        from math import comb

        total = comb(self.n, self.k)
        return Fraction(len(self.edges), total) if total else Fraction(0)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def degrees(self) -> list:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def induced(self, vertices) -> "Hypergraph":
        """Induced subgraph on ``vertices``, relabelled in increasing order."""
        vs = sorted(vertices)
        index = {v: i for i, v in enumerate(vs)}
        edges = [tuple(index[v] for v in e) for e in self.edges if all(v in index for v in e)]
        return Hypergraph(len(vs), self.k, frozenset(edges))

    def delete_vertex(self, v: int) -> "Hypergraph":
        return self.induced([u for u in range(self.n) if u != v])

    def relabel(self, perm) -> "Hypergraph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return Hypergraph(self.n, self.k, frozenset(tuple(perm[v] for v in e) for e in self.edges))

    def link(self, x: int) -> set:
        return {tuple(v for v in e if v != x) for e in self.edges if x in e}


def permute_profile(Y, h) -> tuple:
    out = [0] * len(Y)
    for i, a in enumerate(Y):
        out[h[i]] = a
    return tuple(out)


def simple_profile(m: int, support) -> tuple:
    Y = [0] * m
    for i in support:
        Y[i] += 1
    return tuple(Y)


def validate_pattern(p: Pattern) -> list:
    """Every invariant violation of ``p`` as a readable message."""
    problems = []
    if p.k < 2:
        problems.append(f"uniformity k={p.k} < 2")
    if p.m < 0:
        problems.append(f"part count m={p.m} < 0")
    seen = set()
    for Y in p.E:
        if len(Y) != p.m:
            problems.append(f"profile {Y} has length {len(Y)} != m={p.m}")
            continue
        if any(a < 0 for a in Y):
            problems.append(f"profile {Y} has a negative multiplicity")
        if sum(Y) != p.k:
            problems.append(f"profile weight != k: {Y} has weight {sum(Y)}, k={p.k}")
        if Y in seen:
            problems.append(f"duplicate profile {Y}")
        seen.add(Y)
    for i in sorted(p.R):
        if not 0 <= i < p.m:
            problems.append(f"R index out of range: part {i + 1} with m={p.m}")
    return problems


def _check_index(p: Pattern, i: int):
    if not 0 <= i < p.m:
        raise IndexError(f"part index {i} out of range for m={p.m}")


def link(p: Pattern, i: int) -> frozenset:
    """The (k-1)-profiles A with A + e_i in E."""
    _check_index(p, i)
    return frozenset(Y[:i] + (Y[i] - 1,) + Y[i + 1:] for Y in p.E if Y[i] > 0)


def remove_index(p: Pattern, i: int) -> Pattern:
    """Drop part ``i``: delete profiles meeting it and take it out of R."""
    _check_index(p, i)
    E = [Y[:i] + Y[i + 1:] for Y in p.E if Y[i] == 0]
    R = {j - (j > i) for j in p.R if j != i}
    return Pattern(p.k, p.m - 1, E, R)


def _index_signature(p: Pattern, i: int) -> tuple:
    return (i in p.R, tuple(sorted(Y[i] for Y in p.E)))


def pattern_automorphisms(p: Pattern) -> list:
    """All permutations h (h[i] is the image of i) fixing R and E setwise.

    Candidates are restricted to maps preserving a per-index signature, so
    the search stays small for patterns with few symmetries.
    """
    E = p.profiles
    sig = [_index_signature(p, i) for i in range(p.m)]
    found = []

    def extend(h, used):
        i = len(h)
        if i == p.m:
            if all(permute_profile(Y, h) in E for Y in p.E):
                found.append(tuple(h))
            return
        for j in range(p.m):
            if j not in used and sig[j] == sig[i]:
                h.append(j)
                used.add(j)
                extend(h, used)
                used.discard(j)
                h.pop()

    extend([], set())
    return sorted(found)


def density_one_check(p: Pattern) -> bool:
    """Syntactic test for a Lagrangian equal to one.

    True iff some part carries a full profile k*e_i, or some recursive part i
    has a profile (k-1)*e_i + e_j with j != i.
    """
    E = p.profiles
    if p.m == 1 and p.R:
        return False  # the only part must stay proper, so nothing is ever built
    for i in range(p.m):
        full = [0] * p.m
        full[i] = p.k
        if tuple(full) in E:
            return True
        if i in p.R:
            for j in range(p.m):
                if j != i:
                    Y = [0] * p.m
                    Y[i] = p.k - 1
                    Y[j] = 1
                    if tuple(Y) in E:
                        return True
    return False


def is_hereditary(p: Pattern) -> bool:
    """True iff induced subgraphs of P-constructions are again P-constructions.

    Collapsing a recursive part that swallows the whole vertex set drops the
    edges with profile k*e_i, so heredity (and the monotone ratio p_n/C(n,k))
    needs k*e_i outside E for every i in R.
    """
    for i in p.R:
        full = [0] * p.m
        full[i] = p.k
        if tuple(full) in p.profiles:
            return False
    return True


@dataclass(frozen=True)
class Dominance:
    i: int
    j: int
    violates: bool  # True when the pair contradicts minimality


def link_dominance_report(p: Pattern) -> list:
    """Ordered pairs (i, j), i != j, with link(i) contained in link(j).

    A minimal pattern only admits such a pair when i is recursive, j is not,
    and the links differ; every other pair is flagged.
    """
    links = [link(p, i) for i in range(p.m)]
    out = []
    for i, j in permutations(range(p.m), 2):
        if links[i] <= links[j]:
            ok = i in p.R and j not in p.R and links[i] != links[j]
            out.append(Dominance(i, j, not ok))
    return out


def profile_coefficient(Y) -> int:
    """k! / prod(Y_i!), the number of orderings of the multiset."""
    c = factorial(sum(Y))
    for a in Y:
        c //= factorial(a)
    return c


def complete_graph_pattern(m: int, k: int) -> Pattern:
    """(m, all simple k-subsets of [m], {})."""
    return Pattern(k, m, [simple_profile(m, S) for S in combinations(range(m), k)], frozenset())


def hypergraph_pattern(g: Hypergraph) -> Pattern:
    return Pattern(g.k, g.n, [simple_profile(g.n, e) for e in g.edges], frozenset())


def example_pattern() -> Pattern:
    """The two-part 3-graph pattern with E = {<1,2,2>} and R = {1}."""
    return Pattern(3, 2, [(1, 2)], {0})
