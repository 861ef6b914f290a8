"""Text formats for patterns and hypergraphs.

Pattern file::

    # comment
    3 2          <- k m
    R: 1         <- recursive parts, 1-based, possibly empty
    1 2          <- one profile per line, m multiplicities

Hypergraph file: first line ``n k``, then one edge per line as sorted
0-based vertices.
"""
from __future__ import annotations

from pathlib import Path

from .pattern import Hypergraph, Pattern, PatternError, validate_pattern


def _content_lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_pattern(text: str) -> Pattern:
    lines = list(_content_lines(text))
    if len(lines) < 2:
        raise PatternError("pattern file needs a 'k m' line and an 'R:' line")
    try:
        k, m = (int(t) for t in lines[0].split())
    except ValueError:
        raise PatternError(f"bad header line {lines[0]!r}, expected 'k m'") from None
    if not lines[1].startswith("R:"):
        raise PatternError(f"second line must start with 'R:', got {lines[1]!r}")
    R = [int(t) - 1 for t in lines[1][2:].split()]
    profiles = []
    for line in lines[2:]:
        Y = tuple(int(t) for t in line.split())
        if Y in profiles:
            raise PatternError(f"duplicate profile {Y}")
        profiles.append(Y)
    if len(set(R)) != len(R):
        raise PatternError("duplicate index in R")
    p = Pattern(k, m, profiles, frozenset(R))
    problems = validate_pattern(p)
    if problems:
        raise PatternError("; ".join(problems))
    return p


def format_pattern(p: Pattern) -> str:
    lines = [f"{p.k} {p.m}", "R: " + " ".join(str(i + 1) for i in sorted(p.R))]
    lines += [" ".join(map(str, Y)) for Y in p.E]
    return "\n".join(lines) + "\n"


def read_pattern(path) -> Pattern:
    return parse_pattern(Path(path).read_text())


def write_pattern(p: Pattern, path):
    Path(path).write_text(format_pattern(p))


def parse_hypergraph(text: str) -> Hypergraph:
    lines = list(_content_lines(text))
    if not lines:
        raise PatternError("empty hypergraph file")
    try:
        n, k = (int(t) for t in lines[0].split())
    except ValueError:
        raise PatternError(f"bad header line {lines[0]!r}, expected 'n k'") from None
    edges = []
    for line in lines[1:]:
        e = tuple(sorted(int(t) for t in line.split()))
        if len(e) != k:
            raise PatternError(f"edge {line!r} does not have {k} vertices")
        edges.append(e)
    if len(set(edges)) != len(edges):
        raise PatternError("duplicate edge")
    return Hypergraph(n, k, frozenset(edges))


def format_hypergraph(g: Hypergraph) -> str:
    lines = [f"{g.n} {g.k}"] + [" ".join(map(str, e)) for e in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_hypergraph(path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())


def write_hypergraph(g: Hypergraph, path):
    Path(path).write_text(format_hypergraph(g))
