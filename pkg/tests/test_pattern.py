from itertools import permutations

import pytest
from hypothesis import given, settings

from conftest import patterns
from pattern_turan.pattern import (
    Hypergraph,
    Pattern,
    complete_graph_pattern,
    density_one_check,
    link,
    link_dominance_report,
    pattern_automorphisms,
    permute_profile,
    remove_index,
    validate_pattern,
)


def test_validate_example_is_clean(example):
    assert validate_pattern(example) == []


def test_validate_reports_wrong_weight():
    problems = validate_pattern(Pattern(3, 2, [(1, 1)], {0}))
    assert len(problems) == 1 and "profile weight != k" in problems[0]


def test_validate_reports_r_out_of_range():
    problems = validate_pattern(Pattern(3, 2, [(1, 2)], {2}))
    assert len(problems) == 1 and "R index out of range" in problems[0]


def test_validate_reports_duplicates_and_length():
    problems = validate_pattern(Pattern(3, 2, [(1, 2), (1, 2), (1, 1, 1)], set()))
    assert any("duplicate" in s for s in problems)
    assert any("length" in s for s in problems)


@pytest.mark.parametrize("i, expected", [(0, {(0, 2)}), (1, {(1, 1)})])
def test_link_example(example, i, expected):
    assert link(example, i) == expected


def test_link_empty_and_range():
    p = Pattern(3, 2, [], {0})
    assert link(p, 0) == set() and link(p, 1) == set()
    with pytest.raises(IndexError):
        link(p, 2)


def test_remove_index_example(example):
    q = remove_index(example, 1)
    assert (q.m, q.E, q.R) == (1, (), frozenset({0}))


def test_remove_index_nonminimal(nonminimal):
    q = remove_index(nonminimal, 2)
    assert (q.m, q.E, q.R) == (2, ((1, 1),), frozenset())


def test_remove_index_unused_part_keeps_profiles():
    p = Pattern(2, 3, [(1, 1, 0)], frozenset())
    assert remove_index(p, 2).E == ((1, 1),)


def test_remove_last_part_gives_empty_pattern():
    q = remove_index(Pattern(3, 1, [(3,)], frozenset()), 0)
    assert (q.m, q.E, q.R) == (0, (), frozenset())


def test_automorphisms_complete_pattern():
    assert len(pattern_automorphisms(complete_graph_pattern(4, 2))) == 24
    assert len(pattern_automorphisms(complete_graph_pattern(4, 3))) == 24


def test_automorphisms_example_is_trivial(example):
    # the swap sends (1,2) to (2,1), which is not a profile
    assert permute_profile((1, 2), (1, 0)) not in example.profiles
    assert pattern_automorphisms(example) == [(0, 1)]


def test_automorphisms_single_part():
    assert pattern_automorphisms(Pattern(3, 1, [(3,)], frozenset())) == [(0,)]


def test_density_one_conditions(example):
    assert density_one_check(Pattern(3, 1, [(3,)], frozenset()))
    assert density_one_check(Pattern(3, 2, [(2, 1)], {0}))
    assert not density_one_check(Pattern(3, 2, [(2, 1)], frozenset()))
    assert not density_one_check(example)


def test_dominance_nonminimal(nonminimal):
    pairs = {(d.i, d.j) for d in link_dominance_report(nonminimal)}
    assert pairs == {(1, 2), (2, 1)}
    assert all(d.violates for d in link_dominance_report(nonminimal))


def test_dominance_example_empty(example):
    assert link_dominance_report(example) == []


def test_dominance_empty_E():
    p = Pattern(3, 3, [], frozenset())
    assert len(link_dominance_report(p)) == 6


@given(patterns())
@settings(max_examples=80, deadline=None)
def test_remove_index_link_consistency(p):
    for i in range(p.m):
        q = remove_index(p, i)
        for j in range(p.m):
            if j == i:
                continue
            jj = j - (j > i)
            expected = {A[:i] + A[i + 1:] for A in link(p, j) if A[i] == 0}
            assert link(q, jj) == expected


@given(patterns(max_m=4))
@settings(max_examples=60, deadline=None)
def test_automorphisms_form_a_group(p):
    autos = set(pattern_automorphisms(p))
    ident = tuple(range(p.m))
    assert ident in autos
    for h in autos:
        inv = [0] * p.m
        for i, hi in enumerate(h):
            inv[hi] = i
        assert tuple(inv) in autos
        for g in autos:
            assert tuple(h[g[i]] for i in range(p.m)) in autos


@given(patterns(max_m=4))
@settings(max_examples=60, deadline=None)
def test_automorphisms_match_brute_force(p):
    brute = [h for h in permutations(range(p.m))
             if {h[i] for i in p.R} == p.R and {permute_profile(Y, h) for Y in p.E} == p.profiles]
    assert pattern_automorphisms(p) == sorted(brute)


@given(patterns())
@settings(max_examples=60, deadline=None)
def test_density_one_invariant_under_automorphisms(p):
    for h in pattern_automorphisms(p):
        assert density_one_check(p.relabel(h)) == density_one_check(p)


def test_hypergraph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Hypergraph(3, 3, frozenset({(0, 1, 3)}))
    with pytest.raises(ValueError):
        Hypergraph(3, 3, frozenset({(0, 1)}))


def test_hypergraph_basics():
    g = Hypergraph.complete(4, 3)
    assert len(g) == 4 and g.degrees() == [3, 3, 3, 3]
    assert len(g.delete_vertex(0)) == 1
    assert g.link(0) == {(1, 2), (1, 3), (2, 3)}
