from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load_expect, load_fixture
from corpus import antichains_up_to_iso, from_masks, generated_trees, random_corpus, whiskered
from simptree.complex import FacetComplex, parse_complex
from simptree.grafting import (
    CoverBoundError,
    cm_report,
    is_grafted,
    minimal_vertex_covers,
    vertex_covering_number,
)
from simptree.oracle import is_grafted_by_definition


def brute_minimal_covers(d: FacetComplex) -> set[frozenset[str]]:
    covers = []
    for k in range(d.n + 1):
        for combo in combinations(range(d.n), k):
            c = sum(1 << v for v in combo)
            if all(m & c for m in d.masks) and not any(p & c == p for p in covers):
                covers.append(c)
    return {frozenset(d.vertex_names(c)) for c in covers}


def test_grafted_fixture():
    d = load_fixture("grafted5.fc")
    exp = load_expect("grafted5.expect.json")
    r = is_grafted(d)
    assert r.grafted
    assert d.labels(r.leaves) == exp["leaves"]
    assert d.labels(r.non_leaves) == exp["non_leaves"]


def test_grafting_examples(chain, fork, triangle):
    assert is_grafted(chain).grafted
    r = is_grafted(fork)
    assert not r.grafted and r.failure == "intersecting_leaves"
    r = is_grafted(triangle)
    assert not r.grafted and r.leaves == ()
    assert is_grafted(parse_complex("xy, yz, zu")).grafted
    r = is_grafted(parse_complex("xy, yz, zu, uv"))
    assert not r.grafted and r.failure == "uncovered_vertex"
    r = is_grafted(parse_complex("xyz, xyu, zuv, zuw"))
    assert r.failure in ("intersecting_leaves", "irreducible_leaf", "uncovered_vertex")
    assert not is_grafted_by_definition(parse_complex("xyz, xyu, zuv, zuw"))


def test_trivial_grafted_cases():
    assert is_grafted(FacetComplex((), ())).grafted
    assert is_grafted(parse_complex("xy, uv, ab")).grafted
    assert is_grafted(parse_complex("xyz")).grafted


def test_whiskered_complexes_are_grafted():
    for d in random_corpus(200, seed=11, max_l=6, max_n=6):
        if any(m.bit_count() == 1 for m in d.masks):
            continue
        w = whiskered(d)
        assert is_grafted(w).grafted
        assert minimal_vertex_covers(w).unmixed


def test_algorithm_matches_definition():
    for masks in antichains_up_to_iso(4, 5):
        d = from_masks(masks)
        assert is_grafted(d).grafted == is_grafted_by_definition(d), masks


def test_cover_examples():
    d = load_fixture("chain_tree.fc")
    exp = load_expect("chain_tree.expect.json")
    r = minimal_vertex_covers(d)
    assert r.alpha == exp["alpha"] and r.unmixed == exp["unmixed"]
    assert set(r.minimal_covers) == {frozenset(c) for c in exp["minimal_covers"]}
    assert r.height == 2 and r.dim == d.n - 2

    d = load_fixture("fork_tree.fc")
    exp = load_expect("fork_tree.expect.json")
    r = minimal_vertex_covers(d)
    assert r.alpha == exp["alpha"] and r.unmixed == exp["unmixed"]
    for c in exp["covers_include"]:
        assert frozenset(c) in r.minimal_covers


@settings(max_examples=150, deadline=None)
@given(st.lists(st.frozensets(st.sampled_from("abcdefg"), min_size=1, max_size=4), min_size=1, max_size=7))
def test_covers_match_brute_force(facets):
    d = parse_complex(",".join("".join(sorted(f)) for f in facets), minimize=True)
    r = minimal_vertex_covers(d)
    assert set(r.minimal_covers) == brute_minimal_covers(d)
    assert len(r.minimal_covers) == len(set(r.minimal_covers))
    assert r.alpha == vertex_covering_number(d)


def test_cover_bound():
    d = parse_complex(", ".join(f"a{i}*b{i}" for i in range(14)), fmt="tokens")
    with pytest.raises(CoverBoundError):
        minimal_vertex_covers(d, max_n=20)
    with pytest.raises(CoverBoundError):
        vertex_covering_number(d, max_n=20)
    assert vertex_covering_number(parse_complex("xy, yz, zu")) == 2


def test_grafted_implies_unmixed():
    for d in random_corpus(500, seed=12, max_l=7, max_n=7):
        if is_grafted(d).grafted:
            assert minimal_vertex_covers(d).unmixed


def test_trees_grafted_iff_unmixed():
    for t in generated_trees(150, seed=13):
        assert is_grafted(t).grafted == minimal_vertex_covers(t).unmixed


def test_cm_report_examples(chain, fork, triangle):
    r = cm_report(load_fixture("grafted5.fc"))
    assert r.cohen_macaulay is True and r.reason == "grafted"
    r = cm_report(fork)
    assert r.cohen_macaulay is False and r.unmixed is False
    assert r.minimal_primes is not None and ["x"] in r.minimal_primes
    # the triangle is unmixed but not grafted and not a tree
    r = cm_report(triangle)
    assert r.cohen_macaulay is None and r.cm_label == "unknown"
    assert r.unmixed is True and r.alpha == 2
    r = cm_report(parse_complex("xy, yz, zx, xu"))
    assert r.cohen_macaulay is False and r.reason == "not unmixed"
    text = cm_report(chain).to_text()
    assert "cohen_macaulay: true (grafted)" in text
    assert "minimal_primes:" in text


def test_cm_report_bound_note():
    d = parse_complex(", ".join(f"a{i}*b{i}" for i in range(14)), fmt="tokens")
    r = cm_report(d, max_n=10)
    assert r.minimal_primes is None and r.unmixed is None
    assert r.cohen_macaulay is True  # pairwise disjoint facets are grafted
    assert r.notes and "unavailable" in r.to_text()
