import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st

from oracles import FIXTURE_PAIR_OUTCOMES, adjacency, bfs_distances, brute_max_len, make_graph, random_graph
from wikisem.graph import NodeAbsent, all_pairs_precompute, shortest_path
from wikisem.relatedness import (
    MissingReason,
    format_path,
    linking_words,
    path_max_len,
    relate,
    to_score,
)


def test_identity_sets():
    g = make_graph(["w"], [])
    assert path_max_len(g, {"w"}, {"w"}) == 0


def test_chain_max():
    g = make_graph(list("abc"), [("a", "b"), ("b", "c")])
    # brute force: d(a,b)=1, d(a,c)=2
    assert path_max_len(g, {"a"}, {"b", "c"}) == 2


def test_disconnected_sets_are_infinite():
    g = make_graph(list("abcd"), [("a", "b"), ("c", "d")])
    assert path_max_len(g, {"a", "b"}, {"c", "d"}) == math.inf


def test_unreachable_pairs_are_left_out():
    g = make_graph(list("abcd"), [("a", "b")])
    assert path_max_len(g, {"a"}, {"b", "c", "d"}) == 1


def test_rejects_empty_or_foreign_sets():
    g = make_graph(list("ab"), [("a", "b")])
    with pytest.raises(ValueError):
        path_max_len(g, set(), {"a"})
    with pytest.raises(NodeAbsent):
        path_max_len(g, {"a"}, {"x"})


def test_reduces_to_shortest_path():
    rng = random.Random(2)
    nodes, edges = random_graph(rng, 15, 0.2)
    g = make_graph(nodes, edges)
    for u, v in itertools.combinations(nodes, 2):
        p = shortest_path(g, u, v)
        if p is not None:
            assert path_max_len(g, {u}, {v}) == p.length


def test_bruteforce_agreement_and_oracle_route():
    rng = random.Random(4)
    for _ in range(200):
        nodes, edges = random_graph(rng, rng.randint(1, 20), rng.random() * 0.3)
        g = make_graph(nodes, edges)
        adj = adjacency(nodes, edges)
        a = set(rng.sample(nodes, rng.randint(1, min(4, len(nodes)))))
        b = set(rng.sample(nodes, rng.randint(1, min(4, len(nodes)))))
        expected = brute_max_len(adj, a, b)
        assert path_max_len(g, a, b) == expected
        assert path_max_len(g, a, b, all_pairs_precompute(g)) == expected


@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=25),
       st.sets(st.integers(0, 9), min_size=1, max_size=4),
       st.sets(st.integers(0, 9), min_size=1, max_size=4))
def test_symmetric(edges, a, b):
    name = lambda i: f"v{i}"
    nodes = [name(i) for i in range(10)]
    g = make_graph(nodes, [(name(x), name(y)) for x, y in edges if x != y])
    sa, sb = {name(i) for i in a}, {name(i) for i in b}
    assert path_max_len(g, sa, sb) == path_max_len(g, sb, sa)


def test_linking_words_chain():
    g = make_graph(list("abc"), [("a", "b"), ("b", "c")])
    assert [p.nodes for p in linking_words(g, {"a"}, {"c"})] == [("a", "b", "c")]
    assert [p.nodes for p in linking_words(g, {"a"}, {"b"})] == [("a", "b")]


def test_linking_words_disconnected_and_order():
    g = make_graph(list("abcd"), [("a", "c"), ("b", "c")])
    assert linking_words(g, {"a"}, {"d"}) == []
    got = [p.nodes for p in linking_words(g, {"b", "a"}, {"c", "d"})]
    assert got == [("a", "c"), ("b", "c")]
    assert format_path(linking_words(g, {"a"}, {"b"})[0]) == "a -> c -> b"


@pytest.mark.parametrize("d, s", [(0, 1.0), (1, 0.5), (3, 0.25), (math.inf, None)])
def test_to_score(d, s):
    assert to_score(d) == s


def test_to_score_strictly_decreasing():
    xs = [0, 0.1, 1, 2, 2.5, 10, 1e6]
    scores = [to_score(x) for x in xs]
    assert all(a > b for a, b in zip(scores, scores[1:]))
    assert all(0 < s <= 1 for s in scores)


def test_relate_fixture_walkthrough(fixture_dict, ru_graph):
    r = relate(fixture_dict, ru_graph, "journal", "diary", "en", "ru", with_paths=True)
    assert r.set_a == ("журнал",) and r.set_b == ("дневник",)
    assert r.distance == 1 and r.score == 0.5
    assert r.missing_reason is MissingReason.NONE
    assert [p.nodes for p in r.linking_paths] == [("журнал", "дневник")]


@pytest.mark.parametrize("a, b, outcome", FIXTURE_PAIR_OUTCOMES)
def test_relate_fixture_pairs(fixture_dict, ru_graph, a, b, outcome):
    r = relate(fixture_dict, ru_graph, a, b, "en", "ru")
    if isinstance(outcome, str):
        assert r.missing_reason.value == outcome
        assert r.score is None and r.distance == math.inf
    else:
        assert r.missing_reason is MissingReason.NONE
        assert r.distance == outcome
        assert r.score == 1 / (1 + outcome)


def test_relate_same_word_uses_max_within_set(fixture_dict, ru_graph):
    # cat -> {кошка, кот}, adjacent
    r = relate(fixture_dict, ru_graph, "cat", "cat", "en", "ru")
    assert r.distance == 1
    r = relate(fixture_dict, ru_graph, "journal", "journal", "en", "ru")
    assert r.distance == 0 and r.score == 1.0


def test_relate_symmetric_on_fixture(fixture_dict, ru_graph):
    words = sorted({w for a, b, _ in FIXTURE_PAIR_OUTCOMES for w in (a, b)})
    for a, b in itertools.product(words, repeat=2):
        ab = relate(fixture_dict, ru_graph, a, b, "en", "ru")
        ba = relate(fixture_dict, ru_graph, b, a, "en", "ru")
        assert ab.distance == ba.distance and ab.score == ba.score


def test_relate_with_oracle_matches_dijkstra(fixture_dict, ru_graph):
    oracle = all_pairs_precompute(ru_graph)
    for a, b, _ in FIXTURE_PAIR_OUTCOMES:
        assert relate(fixture_dict, ru_graph, a, b, "en", "ru") == \
            relate(fixture_dict, ru_graph, a, b, "en", "ru", oracle=oracle)


def test_relate_in_graph_language(fixture_dict, ru_graph):
    r = relate(fixture_dict, ru_graph, "журнал", "газета", "ru", "ru")
    assert r.distance == 2


def test_relate_language_mismatch(fixture_dict, ru_graph):
    with pytest.raises(ValueError):
        relate(fixture_dict, ru_graph, "a", "b", "en", "uk")


def test_record_format(fixture_dict, ru_graph):
    rec = relate(fixture_dict, ru_graph, "journal", "diary", "en", "ru").to_record()
    assert rec.splitlines() == [
        "word_a=journal", "word_b=diary", "set_a=журнал", "set_b=дневник",
        "distance=1", "score=0.5", "missing_reason=none",
    ]
    missing = relate(fixture_dict, ru_graph, "zzyzx", "cat", "en", "ru").to_record()
    assert "score=missing" in missing and "distance=inf" in missing
