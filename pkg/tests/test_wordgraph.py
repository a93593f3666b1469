"""Word-graph compression: merge, weights, path search, fluency rerank."""

import math

import pytest

from multisum.wordgraph import (NgramModel, WordGraphConfig, build_word_graph,
                                detokenize, edge_weight, k_shortest_paths,
                                realize_path, summarize_cluster)
from helpers import sents
from oracles import enumerate_paths, weight_from_occurrences


def pair_cluster():
    return sents("the cat sat", "the cat ran")


def node_by_key(g, key):
    return next(n for n in g.nodes if n.key == key)


class TestBuildGraph:
    def test_pair_fixture_node_inventory(self):
        g = build_word_graph(pair_cluster())
        inventory = sorted((str(n.key), n.freq) for n in g.nodes)
        assert inventory == [("('cat', 'NOUN')", 2), ("('ran', 'VERB')", 1),
                             ("('sat', 'VERB')", 1), ("('the', 'DET')", 2),
                             ("END", 2), ("START", 2)]

    def test_sentinels(self):
        g = build_word_graph(pair_cluster())
        assert g.nodes[g.start].is_sentinel
        assert g.nodes[g.end].is_sentinel
        assert g.cluster_size == 2

    def test_repeated_word_in_one_sentence_gets_its_own_node(self):
        g = build_word_graph(sents("the cat saw the dog"))
        the_nodes = [n for n in g.nodes if n.key == ("the", "DET")]
        assert len(the_nodes) == 2

    def test_most_common_casing_wins(self):
        g = build_word_graph(sents("The cat sat", "the cat ran",
                                   "the cat slept"))
        assert node_by_key(g, ("the", "DET")).best_surface() == "the"

    def test_sentence_paths_traverse_start_to_end(self):
        g = build_word_graph(pair_cluster())
        assert len(g.sentence_paths) == 2
        for path in g.sentence_paths:
            assert path[0] == g.start
            assert path[-1] == g.end


class TestEdgeWeight:
    # frequency-scaled inverse co-occurrence strength; see README

    def test_pair_fixture_literal_weights(self):
        g = build_word_graph(pair_cluster())
        by_key = {(str(g.nodes[i].key), str(g.nodes[j].key)): w
                  for (i, j), w in g.weights.items()}
        assert by_key == {
            ("START", "('the', 'DET')"): 0.5,
            ("('the', 'DET')", "('cat', 'NOUN')"): 0.5,
            ("('cat', 'NOUN')", "('sat', 'VERB')"): 1.5,
            ("('cat', 'NOUN')", "('ran', 'VERB')"): 1.5,
            ("('sat', 'VERB')", "END"): 1.5,
            ("('ran', 'VERB')", "END"): 1.5,
        }

    def test_matches_occurrence_level_recompute(self):
        clusters = [
            pair_cluster(),
            sents("my dog barked loudly", "my dog howled loudly",
                  "my dog yelped loudly"),
            sents("storms hit the coast", "storms hit the port badly",
                  "the coast flooded"),
        ]
        for cluster in clusters:
            g = build_word_graph(cluster)
            for (i, j), w in g.weights.items():
                assert w == edge_weight(g, i, j)
                oracle = weight_from_occurrences(g, i, j)
                assert abs(w - oracle) <= 1e-12

    def test_adjacent_only_distance_variant(self):
        cluster = sents("alpha beta gamma", "alpha gamma")
        g_all = build_word_graph(cluster)
        g_adj = build_word_graph(cluster, adjacent_only_distance=True)
        i = node_by_key(g_all, ("alpha", "NOUN")).index
        j = node_by_key(g_all, ("gamma", "NOUN")).index
        # both sentences support alpha->gamma, at distances 2 and 1;
        # the adjacent-only variant keeps just the distance-1 pair
        assert g_all.weights[(i, j)] == weight_from_occurrences(g_all, i, j)
        assert g_adj.weights[(i, j)] == weight_from_occurrences(
            g_adj, i, j, adjacent_only=True)
        assert g_adj.weights[(i, j)] > g_all.weights[(i, j)]

    def test_all_weights_strictly_positive(self, fixture_docsets):
        from multisum.corpus import AnnotatorSpec, annotate
        ds = annotate(fixture_docsets[0], AnnotatorSpec())
        g = build_word_graph(ds.sentences[:6])
        assert g.weights
        assert all(w > 0.0 for w in g.weights.values())


class TestKShortestPaths:
    def test_pair_fixture_enumerates_both_paths(self):
        g = build_word_graph(pair_cluster())
        got = k_shortest_paths(g, 10, min_tokens=3)
        sat = node_by_key(g, ("sat", "VERB")).index
        ran = node_by_key(g, ("ran", "VERB")).index
        the = node_by_key(g, ("the", "DET")).index
        cat = node_by_key(g, ("cat", "NOUN")).index
        assert [(p.nodes, p.weight_sum, p.fallback) for p in got] == [
            ((g.start, the, cat, sat, g.end), 4.0, False),
            ((g.start, the, cat, ran, g.end), 4.0, False),
        ]

    def test_order_matches_exhaustive_enumeration(self):
        clusters = [
            pair_cluster(),
            sents("my dog barked loudly", "my dog howled loudly",
                  "my dog yelped loudly"),
            sents("storms hit the coast", "storms hit the port badly",
                  "the coast flooded", "heavy storms hit hard"),
            sents("she sold rare maps", "she sold old maps quickly",
                  "he bought rare maps"),
        ]
        for cluster in clusters:
            g = build_word_graph(cluster)
            oracle = enumerate_paths(g)
            got = k_shortest_paths(g, len(oracle) + 5, min_tokens=1,
                                   require_verb=False)
            assert [(p.nodes, p.weight_sum) for p in got] == oracle

    def test_k_caps_the_list_in_weight_order(self):
        cluster = sents("my dog barked loudly", "my dog howled loudly",
                        "my dog yelped loudly")
        g = build_word_graph(cluster)
        got = k_shortest_paths(g, 2, min_tokens=4)
        assert len(got) == 2
        assert got[0].weight_sum <= got[1].weight_sum

    def test_too_short_paths_fall_back(self):
        g = build_word_graph(pair_cluster())
        got = k_shortest_paths(g, 10)  # default floor is six tokens
        assert len(got) == 1
        assert got[0].fallback

    def test_verbless_graphs_fall_back(self):
        g = build_word_graph(sents("the tall tree", "the green tree"))
        got = k_shortest_paths(g, 10, min_tokens=3, require_verb=True)
        assert len(got) == 1
        assert got[0].fallback
        unfiltered = k_shortest_paths(g, 10, min_tokens=3, require_verb=False)
        assert not unfiltered[0].fallback

    def test_k_below_one_is_an_error(self):
        g = build_word_graph(pair_cluster())
        with pytest.raises(ValueError):
            k_shortest_paths(g, 0)


class TestNgramModel:
    def test_smoothed_trigram_probability(self):
        model = NgramModel(order=3)
        model.add_sentence(["the", "cat", "sat"])
        # one observation of the context, vocabulary of three words
        assert model.prob(("the", "cat"), "sat") == 0.5
        assert model.prob(("the", "cat"), "zzz") == 0.25
        assert model.prob(("x", "y"), "the") == 1.0 / 3.0

    def test_fluency_sums_transition_probabilities(self):
        model = NgramModel(order=3)
        model.add_sentence(["the", "cat", "sat"])
        assert model.fluency(["the", "cat", "sat"]) == 2.0

    def test_from_sentences_equals_incremental_training(self):
        cluster = pair_cluster()
        a = NgramModel.from_sentences(cluster, order=3)
        b = NgramModel(order=3)
        for sent in cluster:
            b.add_sentence([t.lower for t in sent.tokens])
        probe = [(("the", "cat"), "sat"), (("cat", "sat"), b.EOS),
                 ((b.BOS, b.BOS), "the")]
        for ctx, word in probe:
            assert a.prob(ctx, word) == b.prob(ctx, word)

    def test_order_below_two_is_an_error(self):
        with pytest.raises(ValueError):
            NgramModel(order=1)


class TestRealizeAndDetokenize:
    def test_detokenize_reattaches_punctuation(self):
        assert detokenize(["the", "cat", ",", "sat", "."]) == "the cat, sat."

    def test_detokenize_plain_words(self):
        assert detokenize(["a", "b"]) == "a b"

    def test_realize_uses_preferred_surfaces(self):
        g = build_word_graph(pair_cluster())
        got = k_shortest_paths(g, 1, min_tokens=3)
        assert realize_path(g, got[0].nodes) == "the cat sat"


class TestSummarizeCluster:
    def test_singleton_cluster_passes_through(self):
        assert summarize_cluster(sents("The cat sat."),
                                 WordGraphConfig()) == "The cat sat."

    def test_empty_cluster_is_an_error(self):
        with pytest.raises(ValueError):
            summarize_cluster([], WordGraphConfig())

    def test_without_fluency_first_shortest_path_wins(self):
        got = summarize_cluster(pair_cluster(),
                                WordGraphConfig(min_tokens=3, fluency=False))
        assert got == "the cat sat"

    def test_fluency_rerank_flips_the_tie(self):
        model = NgramModel.from_sentences(
            sents(*(["the cat ran"] * 5 + ["the cat sat"])), order=3)
        got = summarize_cluster(pair_cluster(),
                                WordGraphConfig(min_tokens=3, fluency=True),
                                model)
        assert got == "the cat ran"
