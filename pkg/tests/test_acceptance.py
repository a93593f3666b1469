"""Acceptance gates over the bundled 20-docset evaluation fixture.

Each test prints one PASS/FAIL line so a plain pytest run doubles as the
acceptance report.  Thresholds sit next to their asserts.
"""

import time

import numpy as np
import pytest

from multisum.clustnum import (LexicalDiversityModel, TtrConfig,
                               cluster_count_ttr, estimate_d, floyd_warshall,
                               ttr_mckee)
from multisum.corpus import AnnotatorSpec, DocumentSet, annotate, tokenize, \
    truncate_docset
from multisum.pipeline import (PipelineConfig, docset_seed, summarize_corpus,
                               summarize_docset)
from multisum.rougeeval import (first_n_baseline, rouge_l, rouge_n,
                                tokenize_for_scoring)
from multisum.sentgraph import IndicatorConfig, build_graph
from multisum.spectral import laplacian, smallest_eigenvectors, spectral_clusters
from multisum.wordgraph import (WordGraphConfig, build_word_graph,
                                k_shortest_paths)
from helpers import mkgraph, sents
from oracles import (ROUGE_HAND_TABLE, bfs_distances, canonical_partition,
                     enumerate_paths, expected_f1, weight_from_occurrences)


def make_config(**kwargs):
    base = dict(ttr=TtrConfig(), indicators=IndicatorConfig(),
                wordgraph=WordGraphConfig())
    base.update(kwargs)
    return PipelineConfig(**base)


def norm(text):
    return " ".join(tokenize(text)).casefold()


def mean_rouge1(outputs, docsets):
    scores = []
    for out, ds in zip(outputs, docsets):
        refs = [tokenize_for_scoring(norm(r)) for r in ds.reference_summaries]
        scores.append(rouge_n(tokenize_for_scoring(norm(out)), refs, 1).f1)
    return sum(scores) / len(scores)


@pytest.fixture(scope="module")
def runs(store, lex, fixture_docsets):
    """All pipeline variants needed by the gates, computed once."""
    docsets = fixture_docsets
    cfg = make_config()

    outputs, times = [], []
    for i, ds in enumerate(docsets):
        t0 = time.perf_counter()
        res = summarize_docset(ds, cfg, store, lex, seed=docset_seed(0, i))
        times.append(time.perf_counter() - t0)
        outputs.append(res.summary)

    repeat = [r.summary for r in summarize_corpus(docsets, make_config(),
                                                  store, lex)]
    no_fluency = [r.summary for r in summarize_corpus(
        docsets, make_config(wordgraph=WordGraphConfig(fluency=False)),
        store, lex)]
    fixed9 = [r.summary for r in summarize_corpus(
        docsets, make_config(method="fixed:9"), store, lex)]

    baselines = []
    for ds in docsets:
        ann = annotate(truncate_docset(ds, cfg.max_input_tokens),
                       AnnotatorSpec())
        baselines.append(first_n_baseline(ann, 2))

    return {"docsets": docsets, "outputs": outputs, "repeat": repeat,
            "no_fluency": no_fluency, "fixed9": fixed9,
            "baselines": baselines, "times": times}


def report(capsys, line):
    with capsys.disabled():
        print(line)


class TestAcceptance:
    def test_gate1_quality_beats_lead_baseline(self, runs, capsys):
        sys_mean = mean_rouge1(runs["outputs"], runs["docsets"])
        base_mean = mean_rouge1(runs["baselines"], runs["docsets"])
        total = sum(runs["times"])
        ok = sys_mean > base_mean and total < 120.0
        report(capsys, f"acceptance[1] quality gate: "
                       f"{'PASS' if ok else 'FAIL'}  "
                       f"mean rouge-1 f1 {sys_mean:.4f} vs "
                       f"first-2 baseline {base_mean:.4f} "
                       f"({total:.1f}s for 20 sets)")
        assert sys_mean > base_mean
        assert total < 120.0

    def test_gate2_throughput(self, runs, capsys):
        mean_s = sum(runs["times"]) / len(runs["times"])
        ok = mean_s <= 2.0
        report(capsys, f"acceptance[2] throughput: "
                       f"{'PASS' if ok else 'FAIL'}  "
                       f"mean {mean_s:.3f}s per docset (limit 2.0s)")
        assert mean_s <= 2.0

    def test_gate3_fluency_rerank_matters_without_hurting_quality(
            self, runs, capsys):
        changed = sum(a != b for a, b in zip(runs["outputs"],
                                             runs["no_fluency"]))
        ttr_mean = mean_rouge1(runs["outputs"], runs["docsets"])
        fixed_mean = mean_rouge1(runs["fixed9"], runs["docsets"])
        ok = changed >= 1 and ttr_mean >= fixed_mean
        report(capsys, f"acceptance[3] fluency rerank: "
                       f"{'PASS' if ok else 'FAIL'}  "
                       f"{changed}/20 outputs changed; "
                       f"auto count {ttr_mean:.4f} >= fixed nine "
                       f"{fixed_mean:.4f}")
        assert changed >= 1
        assert ttr_mean >= fixed_mean

    def test_gate4_oracle_equivalence(self, runs, store, lex, capsys):
        # (a) all-pairs unit distances vs breadth-first search
        rng = np.random.default_rng(202)
        fw_ok = 0
        for _ in range(200):
            n = int(rng.integers(2, 9))
            edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                     if rng.random() < 0.35]
            adj = np.zeros((n, n), dtype=bool)
            for i, j in edges:
                adj[i, j] = adj[j, i] = True
            g = mkgraph(n, edges)
            fw_ok += int(np.array_equal(floyd_warshall(g), bfs_distances(adj)))

        # (b) path enumeration vs exhaustive depth-first search
        vocab = ["alpha", "bravo", "cargo", "delta", "echo", "golf",
                 "hotel", "lima", "metro", "nadir", "oasis", "prism"]
        ks_ok = 0
        for trial in range(100):
            trng = np.random.default_rng(1000 + trial)
            texts = [" ".join(vocab[int(w)] for w in
                              trng.integers(0, len(vocab),
                                            int(trng.integers(1, 9))))
                     for _ in range(int(trng.integers(1, 5)))]
            g = build_word_graph(sents(*texts))
            oracle = enumerate_paths(g)
            got = k_shortest_paths(g, len(oracle) + 5, min_tokens=1,
                                   require_verb=False,
                                   enumeration_budget=len(oracle) + 5)
            ks_ok += int([(p.nodes, p.weight_sum) for p in got] == oracle)

        # (c) edge weights vs occurrence-level recompute, plus hand values
        pair = build_word_graph(sents("the cat sat", "the cat ran"))
        hand_ok = sorted(pair.weights.values()) == [0.5, 0.5, 1.5, 1.5, 1.5, 1.5]
        ew_ok, ew_total = 0, 0
        clusters = [sents("the cat sat", "the cat ran")]
        for ds in runs["docsets"][:5]:
            ann = annotate(truncate_docset(ds, 500), AnnotatorSpec())
            clusters.append(ann.sentences[:5])
        for cluster in clusters:
            g = build_word_graph(cluster)
            for (i, j), w in g.weights.items():
                ew_total += 1
                ew_ok += int(abs(w - weight_from_occurrences(g, i, j)) <= 1e-12)

        # (d) spectral cut must recover disconnected components exactly
        sp_ok = 0
        for trial in range(100):
            trng = np.random.default_rng(trial)
            n_comp = int(trng.integers(2, 4))
            sizes = [int(trng.integers(2, 5)) for _ in range(n_comp)]
            ids = list(range(sum(sizes)))
            trng.shuffle(ids)
            groups, pos = [], 0
            for size in sizes:
                groups.append(ids[pos:pos + size])
                pos += size
            edges = [(a, b) for grp in groups
                     for ai, a in enumerate(grp) for b in grp[ai + 1:]]
            got = spectral_clusters(mkgraph(sum(sizes), edges), n_comp,
                                    seed=trial)
            expected = frozenset(frozenset(grp) for grp in groups)
            sp_ok += int(canonical_partition(got.labels) == expected)

        # (e) overlap scorer vs the hand-scored table
        rouge_ok = 0
        for cand, refs, table in ROUGE_HAND_TABLE:
            ref_tokens = [tokenize_for_scoring(r) for r in refs]
            good = True
            for metric, (p, r) in table.items():
                if metric == "rl":
                    got = rouge_l(tokenize_for_scoring(cand), ref_tokens)
                else:
                    got = rouge_n(tokenize_for_scoring(cand), ref_tokens,
                                  int(metric[1]))
                good &= (got.precision == float(p) and got.recall == float(r)
                         and got.f1 == expected_f1(p, r))
            rouge_ok += int(good)

        ok = (fw_ok == 200 and ks_ok == 100 and hand_ok
              and ew_ok == ew_total and sp_ok == 100 and rouge_ok == 10)
        report(capsys, f"acceptance[4] oracle equivalence: "
                       f"{'PASS' if ok else 'FAIL'}  "
                       f"distances {fw_ok}/200, paths {ks_ok}/100, "
                       f"weights {ew_ok}/{ew_total}, "
                       f"components {sp_ok}/100, overlap {rouge_ok}/10")
        assert fw_ok == 200
        assert ks_ok == 100
        assert hand_ok
        assert ew_ok == ew_total
        assert sp_ok == 100
        assert rouge_ok == 10

    def test_gate5_numerical_invariants(self, runs, store, lex, capsys):
        # Laplacian structure and eigenpair residuals on real inputs
        lap_ok = eig_ok = graphs = 0
        for ds in runs["docsets"]:
            ann = annotate(truncate_docset(ds, 500), AnnotatorSpec())
            g = build_graph(ann, lex, store)
            L = laplacian(g)
            graphs += 1
            lap_ok += int(np.array_equal(L.sum(axis=1), np.zeros(g.n))
                          and np.array_equal(L, L.T))
            k = min(g.n, 6)
            U, vals = smallest_eigenvectors(L, k)
            bound = 1e-8 * max(1.0, float(np.linalg.norm(L)))
            eig_ok += int(all(
                float(np.linalg.norm(L @ U[:, c] - vals[c] * U[:, c])) <= bound
                for c in range(k)))

        # the diversity curve must fall strictly as text grows
        mono_ok = True
        for d in (5.0, 10.0, 50.0):
            model = LexicalDiversityModel(d)
            vals = [ttr_mckee(n, model) for n in range(1, 1001)]
            mono_ok &= all(a > b for a, b in zip(vals, vals[1:]))
            mono_ok &= all(0.0 < v <= 1.0 for v in vals)

        # cluster counts stay inside [1, n_sentences] under hostile inputs
        cfg = TtrConfig()
        clamp_ok = True
        repetitive = annotate(DocumentSet(documents=["buzz " * 8 + "."] * 4,
                                          sentences=[]), AnnotatorSpec())
        res = cluster_count_ttr(repetitive, cfg, rng_seed=7)
        clamp_ok &= res.k == 1 and res.diagnostics["raw_k"] == -1
        diverse = annotate(DocumentSet(
            documents=[" ".join(f"{c}{i}" for i in range(9)) + " ."
                       for c in "abc"], sentences=[]), AnnotatorSpec())
        res = cluster_count_ttr(diverse, cfg, rng_seed=7)
        clamp_ok &= res.k == 3 and res.diagnostics["raw_k"] == 15
        rng = np.random.default_rng(55)
        for _ in range(30):
            docs = []
            for _ in range(int(rng.integers(1, 6))):
                if rng.random() < 0.5:
                    docs.append("loop " * int(rng.integers(3, 12)) + ".")
                else:
                    docs.append(" ".join(
                        f"w{rng.integers(0, 10 ** 6)}"
                        for _ in range(int(rng.integers(3, 12)))) + " .")
            ann = annotate(DocumentSet(documents=docs, sentences=[]),
                           AnnotatorSpec())
            res = cluster_count_ttr(ann, cfg, rng_seed=int(rng.integers(10 ** 6)))
            clamp_ok &= 1 <= res.k <= res.diagnostics["n_sent"]

        # richness estimation must be bit-identical run to run
        ann = annotate(truncate_docset(runs["docsets"][0], 500),
                       AnnotatorSpec())
        reps = {estimate_d(ann, cfg, rng_seed=0).d_value for _ in range(3)}
        rep_ok = len(reps) == 1

        ok = (lap_ok == graphs and eig_ok == graphs and mono_ok
              and clamp_ok and rep_ok)
        report(capsys, f"acceptance[5] numerical invariants: "
                       f"{'PASS' if ok else 'FAIL'}  "
                       f"laplacians {lap_ok}/{graphs}, "
                       f"residuals {eig_ok}/{graphs}, "
                       f"curve monotone {mono_ok}, clamps {clamp_ok}, "
                       f"repeatable fit {rep_ok}")
        assert lap_ok == graphs
        assert eig_ok == graphs
        assert mono_ok
        assert clamp_ok
        assert rep_ok

    def test_gate6_determinism_and_faithfulness(self, runs, capsys):
        same = all(a.encode() == b.encode()
                   for a, b in zip(runs["outputs"], runs["repeat"]))
        faithful = True
        for out, ds in zip(runs["outputs"], runs["docsets"]):
            truncated = truncate_docset(ds, 500)
            vocab = {t.casefold() for doc in truncated.documents
                     for t in tokenize(doc)}
            faithful &= all(t.casefold() in vocab for t in tokenize(out))
        ok = same and faithful
        report(capsys, f"acceptance[6] determinism and faithfulness: "
                       f"{'PASS' if ok else 'FAIL'}  "
                       f"byte-identical {same}, "
                       f"all summary tokens from input {faithful}")
        assert same
        assert faithful
