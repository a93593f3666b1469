"""End-to-end orchestration: truncate, annotate, graph, cut, compress.

Each document set is processed independently: the input is capped at a
token budget, sentences are annotated and wired into the interaction
graph, a cluster count is chosen by the configured method, the spectral
cut partitions the sentences, and every cluster is compressed to one
sentence.  Cluster summaries are ordered by earliest source position and
greedily fitted to the output budget.
"""

from __future__ import annotations

import logging
import multiprocessing
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import clustnum, sentgraph, spectral, wordgraph
from .corpus import AnnotatorSpec, DocumentSet, annotate, truncate_docset

log = logging.getLogger(__name__)

THREADS_ENV_VAR = "MULTISUM_THREADS"

# mixes docset index into the base seed; any odd constant works
_SEED_STRIDE = 1_000_003


@dataclass(frozen=True)
class PipelineConfig:
    method: str = "ttr"  # ttr | distance | eigengap | fixed:<k>
    max_input_tokens: int | None = 500
    max_output_tokens: int = 256
    seed: int = 0
    annotator: str = "builtin"
    row_normalize: bool = False
    unreachable_distance: float | None = None
    threads: int = 1
    ttr: clustnum.TtrConfig = field(default_factory=clustnum.TtrConfig)
    indicators: sentgraph.IndicatorConfig = field(
        default_factory=sentgraph.IndicatorConfig)
    wordgraph: wordgraph.WordGraphConfig = field(
        default_factory=wordgraph.WordGraphConfig)
    collect_graph: bool = False
    collect_clusters: bool = False
    collect_wordgraphs: bool = False

    def __post_init__(self):
        parse_method(self.method)
        if self.max_output_tokens < 1:
            raise ValueError("max_output_tokens must be >= 1")


def parse_method(method: str) -> tuple[str, int | None]:
    if method in ("ttr", "distance", "eigengap"):
        return method, None
    if method.startswith("fixed:"):
        try:
            k = int(method.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad fixed cluster count in {method!r}") from None
        if k < 1:
            raise ValueError("fixed cluster count must be >= 1")
        return "fixed", k
    raise ValueError(f"unknown method {method!r}")


@dataclass
class SummaryResult:
    summary: str
    cluster_count: int
    per_cluster_sentences: list[str]
    diagnostics: dict
    artifacts: dict = field(default_factory=dict)


def order_clusters(assign: spectral.ClusterAssignment, sentences) -> list[int]:
    """Cluster ids sorted by the minimum global_index of their members."""
    first_seen = {}
    for i, label in enumerate(assign.labels):
        gidx = sentences[i].global_index
        if label not in first_seen or gidx < first_seen[label]:
            first_seen[label] = gidx
    return sorted(first_seen, key=first_seen.get)


def enforce_length(sentence_texts: list[str], budget: int) -> str:
    """Keep whole sentences while they fit; hard-cut an oversized opener."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    kept: list[str] = []
    used = 0
    for text in sentence_texts:
        n = len(text.split())
        if used + n > budget:
            break
        kept.append(text)
        used += n
    if not kept and sentence_texts:
        return " ".join(sentence_texts[0].split()[:budget])
    return " ".join(kept)


def choose_cluster_count(ds: DocumentSet, graph, cfg: PipelineConfig,
                         seed: int) -> clustnum.ClusterCountResult:
    name, fixed_k = parse_method(cfg.method)
    n = len(ds.sentences)
    if name == "fixed":
        return clustnum.ClusterCountResult(
            k=max(1, min(n, fixed_k)), method="fixed",
            diagnostics={"requested_k": fixed_k})
    if name == "ttr":
        return clustnum.cluster_count_ttr(ds, cfg.ttr, seed)
    if name == "distance":
        return clustnum.cluster_count_distance(
            graph, rng_seed=seed, unreachable=cfg.unreachable_distance)
    return clustnum.cluster_count_eigengap(graph)


def summarize_docset(ds: DocumentSet, cfg: PipelineConfig, store, lex,
                     seed: int | None = None) -> SummaryResult:
    t0 = time.perf_counter()
    if seed is None:
        seed = cfg.seed
    if cfg.max_input_tokens is not None:
        ds = truncate_docset(ds, cfg.max_input_tokens)
    ds = annotate(ds, AnnotatorSpec(cfg.annotator))
    n = len(ds.sentences)
    if n == 0:
        log.warning("document set has no sentences after truncation")
        return SummaryResult(summary="", cluster_count=0,
                             per_cluster_sentences=[],
                             diagnostics={"n_sentences": 0, "method": cfg.method,
                                          "seconds": time.perf_counter() - t0})

    graph = sentgraph.build_graph(ds, lex, store, cfg.indicators)
    count = choose_cluster_count(ds, graph, cfg, seed)
    assign = spectral.spectral_clusters(graph, count.k, seed,
                                        row_normalize=cfg.row_normalize)

    model = None
    if cfg.wordgraph.fluency:
        model = wordgraph.NgramModel.from_sentences(
            ds.sentences, cfg.wordgraph.ngram_order)

    order = order_clusters(assign, ds.sentences)
    members = assign.members()
    cluster_sentences = []
    artifacts: dict = {}
    if cfg.collect_wordgraphs:
        artifacts["wordgraphs"] = []
    for label in order:
        cluster = [ds.sentences[i] for i in members[label]]
        cluster_sentences.append(
            wordgraph.summarize_cluster(cluster, cfg.wordgraph, model))
        if cfg.collect_wordgraphs and len(cluster) > 1:
            g = wordgraph.build_word_graph(
                cluster, cfg.wordgraph.adjacent_only_distance)
            artifacts["wordgraphs"].append(_wordgraph_payload(g, label))

    summary = enforce_length(cluster_sentences, cfg.max_output_tokens)
    diagnostics = {
        "n_sentences": n, "method": count.method, "k": assign.k,
        "cluster_sizes": [len(m) for m in members],
        "count": count.diagnostics,
        "seconds": time.perf_counter() - t0,
    }
    if cfg.collect_graph:
        artifacts["graph"] = {
            "n": graph.n,
            "edges": [[int(i), int(j)] for i, j in
                      zip(*[x.tolist() for x in graph.adjacency.nonzero()])
                      if i < j],
            "indicators": {f"{i},{j}": list(names) for (i, j), names
                           in (graph.indicator_trace or {}).items()},
        }
    if cfg.collect_clusters:
        eigenvalues = []
        if graph.n >= 1:
            _, vals = spectral.smallest_eigenvectors(
                spectral.laplacian(graph), assign.k)
            eigenvalues = [float(v) for v in vals]
        artifacts["clusters"] = {"k": assign.k,
                                 "labels": list(assign.labels),
                                 "eigenvalues": eigenvalues}
    return SummaryResult(summary=summary, cluster_count=assign.k,
                         per_cluster_sentences=cluster_sentences,
                         diagnostics=diagnostics, artifacts=artifacts)


def _wordgraph_payload(g: wordgraph.WordGraph, label: int) -> dict:
    return {
        "cluster": int(label),
        "nodes": [{"key": list(n.key) if not n.is_sentinel else n.key,
                   "freq": n.freq} for n in g.nodes],
        "edges": [[u, v, w] for (u, v), w in sorted(g.weights.items())],
    }


def docset_seed(base_seed: int, index: int) -> int:
    return base_seed * _SEED_STRIDE + index


_WORKER_STATE: dict = {}


def _init_worker(cfg, store, lex):
    _WORKER_STATE["cfg"] = cfg
    _WORKER_STATE["store"] = store
    _WORKER_STATE["lex"] = lex


def _run_one(args):
    index, ds = args
    cfg = _WORKER_STATE["cfg"]
    return summarize_docset(ds, cfg, _WORKER_STATE["store"],
                            _WORKER_STATE["lex"],
                            seed=docset_seed(cfg.seed, index))


def resolve_threads(requested: int) -> int:
    cap = os.environ.get(THREADS_ENV_VAR)
    if cap:
        try:
            requested = min(requested, max(1, int(cap)))
        except ValueError:
            log.warning("ignoring non-integer %s=%r", THREADS_ENV_VAR, cap)
    return max(1, requested)


def summarize_corpus(docsets: list[DocumentSet], cfg: PipelineConfig,
                     store, lex) -> list[SummaryResult]:
    """Process document sets with a worker pool, preserving input order."""
    threads = resolve_threads(cfg.threads)
    jobs = list(enumerate(docsets))
    if threads == 1 or len(docsets) <= 1:
        _init_worker(cfg, store, lex)
        return [_run_one(job) for job in jobs]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=threads, mp_context=ctx,
                             initializer=_init_worker,
                             initargs=(cfg, store, lex)) as pool:
        return list(pool.map(_run_one, jobs))
