"""Unsupervised multi-document summarization.

Builds a sentence interaction graph from four lexical indicators, picks a
cluster count from lexical-diversity statistics (or distance/eigengap
alternatives), cuts the graph spectrally, and compresses each cluster to a
single sentence through a weighted word graph.  Ships with a self-contained
ROUGE-1/2/L evaluation harness.
"""

__version__ = "0.1.0"

from .clustnum import (ClusterCountResult, LexicalDiversityModel, TtrConfig,
                       cluster_count_distance, cluster_count_eigengap,
                       cluster_count_ttr, estimate_d, floyd_warshall, ttr,
                       ttr_mckee)
from .corpus import (AnnotatedSentence, AnnotatorSpec, DocumentSet, Token,
                     annotate, load_docsets, truncate_docset)
from .lexsem import (DerivationalLexicon, EmbeddingStore, cosine,
                     load_embeddings, load_lexicon, nearest_neighbors,
                     nominalizations, sentence_vector)
from .pipeline import (PipelineConfig, SummaryResult, enforce_length,
                       order_clusters, summarize_corpus, summarize_docset)
from .rougeeval import (RougeScore, evaluate_corpus, first_n_baseline,
                        rouge_l, rouge_n)
from .sentgraph import IndicatorConfig, SentenceGraph, build_graph
from .spectral import (ClusterAssignment, kmeans, laplacian,
                       smallest_eigenvectors, spectral_clusters)
from .wordgraph import (NgramModel, PathCandidate, WordGraph, WordGraphConfig,
                        WordNode, build_word_graph, edge_weight,
                        k_shortest_paths, summarize_cluster)

__all__ = [
    "AnnotatedSentence", "AnnotatorSpec", "ClusterAssignment",
    "ClusterCountResult", "DerivationalLexicon", "DocumentSet",
    "EmbeddingStore", "IndicatorConfig", "LexicalDiversityModel",
    "NgramModel", "PathCandidate", "PipelineConfig", "RougeScore",
    "SentenceGraph", "SummaryResult", "Token", "TtrConfig", "WordGraph",
    "WordGraphConfig", "WordNode", "annotate", "build_graph",
    "build_word_graph", "cluster_count_distance", "cluster_count_eigengap",
    "cluster_count_ttr", "cosine", "edge_weight", "enforce_length",
    "estimate_d", "evaluate_corpus", "first_n_baseline", "floyd_warshall",
    "k_shortest_paths", "kmeans", "laplacian", "load_docsets",
    "load_embeddings", "load_lexicon", "nearest_neighbors",
    "nominalizations", "order_clusters", "rouge_l", "rouge_n",
    "sentence_vector", "smallest_eigenvectors", "spectral_clusters",
    "summarize_cluster", "summarize_corpus", "summarize_docset",
    "truncate_docset", "ttr", "ttr_mckee",
]
