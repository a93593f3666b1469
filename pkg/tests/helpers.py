"""Small builders shared across test modules."""

import numpy as np

from multisum.corpus import AnnotatorSpec, DocumentSet, annotate
from multisum.lexsem import DerivationalLexicon, EmbeddingStore
from multisum.sentgraph import SentenceGraph


def docset(*documents):
    return DocumentSet(documents=list(documents), sentences=[])


def sents(*documents):
    """Annotate the given document strings and return the sentence list."""
    ds = annotate(docset(*documents), AnnotatorSpec())
    return ds.sentences


def empty_store():
    return EmbeddingStore([], np.zeros((0, 0)))


def empty_lexicon():
    return DerivationalLexicon({})


def mkgraph(n, edges):
    """SentenceGraph over n nodes with the given undirected 0-indexed edges."""
    adjacency = np.zeros((n, n), dtype=bool)
    for i, j in edges:
        adjacency[i, j] = True
        adjacency[j, i] = True
    return SentenceGraph(n=n, adjacency=adjacency, indicator_trace={})
