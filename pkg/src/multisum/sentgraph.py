"""Sentence interaction graph built from four binary indicators.

Adjacent sentences are linked when the earlier one's notional verb has a
nominalization appearing as a noun in the later one, or when the later one
opens with a connective.  Any pair is linked on a shared entity (same
surface, same type) or on near-identical sentence-vector direction.  Edges
are unweighted; one firing indicator suffices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import lexsem

# 39 sentence-initial connectives, overridable via config.
DEFAULT_CONJUNCTIONS = (
    "however", "but", "moreover", "furthermore", "therefore", "thus",
    "meanwhile", "additionally", "in addition", "nevertheless",
    "nonetheless", "consequently", "besides", "also", "still", "yet",
    "instead", "otherwise", "likewise", "similarly", "conversely", "hence",
    "accordingly", "subsequently", "then", "so", "although", "though",
    "whereas", "while", "afterward", "afterwards", "next", "finally",
    "first", "second", "third", "in contrast", "on the other hand",
)

# Auxiliaries, copulas, modals and a few light verbs; their objects rarely
# signal a cross-sentence reference.
DEFAULT_NON_NOTIONAL_VERBS = frozenset({
    "be", "have", "do", "will", "would", "can", "could", "shall", "should",
    "may", "might", "must", "ought", "seem", "become", "get",
})

_QUOTE_DASH_CHARS = set("\"'“”‘’`-–—")


@dataclass(frozen=True)
class IndicatorConfig:
    conjunctions: tuple[str, ...] = DEFAULT_CONJUNCTIONS
    sim_sentence_threshold: float = 0.98
    sim_word_threshold: float = 0.65
    neighbor_m: int = 5
    non_notional_verbs: frozenset[str] = DEFAULT_NON_NOTIONAL_VERBS

    def __post_init__(self):
        for value in (self.sim_sentence_threshold, self.sim_word_threshold):
            if not 0 < value <= 1:
                raise ValueError("similarity thresholds must be in (0, 1]")

    def conjunction_word_tuples(self) -> list[tuple[str, ...]]:
        phrases = [tuple(p.casefold().split()) for p in self.conjunctions]
        # longest first so "in addition" wins over a hypothetical "in"
        return sorted(set(phrases), key=lambda p: (-len(p), p))


@dataclass(frozen=True)
class SentenceGraph:
    n: int
    adjacency: np.ndarray
    indicator_trace: dict[tuple[int, int], tuple[str, ...]] | None = field(
        default=None, compare=False)


def deverbal_match(prev, nxt, lex, store, cfg: IndicatorConfig,
                   _cache: dict | None = None) -> bool:
    """Does a notional verb of ``prev`` nominalize into a noun of ``nxt``?"""
    noun_lemmas = {t.lemma for t in nxt.tokens if t.pos == "NOUN"}
    if not noun_lemmas:
        return False
    for tok in prev.tokens:
        if tok.pos != "VERB" or tok.lemma in cfg.non_notional_verbs:
            continue
        if _cache is not None and tok.lemma in _cache:
            noms = _cache[tok.lemma]
        else:
            noms = lexsem.nominalizations(tok.lemma, lex, store,
                                          cfg.neighbor_m,
                                          cfg.sim_word_threshold)
            if _cache is not None:
                _cache[tok.lemma] = noms
        if noms & noun_lemmas:
            return True
    return False


def conjunction_match(prev, nxt, cfg: IndicatorConfig) -> bool:
    """Does ``nxt`` open with a connective (quotes/dashes skipped)?"""
    words = []
    for tok in nxt.tokens:
        if not words and tok.lower and set(tok.lower) <= _QUOTE_DASH_CHARS:
            continue
        words.append(tok.lower)
    for phrase in cfg.conjunction_word_tuples():
        if tuple(words[:len(phrase)]) == phrase:
            return True
    return False


def entity_match(a, b) -> bool:
    """Same lowercased entity surface with the same type in both sentences."""
    spans_a = set(a.entity_spans())
    if not spans_a:
        return False
    return bool(spans_a & set(b.entity_spans()))


def similarity_match(a, b, store, cfg: IndicatorConfig) -> bool:
    return lexsem.cosine(lexsem.sentence_vector(a, store),
                         lexsem.sentence_vector(b, store)) \
        >= cfg.sim_sentence_threshold


def build_graph(ds, lex, store, cfg: IndicatorConfig | None = None) -> SentenceGraph:
    """Assemble the symmetric 0/1 adjacency matrix over ds.sentences."""
    cfg = cfg or IndicatorConfig()
    sentences = ds.sentences
    n = len(sentences)
    adjacency = np.zeros((n, n), dtype=int)
    trace: dict[tuple[int, int], list[str]] = {}

    def fire(i, j, name):
        lo, hi = (i, j) if i < j else (j, i)
        adjacency[lo, hi] = adjacency[hi, lo] = 1
        trace.setdefault((lo, hi), []).append(name)

    nom_cache: dict[str, set] = {}
    for i in range(n - 1):
        if deverbal_match(sentences[i], sentences[i + 1], lex, store, cfg,
                          _cache=nom_cache):
            fire(i, i + 1, "deverbal")
        if conjunction_match(sentences[i], sentences[i + 1], cfg):
            fire(i, i + 1, "conjunction")

    span_index: dict[tuple[str, str], list[int]] = {}
    for i, sent in enumerate(sentences):
        for span in set(sent.entity_spans()):
            span_index.setdefault(span, []).append(i)
    for members in span_index.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                fire(members[a], members[b], "entity")

    if n and store.dimension:
        vectors = np.vstack([lexsem.sentence_vector(s, store)
                             for s in sentences])
        norms = np.linalg.norm(vectors, axis=1)
        unit = np.divide(vectors, norms[:, None], where=norms[:, None] > 0,
                         out=np.zeros_like(vectors))
        sims = unit @ unit.T
        for i in range(n):
            for j in range(i + 1, n):
                if sims[i, j] >= cfg.sim_sentence_threshold:
                    fire(i, j, "similarity")

    frozen = {pair: tuple(sorted(set(names))) for pair, names in trace.items()}
    return SentenceGraph(n=n, adjacency=adjacency, indicator_trace=frozen)
