"""Cluster-to-sentence compression over a word graph.

Sentences of a cluster are threaded through a shared directed graph whose
nodes are (lowercase form, POS) classes; a token may not map onto a node
that already holds a token of the same sentence, so repeated words fork
nodes.  Edge weights favor frequent, close word pairs; candidate sentences
are the lightest START-to-END paths, optionally re-ranked by dividing path
weight by summed smoothed n-gram probabilities.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass, field

START_KEY = "START"
END_KEY = "END"

# Markers for out-of-sentence context positions, distinct from any token.
_EDGE_LEFT = "\x00bos"
_EDGE_RIGHT = "\x00eos"


@dataclass
class WordNode:
    key: tuple[str, str] | str
    index: int
    occurrences: list[tuple[int, int]] = field(default_factory=list)
    surfaces: Counter = field(default_factory=Counter)

    @property
    def freq(self) -> int:
        return len(self.occurrences)

    @property
    def is_sentinel(self) -> bool:
        return isinstance(self.key, str)

    def sentence_ids(self) -> set[int]:
        return {sid for sid, _ in self.occurrences}

    def position_in(self, sid: int) -> int | None:
        for s, p in self.occurrences:
            if s == sid:
                return p
        return None

    def best_surface(self) -> str:
        return self.surfaces.most_common(1)[0][0]


@dataclass
class WordGraph:
    nodes: list[WordNode]
    successors: dict[int, list[int]]
    weights: dict[tuple[int, int], float]
    sentence_paths: list[list[int]]
    cluster_size: int
    start: int = 0
    end: int = 1


@dataclass
class PathCandidate:
    nodes: tuple[int, ...]
    weight_sum: float
    fluency_sum: float | None = None
    score: float | None = None
    fallback: bool = False


def build_word_graph(cluster, adjacent_only_distance: bool = False) -> WordGraph:
    """Thread each sentence through the shared graph, merging compatible
    tokens onto existing nodes.

    Mapping prefers, in order: most context coincidence with the node's
    existing occurrences, highest mapping frequency, earliest creation.
    """
    if not cluster:
        raise ValueError("cluster must be non-empty")
    start = WordNode(key=START_KEY, index=0)
    end = WordNode(key=END_KEY, index=1)
    nodes = [start, end]
    by_key: dict[tuple[str, str], list[int]] = {}
    edge_set: set[tuple[int, int]] = set()
    succ: dict[int, list[int]] = {}
    sentence_paths: list[list[int]] = []

    for sid, sentence in enumerate(cluster):
        toks = sentence.tokens
        lowers = [t.lower for t in toks]

        def context(s, p, side, cur_lowers=lowers, cur_sid=sid):
            words = cur_lowers if s == cur_sid else _sent_lowers(cluster[s])
            q = p - 1 if side == 0 else p + 1
            if q < 0:
                return _EDGE_LEFT
            if q >= len(words):
                return _EDGE_RIGHT
            return words[q]

        path = [0]
        start.occurrences.append((sid, -1))
        for p, tok in enumerate(toks):
            key = (tok.lower, tok.pos)
            candidates = [ni for ni in by_key.get(key, ())
                          if sid not in nodes[ni].sentence_ids()]
            if candidates:
                def rank(ni):
                    node = nodes[ni]
                    coincidence = 0
                    for s2, p2 in node.occurrences:
                        if context(sid, p, 0) == context(s2, p2, 0):
                            coincidence += 1
                        if context(sid, p, 1) == context(s2, p2, 1):
                            coincidence += 1
                    return (-coincidence, -node.freq, node.index)
                chosen = min(candidates, key=rank)
            else:
                chosen = len(nodes)
                nodes.append(WordNode(key=key, index=chosen))
                by_key.setdefault(key, []).append(chosen)
            nodes[chosen].occurrences.append((sid, p))
            nodes[chosen].surfaces[tok.surface] += 1
            path.append(chosen)
        end.occurrences.append((sid, len(toks)))
        path.append(1)
        sentence_paths.append(path)
        for u, v in zip(path, path[1:]):
            if (u, v) not in edge_set:
                edge_set.add((u, v))
                succ.setdefault(u, []).append(v)

    graph = WordGraph(nodes=nodes, successors=succ, weights={},
                      sentence_paths=sentence_paths, cluster_size=len(cluster))
    for u, v in edge_set:
        graph.weights[(u, v)] = edge_weight(graph, u, v, adjacent_only_distance)
    for u in succ:
        succ[u].sort()
    return graph


def _sent_lowers(sentence) -> list[str]:
    return [t.lower for t in sentence.tokens]


def edge_weight(g: WordGraph, i: int, j: int,
                adjacent_only_distance: bool = False) -> float:
    """w = [(f(i)+f(j)) / sum over sentences of 1/distance] / (f(i)*f(j)).

    The sum ranges over sentences containing node i before node j; sentinel
    occurrences sit at positions -1 and sentence length, so sentinel
    frequency equals the cluster size.
    """
    ni, nj = g.nodes[i], g.nodes[j]
    pos_i = dict(ni.occurrences)
    pos_j = dict(nj.occurrences)
    denom = 0.0
    for sid, pi in pos_i.items():
        pj = pos_j.get(sid)
        if pj is None or pj <= pi:
            continue
        dist = pj - pi
        if adjacent_only_distance and dist != 1:
            continue
        denom += 1.0 / dist
    if denom == 0:
        raise ValueError(f"no co-occurrence supports edge {i}->{j}")
    return ((ni.freq + nj.freq) / denom) * (1.0 / (ni.freq * nj.freq))


def _path_is_valid(g: WordGraph, path: tuple[int, ...], min_tokens: int,
                   require_verb: bool) -> bool:
    words = [g.nodes[i] for i in path if not g.nodes[i].is_sentinel]
    if len(words) < min_tokens:
        return False
    if require_verb and not any(n.key[1] == "VERB" for n in words):
        return False
    return True


def k_shortest_paths(g: WordGraph, K: int, min_tokens: int = 6,
                     require_verb: bool = True,
                     enumeration_budget: int = 1000) -> list[PathCandidate]:
    """Up to K valid loopless START-to-END paths, lightest first.

    Paths are enumerated best-first over partial simple paths, which yields
    them in exact (weight_sum, node-index tuple) order; equal-weight ties
    are therefore deterministic.  Candidates shorter than ``min_tokens``
    real tokens or lacking a VERB node are discarded.  If the enumeration
    budget runs out before any valid path appears, the single unfiltered
    shortest path is returned as a fallback.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    valid: list[PathCandidate] = []
    complete = 0
    first_path: PathCandidate | None = None
    # pop cap guards against frontier blowup on heavily merged graphs
    pop_cap = 500_000
    heap: list[tuple[float, tuple[int, ...]]] = [(0.0, (g.start,))]
    pops = 0
    while heap and complete < enumeration_budget and pops < pop_cap:
        cost, path = heapq.heappop(heap)
        pops += 1
        u = path[-1]
        if u == g.end:
            complete += 1
            cand = PathCandidate(nodes=path, weight_sum=cost)
            if first_path is None:
                first_path = cand
            if _path_is_valid(g, path, min_tokens, require_verb):
                valid.append(cand)
                if len(valid) == K:
                    break
            continue
        for v in g.successors.get(u, ()):
            if v in path:
                continue
            heapq.heappush(heap, (cost + g.weights[(u, v)], path + (v,)))
    if valid:
        return valid
    if first_path is None:
        raise RuntimeError("no START-to-END path; graph construction broken")
    first_path.fallback = True
    return [first_path]


class NgramModel:
    """Add-one-smoothed n-gram model over the input's own token stream.

    The vocabulary contains real tokens only; per-sentence padding tokens
    condition probabilities but are not vocabulary members.
    """

    BOS = "<s>"
    EOS = "</s>"

    def __init__(self, order: int = 3):
        if order < 2:
            raise ValueError("order must be >= 2")
        self.order = order
        self.context_counts: Counter = Counter()
        self.full_counts: Counter = Counter()
        self.vocab: set[str] = set()

    @classmethod
    def from_sentences(cls, sentences, order: int = 3) -> "NgramModel":
        model = cls(order)
        for sentence in sentences:
            model.add_sentence([t.lower for t in sentence.tokens])
        return model

    def add_sentence(self, lowers: list[str]):
        self.vocab.update(lowers)
        seq = [self.BOS] * (self.order - 1) + lowers + [self.EOS]
        for i in range(self.order - 1, len(seq)):
            ctx = tuple(seq[i - self.order + 1:i])
            self.context_counts[ctx] += 1
            self.full_counts[ctx + (seq[i],)] += 1

    def prob(self, ctx: tuple[str, ...], word: str) -> float:
        v = max(1, len(self.vocab))
        return (self.full_counts.get(ctx + (word,), 0) + 1) / \
               (self.context_counts.get(ctx, 0) + v)

    def fluency(self, lowers: list[str]) -> float:
        """Sum of smoothed n-gram probabilities over the padded sequence."""
        seq = [self.BOS] * (self.order - 1) + lowers + [self.EOS]
        total = 0.0
        for i in range(self.order - 1, len(seq)):
            total += self.prob(tuple(seq[i - self.order + 1:i]), seq[i])
        return total


@dataclass(frozen=True)
class WordGraphConfig:
    k_paths: int = 50
    min_tokens: int = 6
    require_verb: bool = True
    enumeration_budget: int = 1000
    adjacent_only_distance: bool = False
    fluency: bool = True
    ngram_order: int = 3


_NO_SPACE_BEFORE = set(".,;:!?)]}”’'\"")
_NO_SPACE_AFTER = set("([{“‘")


def detokenize(tokens: list[str]) -> str:
    """Space-join with punctuation re-attachment."""
    out: list[str] = []
    glue_next = False
    for tok in tokens:
        if out and not glue_next and not (tok and all(c in _NO_SPACE_BEFORE for c in tok)):
            out.append(" ")
        out.append(tok)
        glue_next = bool(tok) and all(c in _NO_SPACE_AFTER for c in tok)
    return "".join(out)


def realize_path(g: WordGraph, path: tuple[int, ...]) -> str:
    tokens = [g.nodes[i].best_surface() for i in path
              if not g.nodes[i].is_sentinel]
    return detokenize(tokens)


def summarize_cluster(cluster, cfg: WordGraphConfig | None = None,
                      model: NgramModel | None = None) -> str:
    """Compress a cluster to one sentence.

    Singleton clusters pass through verbatim.  Otherwise the K lightest
    valid paths are scored by weight_sum / fluency_sum and the lowest score
    wins; with fluency disabled the lightest valid path wins outright.
    """
    cfg = cfg or WordGraphConfig()
    if not cluster:
        raise ValueError("cluster must be non-empty")
    if len(cluster) == 1:
        return detokenize([t.surface for t in cluster[0].tokens])
    g = build_word_graph(cluster, cfg.adjacent_only_distance)
    candidates = k_shortest_paths(g, cfg.k_paths, cfg.min_tokens,
                                  cfg.require_verb, cfg.enumeration_budget)
    if cfg.fluency and model is not None and not candidates[0].fallback:
        for cand in candidates:
            lowers = [g.nodes[i].key[0] for i in cand.nodes
                      if not g.nodes[i].is_sentinel]
            cand.fluency_sum = model.fluency(lowers)
            cand.score = cand.weight_sum / cand.fluency_sum
        best = min(candidates, key=lambda c: c.score)
    else:
        best = candidates[0]
    return realize_path(g, best.nodes)
