"""Choosing the number of semantic clusters.

Three routes: a lexical-richness route built on type-token ratios and a
fitted diversity parameter, a distance-based route that scores candidate
cluster counts by inter- minus intra-cluster path distance, and an eigengap
baseline over the Laplacian spectrum.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import spectral

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TtrConfig:
    sigma: float = 0.05
    beta: float = 4.0
    sample_min: int = 35
    sample_max: int = 50
    reps: int = 100
    d_rounds: int = 3
    d_search_range: tuple[float, float] = (1.0, 500.0)
    # "three" keeps a neutral band between low and high; "two" makes every
    # sentence that is not low count as high
    ttr_band: str = "three"
    fallback_d: float = 50.0

    def __post_init__(self):
        if not 0 < self.sigma < 1:
            raise ValueError("sigma must be in (0, 1)")
        if self.beta < 0:
            raise ValueError("beta must be >= 0")
        if self.sample_min > self.sample_max:
            raise ValueError("sample_min must be <= sample_max")
        if self.ttr_band not in ("three", "two"):
            raise ValueError("ttr_band must be 'three' or 'two'")


@dataclass(frozen=True)
class LexicalDiversityModel:
    d_value: float

    def __post_init__(self):
        if not (math.isfinite(self.d_value) and self.d_value > 0):
            raise ValueError("d_value must be finite and positive")


@dataclass(frozen=True)
class ClusterCountResult:
    k: int
    method: str
    diagnostics: dict = field(default_factory=dict)


def ttr(tokens: list[str]) -> float:
    """Unique-token count over total count, case-folded."""
    if not tokens:
        raise ValueError("ttr of empty token list")
    lowers = [t.casefold() for t in tokens]
    return len(set(lowers)) / len(lowers)


def ttr_mckee(n: int, model: LexicalDiversityModel) -> float:
    """Expected type-token ratio of an n-token sample under diversity D."""
    d = model.d_value
    return (d / n) * (math.sqrt(1 + 2 * n / d) - 1)


def diversity_tokens(ds) -> list[str]:
    """The token stream lexical-richness measures operate on: lowercased,
    punctuation excluded."""
    return [tok.lower for sent in ds.sentences for tok in sent.tokens
            if tok.pos != "PUNCT"]


_INVPHI = (math.sqrt(5) - 1) / 2
_INVPHI2 = (3 - math.sqrt(5)) / 2


def golden_section_min(f, lo: float, hi: float, tol: float = 1e-3) -> float:
    """Minimize a unimodal function on [lo, hi]."""
    a, b = float(lo), float(hi)
    h = b - a
    if h <= tol:
        return (a + b) / 2
    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    fc, fd = f(c), f(d)
    while h > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + _INVPHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = f(d)
    return (a + b) / 2


def fit_d_to_curve(sizes: list[int], mean_ttrs: list[float],
                   cfg: TtrConfig) -> float:
    """Least-squares fit of the diversity parameter to an empirical curve."""
    lo, hi = cfg.d_search_range

    def sse(d):
        model = LexicalDiversityModel(d)
        return sum((ttr_mckee(s, model) - t) ** 2
                   for s, t in zip(sizes, mean_ttrs))

    return golden_section_min(sse, lo, hi)


def estimate_d(ds, cfg: TtrConfig, rng_seed: int) -> LexicalDiversityModel:
    """Fit the diversity parameter D from random-sample TTR curves.

    For each sample size in [sample_min..sample_max] draw ``reps`` samples
    without replacement, average their TTRs, fit D to the resulting curve,
    and average the fit over ``d_rounds`` independent rounds.  Inputs
    shorter than sample_max fall back to a fixed D with a warning.
    """
    tokens = np.array(diversity_tokens(ds), dtype=object)
    n = len(tokens)
    if n < cfg.sample_max:
        log.warning("input of %d tokens is too short to fit D; using %.1f",
                    n, cfg.fallback_d)
        return LexicalDiversityModel(cfg.fallback_d)
    rng = np.random.default_rng(rng_seed & 0x7FFFFFFFFFFFFFFF)
    sizes = list(range(cfg.sample_min, cfg.sample_max + 1))
    fits = []
    for _round in range(cfg.d_rounds):
        curve = []
        for s in sizes:
            vals = np.empty(cfg.reps)
            for r in range(cfg.reps):
                idx = rng.choice(n, size=s, replace=False)
                sample = tokens[idx]
                vals[r] = len(set(sample.tolist())) / s
            curve.append(float(vals.mean()))
        fits.append(fit_d_to_curve(sizes, curve, cfg))
    return LexicalDiversityModel(sum(fits) / len(fits))


def classify_sentence(sentence, model: LexicalDiversityModel,
                      cfg: TtrConfig) -> str:
    """Label a sentence low/high/neutral by its TTR against the curve."""
    tokens = [t.lower for t in sentence.tokens if t.pos != "PUNCT"]
    if not tokens:
        return "neutral"
    ttr_true = len(set(tokens)) / len(tokens)
    ttr_esti = ttr_mckee(len(tokens), model)
    ratio = ttr_true / ttr_esti
    if ratio < 1 - cfg.sigma:
        return "low"
    if cfg.ttr_band == "two":
        return "high"
    if ratio >= 1 + cfg.sigma:
        return "high"
    return "neutral"


def cluster_count_ttr(ds, cfg: TtrConfig, rng_seed: int) -> ClusterCountResult:
    """k = floor([n_sent - beta*(n_low - n_high)] * TTR_input), clamped."""
    n_sent = len(ds.sentences)
    if n_sent == 0:
        raise ValueError("cannot choose a cluster count for 0 sentences")
    model = estimate_d(ds, cfg, rng_seed)
    labels = [classify_sentence(s, model, cfg) for s in ds.sentences]
    n_low = labels.count("low")
    n_high = labels.count("high")
    tokens = diversity_tokens(ds)
    ttr_input = ttr(tokens) if tokens else 1.0
    raw = math.floor((n_sent - cfg.beta * (n_low - n_high)) * ttr_input)
    k = max(1, min(n_sent, raw))
    return ClusterCountResult(k=k, method="ttr", diagnostics={
        "n_sent": n_sent, "n_low": n_low, "n_high": n_high,
        "n_neutral": labels.count("neutral"), "ttr_input": ttr_input,
        "d_value": model.d_value, "raw_k": raw,
        "T": len(set(tokens)), "N": len(tokens),
    })


def floyd_warshall(g, unreachable: float | None = None) -> np.ndarray:
    """All-pairs distances with unit edge lengths.

    Unreachable pairs get the finite sentinel n (the node count) unless a
    different sentinel is supplied; finiteness keeps distance averages
    usable while still penalizing cross-component grouping.
    """
    n = g.n
    adj = np.asarray(g.adjacency)
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    dist[adj == 1] = 1.0
    for mid in range(n):
        dist = np.minimum(dist, dist[:, mid][:, None] + dist[mid, :][None, :])
    dist[np.isinf(dist)] = n if unreachable is None else unreachable
    return dist


def cluster_count_distance(g, k_range: tuple[int, int] | None = None,
                           rng_seed: int = 0,
                           unreachable: float | None = None) -> ClusterCountResult:
    """Pick the k whose spectral partition best separates path distances.

    score(k) = mean inter-cluster distance - mean intra-cluster distance,
    computed over all node pairs; ties go to the smallest k.
    """
    n = g.n
    if n < 2:
        return ClusterCountResult(k=1, method="distance",
                                  diagnostics={"scores": {}})
    if k_range is None:
        k_range = (2, min(15, math.ceil(n / 2)))
    lo, hi = k_range
    if hi < lo or hi < 2:
        return ClusterCountResult(k=1, method="distance",
                                  diagnostics={"scores": {}})
    dist = floyd_warshall(g, unreachable)
    rows, cols = np.triu_indices(n, k=1)
    pair_dist = dist[rows, cols]
    scores: dict[int, float] = {}
    best_k, best_score = None, None
    for k in range(lo, hi + 1):
        labels = np.array(spectral.spectral_clusters(g, k, rng_seed).labels)
        same = labels[rows] == labels[cols]
        intra = pair_dist[same]
        inter = pair_dist[~same]
        score = ((float(inter.mean()) if inter.size else 0.0)
                 - (float(intra.mean()) if intra.size else 0.0))
        scores[k] = score
        if best_score is None or score > best_score:
            best_k, best_score = k, score
    return ClusterCountResult(k=best_k, method="distance",
                              diagnostics={"scores": scores})


def cluster_count_eigengap(g, k_max: int | None = None) -> ClusterCountResult:
    """k = position of the largest gap in the ascending Laplacian spectrum."""
    n = g.n
    if n < 2:
        return ClusterCountResult(k=1, method="eigengap",
                                  diagnostics={"eigenvalues": []})
    eigenvalues = np.linalg.eigvalsh(spectral.laplacian(g))
    hi = n - 1 if k_max is None else min(k_max, n - 1)
    best_i, best_gap = 1, -1.0
    for i in range(1, hi + 1):
        gap = float(eigenvalues[i] - eigenvalues[i - 1])
        if gap > best_gap:
            best_i, best_gap = i, gap
    return ClusterCountResult(k=best_i, method="eigengap", diagnostics={
        "eigenvalues": [float(v) for v in eigenvalues]})
