"""Self-contained ROUGE-1/2/L f1 scoring plus the First-n lead baseline.

Scoring tokenizes by whitespace on lowercased text with no stemming, so
results are bit-reproducible; comparisons should therefore always run both
systems under this same scorer.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float


_ZERO = RougeScore(0.0, 0.0, 0.0)


def _f1(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: list[str], references: list[list[str]], n: int) -> RougeScore:
    """Clipped n-gram overlap; multi-reference score is the max-f1 one."""
    if n not in (1, 2):
        raise ValueError("n must be 1 or 2")
    if not references:
        raise ValueError("at least one reference required")
    if not candidate:
        return _ZERO
    cand_grams = _ngrams(candidate, n)
    cand_total = sum(cand_grams.values())
    best = _ZERO
    for ref in references:
        ref_grams = _ngrams(ref, n)
        ref_total = sum(ref_grams.values())
        overlap = sum((cand_grams & ref_grams).values())
        p = overlap / cand_total if cand_total else 0.0
        r = overlap / ref_total if ref_total else 0.0
        score = RougeScore(p, r, _f1(p, r))
        if score.f1 > best.f1:
            best = score
    return best


def _lcs_length(a: list[str], b: list[str]) -> int:
    # one-row dynamic program, O(len(a)*len(b)) time, O(len(b)) space
    if not a or not b:
        return 0
    row = [0] * (len(b) + 1)
    for x in a:
        prev = 0
        for j, y in enumerate(b, start=1):
            cur = row[j]
            row[j] = prev + 1 if x == y else max(row[j], row[j - 1])
            prev = cur
    return row[-1]


def rouge_l(candidate: list[str], references: list[list[str]]) -> RougeScore:
    """Longest-common-subsequence ROUGE; max f1 over references."""
    if not references:
        raise ValueError("at least one reference required")
    if not candidate:
        return _ZERO
    best = _ZERO
    for ref in references:
        if not ref:
            continue
        lcs = _lcs_length(candidate, ref)
        p = lcs / len(candidate)
        r = lcs / len(ref)
        score = RougeScore(p, r, _f1(p, r))
        if score.f1 > best.f1:
            best = score
    return best


def tokenize_for_scoring(text: str) -> list[str]:
    return text.casefold().split()


def first_n_baseline(ds, n: int) -> str:
    """First n sentences of each document, concatenated in document order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    parts = []
    for sent in ds.sentences:
        if sent.sent_index_in_doc < n:
            parts.append(" ".join(tok.surface for tok in sent.tokens))
    return " ".join(parts)


def evaluate_corpus(system_outputs: list[str],
                    references: list[list[str]]) -> dict:
    """Score each output against its reference set; report per-sample f1s
    and corpus means as {"per_sample": [...], "mean": {...}}.
    """
    if len(system_outputs) != len(references):
        raise ValueError(
            f"count mismatch: {len(system_outputs)} outputs vs "
            f"{len(references)} reference sets")
    per_sample = []
    for out, refs in zip(system_outputs, references):
        cand = tokenize_for_scoring(out)
        ref_tokens = [tokenize_for_scoring(r) for r in refs]
        per_sample.append({
            "r1": rouge_n(cand, ref_tokens, 1).f1,
            "r2": rouge_n(cand, ref_tokens, 2).f1,
            "rl": rouge_l(cand, ref_tokens).f1,
        })
    n = len(per_sample)
    mean = {key: (sum(s[key] for s in per_sample) / n if n else 0.0)
            for key in ("r1", "r2", "rl")}
    return {"per_sample": per_sample, "mean": mean}
