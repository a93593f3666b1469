"""Word embeddings, cosine similarity, and the verb-to-noun derivational lexicon."""

from __future__ import annotations

import numpy as np


class EmbeddingStore:
    """Case-folded word -> dense vector table loaded from text format.

    All vectors share one dimension.  The store is immutable after load and
    safe to share across workers.
    """

    def __init__(self, words: list[str], matrix: np.ndarray):
        self.dimension = int(matrix.shape[1]) if len(words) else 0
        self._index = {w: i for i, w in enumerate(words)}
        self.words = words
        self.matrix = matrix
        norms = np.linalg.norm(matrix, axis=1) if len(words) else np.zeros(0)
        norms[norms == 0] = 1.0
        self._unit = matrix / norms[:, None]

    def __len__(self):
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word.casefold() in self._index

    def vector(self, word: str) -> np.ndarray | None:
        i = self._index.get(word.casefold())
        return None if i is None else self.matrix[i]


def load_embeddings(path) -> EmbeddingStore:
    """Parse "word v1 v2 ... vd" lines; duplicates keep the first occurrence."""
    words: list[str] = []
    rows: list[np.ndarray] = []
    seen = {}
    dim = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            word, values = parts[0].casefold(), parts[1:]
            try:
                vec = np.array([float(v) for v in values], dtype=float)
            except ValueError:
                raise ValueError(f"line {lineno}: non-numeric vector component") from None
            if dim is None:
                if len(vec) == 0:
                    raise ValueError(f"line {lineno}: no vector components")
                dim = len(vec)
            elif len(vec) != dim:
                raise ValueError(
                    f"line {lineno}: dimension {len(vec)} != expected {dim}")
            if word in seen:
                continue
            seen[word] = True
            words.append(word)
            rows.append(vec)
    if not words:
        raise ValueError("no vectors")
    return EmbeddingStore(words, np.vstack(rows))


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        # all-OOV sentence vectors must never clear a similarity threshold
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def sentence_vector(sentence, store: EmbeddingStore) -> np.ndarray:
    """Mean vector of in-vocabulary, non-punctuation tokens (zero if none)."""
    vecs = []
    for tok in sentence.tokens:
        if tok.pos == "PUNCT":
            continue
        v = store.vector(tok.lower)
        if v is not None:
            vecs.append(v)
    if not vecs:
        return np.zeros(store.dimension)
    return np.mean(vecs, axis=0)


def nearest_neighbors(word: str, store: EmbeddingStore, m: int,
                      min_sim: float) -> list[tuple[str, float]]:
    """Top-m in-vocabulary neighbors by cosine, at or above min_sim.

    The query itself is excluded; ties break lexicographically.  An OOV
    query returns the empty list.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    word = word.casefold()
    qi = store._index.get(word)
    if qi is None:
        return []
    q = store._unit[qi]
    if not np.any(store.matrix[qi]):
        return []
    sims = store._unit @ q
    order = sorted(range(len(store.words)),
                   key=lambda i: (-sims[i], store.words[i]))
    out = []
    for i in order:
        if i == qi or sims[i] < min_sim:
            continue
        out.append((store.words[i], float(sims[i])))
        if len(out) == m:
            break
    return out


class DerivationalLexicon:
    """verb lemma -> set of nominalization lemmas, all lowercase."""

    def __init__(self, table: dict[str, frozenset[str]]):
        self.table = table

    def __len__(self):
        return len(self.table)

    def get(self, verb_lemma: str) -> frozenset[str]:
        return self.table.get(verb_lemma.casefold(), frozenset())


def load_lexicon(path) -> DerivationalLexicon:
    """Parse tab-separated "verb<TAB>noun1,noun2,..." lines."""
    table: dict[str, frozenset[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "\t" not in line:
                raise ValueError(f"line {lineno}: expected verb<TAB>nouns")
            verb, nouns = line.split("\t", 1)
            values = frozenset(n.strip().casefold() for n in nouns.split(",") if n.strip())
            if not values:
                continue
            table[verb.strip().casefold()] = values
    return DerivationalLexicon(table)


def nominalizations(verb_lemma: str, lex: DerivationalLexicon,
                    store: EmbeddingStore, m: int = 5,
                    min_sim: float = 0.65) -> set[str]:
    """Lexicon nominalizations of a verb plus their embedding neighbors.

    An absent verb yields the empty set; with an empty store the expansion
    step contributes nothing.
    """
    base = lex.get(verb_lemma)
    out = set(base)
    for noun in base:
        for neighbor, _sim in nearest_neighbors(noun, store, m, min_sim):
            out.add(neighbor)
    return out
