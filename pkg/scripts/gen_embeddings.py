#!/usr/bin/env python3
"""Build deterministic embeddings for the bundled fixture vocabulary.

Each vector is a hash-seeded random direction plus a shared component per
word stem, so inflectional variants land close together (cosine near
0.98) while unrelated words stay near orthogonal.  Output is GloVe-style
text, one word per line.
"""

import argparse
import hashlib
import json

import numpy as np

DIM = 64
STEM_LEN = 6
SURFACE_WEIGHT = 0.15


def _seed_vec(key: str) -> np.ndarray:
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
    v = rng.standard_normal(DIM)
    return v / np.linalg.norm(v)


def word_vector(word: str) -> np.ndarray:
    base = _seed_vec("stem:" + word[:STEM_LEN])
    surf = _seed_vec("word:" + word)
    v = base + SURFACE_WEIGHT * surf
    return v / np.linalg.norm(v)


def collect_vocab(docsets_path: str, lexicon_path: str) -> list:
    vocab = set()
    with open(docsets_path, encoding="utf-8") as fh:
        for line in fh:
            rec = json.loads(line)
            for doc in rec["documents"]:
                vocab.update(w.lower() for w in doc.split())
            summary = rec.get("summary", "")
            refs = summary if isinstance(summary, list) else [summary]
            for ref in refs:
                vocab.update(w.lower() for w in ref.split())
    with open(lexicon_path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            verb, _, nouns = line.partition("\t")
            vocab.add(verb.strip().lower())
            vocab.update(n.strip().lower() for n in nouns.split(",") if n.strip())
    vocab.discard("")
    return sorted(w for w in vocab if any(c.isalnum() for c in w))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--docsets", default="data/fixture_docsets.jsonl")
    parser.add_argument("--lexicon", default="data/derivational_lexicon.tsv")
    parser.add_argument("--out", default="data/fixture_embeddings.txt")
    args = parser.parse_args()

    words = collect_vocab(args.docsets, args.lexicon)
    with open(args.out, "w", encoding="utf-8") as fh:
        for word in words:
            vec = word_vector(word)
            fh.write(word + " " + " ".join(f"{x:.6f}" for x in vec) + "\n")
    print(f"wrote {len(words)} vectors (dim {DIM}) to {args.out}")


if __name__ == "__main__":
    main()
