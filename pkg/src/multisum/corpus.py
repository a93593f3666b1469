"""Corpus ingestion: JSONL document sets, token-budget truncation, annotation.

Input records are JSON Lines, one document set per line:

    {"documents": ["text of doc 1", ...], "summary": "reference text"}

``summary`` may be a single string or an array of strings (multiple
references) and is optional.  In pre-annotated mode each document is an
object instead of a string:

    {"sentences": [{"tokens": [{"t": "Obama", "pos": "PROPN",
                                "lemma": "Obama", "ent": "B-PERSON"}, ...]}]}

which lets an external annotation stack be replayed bit-exactly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

POS_TAGS = frozenset({
    "NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "CONJ", "NUM",
    "PUNCT", "OTHER",
})

# Mapping of common external (UD-style) tags onto the coarse closed set.
_COARSE_POS = {
    "PROPN": "NOUN", "AUX": "VERB", "CCONJ": "CONJ", "SCONJ": "CONJ",
    "PART": "OTHER", "INTJ": "OTHER", "SYM": "OTHER", "X": "OTHER",
    "SPACE": "OTHER",
}


@dataclass(frozen=True)
class Token:
    """A single annotated token."""

    surface: str
    lower: str
    pos: str
    lemma: str
    entity_tag: tuple[str, str] | None = None  # (type, "B" | "I")


@dataclass(frozen=True)
class AnnotatedSentence:
    """One sentence; the atomic node of the sentence graph."""

    tokens: tuple[Token, ...]
    doc_index: int
    sent_index_in_doc: int
    global_index: int

    def entity_spans(self) -> list[tuple[str, str]]:
        """Decode BIO tags into (lowercased surface, type) spans."""
        spans = []
        cur_words: list[str] = []
        cur_type = None
        for tok in self.tokens:
            tag = tok.entity_tag
            if tag is None:
                if cur_words:
                    spans.append((" ".join(cur_words), cur_type))
                    cur_words, cur_type = [], None
                continue
            etype, bio = tag
            if bio == "B" or not cur_words or etype != cur_type:
                if cur_words:
                    spans.append((" ".join(cur_words), cur_type))
                cur_words, cur_type = [tok.lower], etype
            else:
                cur_words.append(tok.lower)
        if cur_words:
            spans.append((" ".join(cur_words), cur_type))
        return spans


@dataclass
class DocumentSet:
    """An ordered set of related documents plus optional references.

    ``preannotations`` mirrors ``documents`` when the record carried
    pre-annotated sentences; it is consumed by :func:`annotate`.
    """

    documents: list[str]
    sentences: list[AnnotatedSentence] = field(default_factory=list)
    reference_summaries: list[str] | None = None
    preannotations: list | None = None


@dataclass(frozen=True)
class AnnotatorSpec:
    """Selects how sentences are segmented and tokens are annotated.

    ``builtin`` is the self-contained heuristic annotator; ``pre`` replays
    token/pos/lemma/entity fields already present in the input record.
    """

    kind: str = "builtin"

    def __post_init__(self):
        if self.kind not in ("builtin", "pre"):
            raise ValueError(f"unknown annotator kind: {self.kind!r}")


def load_docsets(path, format: str = "jsonl") -> list[DocumentSet]:
    """Parse a JSONL corpus file into one DocumentSet per record."""
    if format != "jsonl":
        raise ValueError(f"unsupported corpus format: {format!r}")
    docsets = []
    with open(path, encoding="utf-8") as fh:
        recno = 0
        for line in fh:
            if not line.strip():
                continue
            recno += 1
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"record {recno}: invalid JSON ({exc})") from None
            docsets.append(_parse_record(record, recno))
    return docsets


def _parse_record(record, recno: int) -> DocumentSet:
    if not isinstance(record, dict) or "documents" not in record:
        raise ValueError(f"record {recno}: missing \"documents\" array")
    docs = record["documents"]
    if not isinstance(docs, list) or not docs:
        raise ValueError(f"record {recno}: \"documents\" must be a non-empty array")

    texts: list[str] = []
    preann: list = []
    any_pre = False
    for d, doc in enumerate(docs):
        if isinstance(doc, str):
            texts.append(doc)
            preann.append(None)
        elif isinstance(doc, dict) and "sentences" in doc:
            any_pre = True
            sents = doc["sentences"]
            if not isinstance(sents, list):
                raise ValueError(f"record {recno}: document {d + 1}: \"sentences\" must be an array")
            toks_per_sent = []
            for sent in sents:
                toks = sent.get("tokens") if isinstance(sent, dict) else None
                if not isinstance(toks, list):
                    raise ValueError(f"record {recno}: document {d + 1}: sentence missing \"tokens\"")
                for t in toks:
                    if not isinstance(t, dict) or not isinstance(t.get("t"), str):
                        raise ValueError(
                            f"record {recno}: document {d + 1}: token missing surface field \"t\"")
                toks_per_sent.append([dict(t) for t in toks])
            texts.append(" ".join(t["t"] for sent in toks_per_sent for t in sent))
            preann.append(toks_per_sent)
        else:
            raise ValueError(f"record {recno}: document {d + 1} is neither text nor pre-annotated")

    summary = record.get("summary")
    if summary is None:
        refs = None
    elif isinstance(summary, str):
        refs = [summary]
    elif isinstance(summary, list) and all(isinstance(s, str) for s in summary):
        refs = list(summary)
    else:
        raise ValueError(f"record {recno}: \"summary\" must be a string or array of strings")

    return DocumentSet(documents=texts, reference_summaries=refs,
                       preannotations=preann if any_pre else None)


def truncate_docset(ds: DocumentSet, budget: int) -> DocumentSet:
    """Cap the total whitespace-token count at ``budget``.

    Each of the S documents gets an equal share; when a document is shorter
    than its share the surplus is redistributed over the remaining documents,
    iteratively, until the budget is met or all text is consumed.  Inputs
    already within budget are returned whole.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    token_lists = [doc.split() for doc in ds.documents]
    counts = [len(t) for t in token_lists]
    if sum(counts) <= budget:
        return DocumentSet(documents=list(ds.documents),
                           reference_summaries=ds.reference_summaries,
                           preannotations=ds.preannotations)
    alloc = _allocate(counts, budget)
    new_docs = [" ".join(toks[:a]) for toks, a in zip(token_lists, alloc)]
    new_pre = None
    if ds.preannotations is not None:
        new_pre = [_slice_preannotation(p, a) if p is not None else None
                   for p, a in zip(ds.preannotations, alloc)]
    return DocumentSet(documents=new_docs,
                       reference_summaries=ds.reference_summaries,
                       preannotations=new_pre)


def _allocate(lengths: list[int], budget: int) -> list[int]:
    """Iterative equal-share allocation with surplus redistribution."""
    alloc = [0] * len(lengths)
    active = [i for i, n in enumerate(lengths) if n > 0]
    remaining = budget
    while remaining > 0 and active:
        share = remaining // len(active)
        if share == 0:
            for i in active[:remaining]:
                alloc[i] += 1
            break
        exhausted = [i for i in active if lengths[i] - alloc[i] <= share]
        if exhausted:
            for i in exhausted:
                remaining -= lengths[i] - alloc[i]
                alloc[i] = lengths[i]
            active = [i for i in active if i not in exhausted]
        else:
            for i in active:
                alloc[i] += share
            remaining -= share * len(active)
            for i in active[:remaining]:
                alloc[i] += 1
            break
    return alloc


def _slice_preannotation(sentences: list, n_tokens: int) -> list:
    out = []
    left = n_tokens
    for toks in sentences:
        if left <= 0:
            break
        kept = toks[:left]
        if kept:
            out.append(kept)
        left -= len(kept)
    return out


def annotate(ds: DocumentSet, annotator: AnnotatorSpec | None = None) -> DocumentSet:
    """Populate ``sentences`` using the selected annotator."""
    annotator = annotator or AnnotatorSpec()
    sentences: list[AnnotatedSentence] = []
    gidx = 0
    for d, doc in enumerate(ds.documents):
        if annotator.kind == "pre":
            if ds.preannotations is None or ds.preannotations[d] is None:
                raise ValueError(f"document {d + 1} carries no pre-annotated sentences")
            sent_tokens = [_pre_tokens(toks, d) for toks in ds.preannotations[d]]
        else:
            sent_tokens = [_builtin_tokens(toks) for toks in _segment(doc)]
        for s, tokens in enumerate(sent_tokens):
            if not tokens:
                continue
            sentences.append(AnnotatedSentence(tokens=tuple(tokens), doc_index=d,
                                               sent_index_in_doc=s, global_index=gidx))
            gidx += 1
    return DocumentSet(documents=list(ds.documents), sentences=sentences,
                       reference_summaries=ds.reference_summaries,
                       preannotations=ds.preannotations)


def _pre_tokens(toks: list[dict], doc_index: int) -> list[Token]:
    out = []
    for t in toks:
        missing = [k for k in ("t", "pos", "lemma") if k not in t]
        if missing:
            raise ValueError(
                f"document {doc_index + 1}: pre-annotated token missing field(s) {missing}")
        pos = str(t["pos"])
        pos = _COARSE_POS.get(pos, pos if pos in POS_TAGS else "OTHER")
        surface = t["t"]
        out.append(Token(surface=surface, lower=surface.casefold(), pos=pos,
                         lemma=str(t["lemma"]).casefold(),
                         entity_tag=_parse_ent(t.get("ent"))))
    return out


def _parse_ent(ent) -> tuple[str, str] | None:
    if ent in (None, "", "O"):
        return None
    ent = str(ent)
    if len(ent) > 2 and ent[1] == "-" and ent[0] in "BI":
        return (ent[2:], ent[0])
    return (ent, "B")


# ---------------------------------------------------------------------------
# Builtin heuristic annotator: whitespace tokenization with punctuation
# detachment, terminal-punctuation segmentation with an abbreviation guard,
# lexicon + suffix POS rules, suffix-stripping lemmas, capitalized-span NER.
# Best effort by design; the pre-annotated path is the fidelity path.
# ---------------------------------------------------------------------------

_LEAD_PUNCT = set("\"'([{“‘")
_TRAIL_PUNCT = set(".,;:!?\"')]}”’")
_CLOSERS = set("\"')]}”’")

ABBREVIATIONS = frozenset({
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "etc", "inc",
    "ltd", "co", "corp", "gen", "sen", "rep", "gov", "capt", "col", "lt",
    "sgt", "maj", "fig", "no", "al", "approx", "dept", "est", "jan", "feb",
    "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec",
    "mon", "tue", "wed", "thu", "fri", "sat", "sun", "a.m", "p.m", "u.s",
    "u.k", "u.n", "e.g", "i.e",
})

_DET_WORDS = frozenset({
    "the", "a", "an", "this", "that", "these", "those", "each", "every",
    "either", "neither", "some", "any", "no", "all", "both", "such",
    "another", "many", "most", "few", "several", "more", "less", "much",
    "other",
})

_PRON_WORDS = frozenset({
    "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us",
    "them", "my", "your", "his", "its", "our", "their", "mine", "yours",
    "hers", "ours", "theirs", "myself", "yourself", "himself", "herself",
    "itself", "ourselves", "themselves", "who", "whom", "whose", "which",
    "what", "someone", "anyone", "everyone", "nobody", "something",
    "anything", "everything", "nothing",
})

_ADP_WORDS = frozenset({
    "of", "in", "on", "at", "by", "for", "with", "from", "to", "into",
    "onto", "over", "under", "between", "among", "through", "during",
    "against", "about", "across", "behind", "beyond", "within", "without",
    "upon", "near", "off", "around", "along", "toward", "towards", "amid",
    "despite", "per", "via", "including",
})

_CONJ_WORDS = frozenset({
    "and", "or", "nor", "but", "because", "although", "though", "whereas",
    "while", "if", "unless", "since", "when", "whether", "until", "once",
    "after", "before", "as", "than",
})

_ADV_WORDS = frozenset({
    "very", "not", "never", "always", "often", "again", "soon", "now",
    "here", "there", "too", "also", "just", "still", "yet", "already",
    "however", "meanwhile", "moreover", "furthermore", "therefore", "thus",
    "nevertheless", "nonetheless", "consequently", "besides", "instead",
    "otherwise", "likewise", "similarly", "conversely", "hence",
    "accordingly", "finally", "next", "then", "subsequently", "later",
    "earlier", "nearby", "almost", "nearly", "roughly",
})

_NUM_WORDS = frozenset({
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
    "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen",
    "sixteen", "seventeen", "eighteen", "nineteen", "twenty", "thirty",
    "forty", "fifty", "sixty", "seventy", "eighty", "ninety", "dozen",
    "hundred", "thousand", "million", "billion",
})

# Irregular lemmas; keys are lowercased surfaces.
_IRREGULAR_LEMMAS = {
    "am": "be", "is": "be", "are": "be", "was": "be", "were": "be",
    "been": "be", "being": "be", "has": "have", "had": "have",
    "having": "have", "does": "do", "did": "do", "done": "do",
    "doing": "do", "went": "go", "gone": "go", "said": "say", "says": "say",
    "made": "make", "took": "take", "taken": "take", "got": "get",
    "gotten": "get", "came": "come", "saw": "see", "seen": "see",
    "knew": "know", "known": "know", "thought": "think", "found": "find",
    "gave": "give", "given": "give", "told": "tell", "became": "become",
    "left": "leave", "felt": "feel", "brought": "bring", "began": "begin",
    "begun": "begin", "kept": "keep", "held": "hold", "wrote": "write",
    "written": "write", "stood": "stand", "heard": "hear", "met": "meet",
    "ran": "run", "paid": "pay", "sat": "sit", "spoke": "speak",
    "spoken": "speak", "led": "lead", "grew": "grow", "grown": "grow",
    "lost": "lose", "fell": "fall", "fallen": "fall", "sent": "send",
    "built": "build", "understood": "understand", "drew": "draw",
    "drawn": "draw", "broke": "break", "broken": "break", "spent": "spend",
    "rose": "rise", "risen": "rise", "drove": "drive", "driven": "drive",
    "bought": "buy", "wore": "wear", "worn": "wear", "chose": "choose",
    "chosen": "choose", "won": "win", "struck": "strike", "sought": "seek",
    "caught": "catch", "taught": "teach", "sold": "sell", "shot": "shoot",
    "flew": "fly", "flown": "fly", "laid": "lay", "died": "die",
    "dying": "die", "used": "use", "using": "use", "men": "man",
    "women": "woman", "children": "child", "people": "person",
    "feet": "foot", "lives": "life", "deaths": "death",
}

_AUX_AND_MODALS = frozenset({
    "be", "am", "is", "are", "was", "were", "been", "being", "have", "has",
    "had", "having", "do", "does", "did", "done", "doing", "will", "would",
    "can", "could", "shall", "should", "may", "might", "must", "ought",
})

# Common verbs whose base/inflections carry no telltale suffix.
_KNOWN_VERB_LEMMAS = frozenset({
    "say", "go", "make", "take", "get", "come", "see", "know", "think",
    "find", "give", "tell", "become", "leave", "feel", "bring", "begin",
    "keep", "hold", "write", "stand", "hear", "meet", "run", "pay", "sit",
    "speak", "lead", "grow", "lose", "fall", "send", "build", "understand",
    "draw", "break", "spend", "rise", "drive", "buy", "wear", "choose",
    "win", "strike", "seek", "catch", "teach", "sell", "shoot", "fly",
    "lay", "let", "put", "set", "cut", "hit", "move", "show", "remain",
    "turn", "call", "ask", "need", "want", "try", "use", "work", "seem",
    "help", "talk", "start", "stay", "open", "close", "reach", "warn",
    "urge", "plan", "face", "vow", "cite", "deny", "blame", "claim",
})

_PUNCT_RE = re.compile(r"[^\w\s]+", re.UNICODE)
_NUM_RE = re.compile(r"[+-]?\d[\d,]*(\.\d+)?%?")


def _is_abbreviation(word_with_dot: str) -> bool:
    core = word_with_dot[:-1]
    if not core:
        return False
    return (core.lower() in ABBREVIATIONS
            or (len(core) == 1 and core.isalpha() and core.isupper())
            or "." in core)


def tokenize(text: str) -> list[str]:
    """Whitespace split with leading/trailing punctuation detached."""
    tokens = []
    for chunk in text.split():
        lead = []
        while len(chunk) > 1 and chunk[0] in _LEAD_PUNCT:
            lead.append(chunk[0])
            chunk = chunk[1:]
        trail = []
        while len(chunk) > 1 and chunk[-1] in _TRAIL_PUNCT:
            if chunk[-1] == "." and _is_abbreviation(chunk):
                break
            trail.append(chunk[-1])
            chunk = chunk[:-1]
        tokens.extend(lead)
        tokens.append(chunk)
        tokens.extend(reversed(trail))
    return tokens


def _segment(text: str) -> list[list[str]]:
    """Split a token stream into sentences at terminal punctuation."""
    tokens = tokenize(text)
    sentences = []
    cur: list[str] = []
    pending = False
    for tok in tokens:
        if pending and tok in _CLOSERS:
            cur.append(tok)
            continue
        if pending:
            sentences.append(cur)
            cur = []
            pending = False
        cur.append(tok)
        if tok in (".", "!", "?"):
            pending = True
    if cur:
        sentences.append(cur)
    return sentences


# Common -ing words that are nouns far more often than verb forms.
_ING_NOUNS = frozenset({
    "morning", "evening", "building", "wedding", "warning", "wiring",
    "ceiling", "clothing", "meeting", "housing", "funding", "training",
    "thing", "everything", "nothing", "something", "anything", "flooding",
})


def _tag_pos(lower: str) -> str:
    if _PUNCT_RE.fullmatch(lower):
        return "PUNCT"
    if _NUM_RE.fullmatch(lower) or lower in _NUM_WORDS:
        return "NUM"
    if lower in _DET_WORDS:
        return "DET"
    if lower in _PRON_WORDS:
        return "PRON"
    if lower in _ADP_WORDS:
        return "ADP"
    if lower in _CONJ_WORDS:
        return "CONJ"
    if lower in _AUX_AND_MODALS or lower in _IRREGULAR_LEMMAS and \
            _IRREGULAR_LEMMAS[lower] in _KNOWN_VERB_LEMMAS:
        return "VERB"
    if lower in _KNOWN_VERB_LEMMAS:
        return "VERB"
    if lower.endswith("ly") and len(lower) > 3:
        return "ADV"
    if lower in _ADV_WORDS:
        return "ADV"
    for suf in ("ous", "ful", "ive", "able", "ible", "less", "ish"):
        if lower.endswith(suf) and len(lower) > len(suf) + 2:
            return "ADJ"
    if lower.endswith("ed") and len(lower) > 3:
        return "VERB"
    if lower.endswith("ing") and len(lower) > 4 and lower not in _ING_NOUNS:
        return "VERB"
    if lower.endswith("s") and not lower.endswith("ss") and \
            _strip_s(lower) in _KNOWN_VERB_LEMMAS:
        return "VERB"
    return "NOUN"


def _strip_s(lower: str) -> str:
    if lower.endswith("ies") and len(lower) > 4:
        return lower[:-3] + "y"
    for suf in ("ses", "xes", "zes", "ches", "shes"):
        if lower.endswith(suf):
            return lower[:-2]
    if lower.endswith("s") and not lower.endswith("ss"):
        return lower[:-1]
    return lower


def _undouble(stem: str) -> str:
    if len(stem) > 2 and stem[-1] == stem[-2] and stem[-1] not in "lsfz":
        return stem[:-1]
    return stem


# Stems whose final e is dropped under inflection but is not recoverable
# from the suffix rules below.
_E_STEMS = frozenset({
    "declar", "injur", "describ", "decid", "provid", "includ", "caus",
    "creat", "measur", "prepar", "compar", "requir", "ensur", "restor",
    "secur", "captur", "ignor", "acquir", "retir", "featur", "pressur",
    "schedul", "not", "vot", "cit", "divid", "invit", "promot", "remov",
    "replac", "reduc", "produc", "introduc",
})


def _restore_e(stem: str) -> str:
    # inflected forms of e-final bases lose the e; recover the common cases
    if len(stem) < 3:
        return stem
    if stem in _E_STEMS:
        return stem + "e"
    if stem.endswith("at") and not stem.endswith("eat"):
        return stem + "e"
    last = stem[-1]
    if last in "cvu":
        return stem + "e"
    if last == "z" and not stem.endswith("zz"):
        return stem + "e"
    if last == "g" and stem[-2:] in ("rg", "dg", "ag"):
        return stem + "e"
    if last == "s" and stem[-2] not in "su":
        return stem + "e"
    return stem


def _lemmatize(lower: str, pos: str) -> str:
    if lower in _IRREGULAR_LEMMAS:
        return _IRREGULAR_LEMMAS[lower]
    if pos == "VERB":
        if lower.endswith("ied") and len(lower) > 4:
            return lower[:-3] + "y"
        if lower.endswith("ed") and len(lower) > 3:
            if lower.endswith("eed"):
                return lower[:-1]
            return _restore_e(_undouble(lower[:-2]))
        if lower.endswith("ing") and len(lower) > 4:
            return _restore_e(_undouble(lower[:-3]))
        if lower.endswith("s") and not lower.endswith("ss"):
            return _strip_s(lower)
        return lower
    if pos == "NOUN":
        if lower.endswith("s") and not lower.endswith(("ss", "us", "is")) \
                and len(lower) > 3:
            return _strip_s(lower)
        return lower
    return lower


_KNOWN_COMMON = (_DET_WORDS | _PRON_WORDS | _ADP_WORDS | _CONJ_WORDS
                 | _ADV_WORDS | _NUM_WORDS | _AUX_AND_MODALS
                 | _KNOWN_VERB_LEMMAS | frozenset(_IRREGULAR_LEMMAS))


def _entity_candidate(surface: str, position: int, lower: str) -> bool:
    if not surface or not surface[0].isupper():
        return False
    if not all(c.isalpha() or c in "'-." for c in surface):
        return False
    if position == 0 and lower in _KNOWN_COMMON:
        return False
    return True


def _builtin_tokens(raw: list[str]) -> list[Token]:
    tokens = []
    for tok in raw:
        lower = tok.casefold()
        pos = _tag_pos(lower)
        tokens.append(Token(surface=tok, lower=lower, pos=pos,
                            lemma=_lemmatize(lower, pos)))
    # Capitalized-span entity pass (single type).
    out: list[Token] = []
    in_span = False
    for i, tok in enumerate(tokens):
        if _entity_candidate(tok.surface, i, tok.lower):
            tag = ("ENTITY", "I" if in_span else "B")
            out.append(Token(surface=tok.surface, lower=tok.lower,
                             pos=tok.pos, lemma=tok.lemma, entity_tag=tag))
            in_span = True
        else:
            out.append(tok)
            in_span = False
    return out
