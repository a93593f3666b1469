#!/usr/bin/env python3
"""Generate the bundled news-style evaluation fixture.

Twenty synthetic document sets in the shape of a multi-document news
corpus: each set covers one incident, every document opens with a
paraphrased lede stating the same core facts, and distinct body facts are
spread across documents.  References cover the core plus all body facts,
so lead-only baselines pay for their redundancy.  Text is pre-tokenized
(space-separated tokens), deterministic for a fixed seed.

Set sizes cycle through 3 to 6 documents with fact counts scaled to
match, so no single fixed cluster count suits every set.  Sentence
templates hold nine to ten words with one repeated article, keeping
per-sentence diversity near the corpus-level curve.
"""

import argparse
import json
import random

WEEKDAYS = ["Monday", "Tuesday", "Wednesday", "Thursday"]

PLACES = [
    "Grandville", "Eastport", "Millbrook", "Norfield", "Westhaven",
    "Stonebridge", "Fairmont", "Lakewood", "Redcliff", "Ashford",
    "Brookside", "Hartfield", "Clearwater", "Oakdale", "Riverton",
    "Southgate", "Pinehurst", "Maplewood", "Kingsford", "Elmsworth",
]

# (event noun, past-tense verb, nominalization the lexicon maps to)
EVENTS = [
    ("fire", "destroyed", "destruction"),
    ("storm", "damaged", "damage"),
    ("explosion", "destroyed", "destruction"),
    ("earthquake", "damaged", "damage"),
    ("blaze", "destroyed", "destruction"),
    ("flood", "damaged", "damage"),
]

ENTITY_FIRST = [
    "Mercy", "Eastside", "Northgate", "Silver", "Oak", "River", "Union",
    "Central", "Harbor", "Summit", "Willow", "Garden", "Franklin",
    "Madison", "Crescent", "Pioneer", "Beacon", "Granite", "Maple", "Cedar",
]
ENTITY_SECOND = [
    "Hospital", "Bridge", "District", "Academy", "Station", "Park",
    "Terminal", "Plaza", "Library", "Stadium", "Chapel", "Depot", "Market",
    "Tower", "Clinic", "Theater", "Museum", "Institute", "Wharf", "Mill",
]

NUMBERS = ["twenty", "thirty", "forty", "fifty", "sixty", "seventy",
           "eighty", "ninety"]


def fact_casualty(e, num, ctx):
    return {
        "variants": [
            [f"The {ctx['event']} injured {num} of the workers near {e} ."],
            [f"The doctors said the {ctx['event']} injured {num} near {e} ."],
            [f"However , the {ctx['event']} injured {num} workers near the {e} ."],
        ],
        "ref": f"The {ctx['event']} injured {num} workers near {e} .",
    }


def fact_shelter(e, num, ctx):
    return {
        "variants": [
            [f"The city moved {num} families to the {e} overnight ."],
            [f"The city later moved {num} families to the {e} ."],
            [f"Meanwhile , the city moved {num} families to the {e} ."],
        ],
        "ref": f"About {num} families moved to {e} .",
    }


def fact_closure(e, num, ctx):
    return {
        "variants": [
            [f"However , the authority closed the {e} for safety checks ."],
            [f"The authority closed the {e} for extended safety checks ."],
            [f"The authority closed the {e} for repeated safety checks ."],
        ],
        "ref": f"The authority closed {e} for safety checks .",
    }


def fact_funding(e, num, ctx):
    first = f"The council approved the relief fund at {e} ."
    return {
        "variants": [
            [first, f"The approval released {num} million dollars for the repairs ."],
            [first, f"The approval released {num} million dollars for the cleanup ."],
            [first],
        ],
        "ref": (f"The council approved a relief fund at {e} and the approval "
                f"released {num} million dollars ."),
    }


def fact_probe(e, num, ctx):
    second = "The investigation soon focused on the faulty power transformer ."
    return {
        "variants": [
            [f"The inspectors investigated the wiring at {e} overnight .", second],
            [f"The inspectors investigated the wiring at {e} on Saturday .", second],
            [f"The inspectors investigated the wiring at {e} late Saturday ."],
        ],
        "ref": f"The investigation at {e} focused on a faulty transformer .",
    }


def fact_rescue(e, num, ctx):
    return {
        "variants": [
            [f"The crews rescued {num} residents from the {e} overnight ."],
            [f"The rescue crews pulled {num} residents from the {e} ."],
            [f"However , the crews rescued {num} residents from the {e} ."],
        ],
        "ref": f"Crews rescued {num} residents from {e} .",
    }


def fact_power(e, num, ctx):
    return {
        "variants": [
            [f"The {ctx['event']} cut the power to homes around {e} ."],
            [f"The utility said the {ctx['event']} cut power around {e} ."],
            [f"Meanwhile , the {ctx['event']} cut the power around {e} ."],
        ],
        "ref": f"The {ctx['event']} cut power to homes around {e} .",
    }


def fact_school(e, num, ctx):
    return {
        "variants": [
            [f"The district kept schools near the {e} closed today ."],
            [f"However , the district kept the schools near {e} closed ."],
            [f"The district kept the schools near {e} closed again ."],
        ],
        "ref": f"Schools near {e} stayed closed .",
    }


def fact_warning(e, num, ctx):
    return {
        "variants": [
            [f"Meanwhile , the agency warned the residents near {e} .",
             "The smoke warning stayed in place until the morning ."],
            [f"The agency warned the residents near {e} about smoke .",
             "The smoke warning stayed in place through the morning ."],
            [f"The agency also warned the residents near {e} ."],
        ],
        "ref": (f"The agency warned residents near {e} about smoke and the "
                f"warning stayed in place ."),
    }


def fact_donation(e, num, ctx):
    return {
        "variants": [
            [f"The charity donated {num} thousand blankets to the {e} ."],
            [f"The charity delivered {num} thousand blankets to the {e} ."],
            [f"The charity donated the blankets to {e} this week ."],
        ],
        "ref": f"The charity donated {num} thousand blankets to {e} .",
    }


def fact_traffic(e, num, ctx):
    return {
        "variants": [
            [f"The police closed the roads around {e} for hours ."],
            [f"However , the police closed the roads around {e} ."],
            [f"The police kept the roads around {e} closed longer ."],
        ],
        "ref": f"Roads around {e} closed for hours .",
    }


def fact_protest(e, num, ctx):
    return {
        "variants": [
            [f"In addition , the teachers protested outside the {e} .",
             "The protest drew a large crowd despite the rain ."],
            [f"The teachers protested outside the {e} over pay delays .",
             "The protest drew a steady crowd despite the rain ."],
            [f"The teachers protested outside the {e} over continuing delays ."],
        ],
        "ref": f"Teachers protested outside {e} and the protest drew a crowd .",
    }


FACT_KINDS = [
    fact_casualty, fact_shelter, fact_closure, fact_funding, fact_probe,
    fact_rescue, fact_power, fact_school, fact_warning, fact_donation,
    fact_traffic, fact_protest,
]

# documents per set cycles through the ladder; facts scale with size
SIZE_LADDER = [3, 4, 5, 6]
FACTS_FOR_SIZE = {3: [5, 6], 4: [6, 7], 5: [9], 6: [10]}


def make_docset(index: int, rng: random.Random) -> dict:
    place = PLACES[index % len(PLACES)]
    event, verb, nom = EVENTS[index % len(EVENTS)]
    weekday = rng.choice(WEEKDAYS)
    n_docs = SIZE_LADDER[index % len(SIZE_LADDER)]
    n_facts = rng.choice(FACTS_FOR_SIZE[n_docs])

    entities = [f"{a} {b}" for a, b in
                zip(rng.sample(ENTITY_FIRST, 11), rng.sample(ENTITY_SECOND, 11))]
    core_obj = entities[0]

    lede_a = [
        f"The {place} {event} {verb} the {core_obj} on {weekday} .",
        f"On {weekday} the {place} {event} {verb} the {core_obj} .",
        f"The {place} {event} {verb} the {core_obj} late on {weekday} , the mayor said .",
        f"The {place} {event} {verb} the {core_obj} early on {weekday} .",
        f"The {place} {event} {verb} the {core_obj} on {weekday} evening .",
        f"On {weekday} evening the {place} {event} {verb} the {core_obj} .",
    ]
    lede_b = [
        f"The {nom} left the town without power for hours .",
        f"The {nom} left the town without power all night .",
        f"The {nom} left the town without power until evening .",
        f"The {nom} left the town without power this morning .",
        f"The {nom} left the town without power until early morning .",
        f"The {nom} left the town without power for two days .",
    ]

    ctx = {"event": event, "place": place}
    kinds = rng.sample(FACT_KINDS, n_facts)
    facts = []
    for fi, kind in enumerate(kinds):
        facts.append(kind(entities[1 + fi], rng.choice(NUMBERS), ctx))

    # each fact lands in 2-3 documents, spread round-robin
    doc_sents = [[lede_a[j % len(lede_a)], lede_b[j % len(lede_b)]]
                 for j in range(n_docs)]
    for fi, fact in enumerate(facts):
        copies = min(n_docs, 2 if n_docs == 3 else rng.choice([2, 2, 3]))
        doc_ids = sorted(rng.sample(range(n_docs), copies),
                         key=lambda d: (d + fi) % n_docs)
        for occurrence, d in enumerate(doc_ids):
            variant = fact["variants"][occurrence % len(fact["variants"])]
            doc_sents[d].extend(variant)

    documents = [" ".join(sents) for sents in doc_sents]
    core_ref = (f"The {place} {event} {verb} the {core_obj} on {weekday} "
                f"and the {nom} left the town without power .")
    summary = " ".join([core_ref] + [f["ref"] for f in facts])
    return {"documents": documents, "summary": summary}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/fixture_docsets.jsonl")
    parser.add_argument("--seed", type=int, default=20260819)
    parser.add_argument("--count", type=int, default=20)
    args = parser.parse_args()

    records = []
    for i in range(args.count):
        rng = random.Random(args.seed + i)
        records.append(make_docset(i, rng))
    with open(args.out, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")
    n_docs = sum(len(r["documents"]) for r in records)
    print(f"wrote {len(records)} document sets ({n_docs} documents) to {args.out}")


if __name__ == "__main__":
    main()
