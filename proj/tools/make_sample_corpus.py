#!/usr/bin/env python3
"""Regenerate data/sample_corpus.jsonl.

Deterministic (fixed seed): 1200 short topic-flavored documents plus a handful
of stopword-only documents that exercise the zero-row warning path in the
tf-idf pipeline.
"""

import json
import random
from pathlib import Path

TOPICS = {
    "astronomy": [
        "telescope", "galaxy", "nebula", "orbit", "comet", "supernova", "asteroid",
        "eclipse", "photon", "spectrum", "redshift", "parallax", "quasar", "pulsar",
    ],
    "cooking": [
        "skillet", "saffron", "simmer", "knead", "dough", "braise", "marinade",
        "caramel", "zest", "garnish", "roux", "julienne", "sear", "glaze",
    ],
    "cycling": [
        "derailleur", "cadence", "peloton", "sprocket", "crankset", "headwind",
        "switchback", "puncture", "saddle", "drafting", "climb", "descent", "gravel",
    ],
    "databases": [
        "index", "query", "shard", "replica", "transaction", "rollback", "schema",
        "btree", "vacuum", "checkpoint", "latency", "throughput", "cursor", "join",
    ],
    "gardening": [
        "compost", "mulch", "seedling", "trellis", "pruning", "perennial", "loam",
        "pollinator", "cutting", "graft", "bulb", "canopy", "drainage", "frost",
    ],
    "music": [
        "cadenza", "arpeggio", "tremolo", "fugue", "overture", "crescendo", "timbre",
        "ostinato", "sonata", "vibrato", "counterpoint", "motif", "chord", "refrain",
    ],
}

TEMPLATES = [
    "notes on {a} and {b} from the {c} workshop",
    "why {a} beats {b} when the {c} fails",
    "a field guide to {a}, {b}, and {c}",
    "tuning the {a} before every {b} run",
    "how {a} changed our approach to {b} and {c}",
    "the {a} problem: {b} revisited",
    "getting {a} right without touching the {b}",
    "lessons from a decade of {a} and {b}",
    "{a} basics for people who already know {b}",
    "measuring {a} drift across {b} and {c} cycles",
]

# Every token here is on the built-in stop list, so these documents produce
# all-zero tf-idf rows.
STOPWORD_ONLY = "the and of to in on at by for with"
STOPWORD_ONLY_POSITIONS = (100, 350, 600, 850, 1100)

N_DOCS = 1200
SEED = 20240817


def make_text(rng: random.Random, topic_terms: list[str]) -> str:
    template = rng.choice(TEMPLATES)
    picks = rng.sample(topic_terms, 3)
    text = template.format(a=picks[0], b=picks[1], c=picks[2])
    # Occasionally repeat a term so term frequencies are not all 0/1.
    if rng.random() < 0.3:
        text += f" ({picks[0]}, again {picks[0]})"
    return text


def main() -> None:
    rng = random.Random(SEED)
    topic_names = sorted(TOPICS)
    out_path = Path(__file__).resolve().parent.parent / "data" / "sample_corpus.jsonl"
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("w", encoding="utf-8") as out:
        for i in range(N_DOCS):
            if i in STOPWORD_ONLY_POSITIONS:
                text = STOPWORD_ONLY
            else:
                topic = topic_names[rng.randrange(len(topic_names))]
                text = make_text(rng, TOPICS[topic])
            out.write(json.dumps({"id": i, "text": text}) + "\n")
    print(f"wrote {N_DOCS} documents to {out_path}")


if __name__ == "__main__":
    main()
