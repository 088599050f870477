#!/usr/bin/env python3
"""Regenerate the synthetic fixtures under fixtures/.

Deterministic (fixed numpy seed). The outputs are committed; rerun only when the
fixture design changes.

  synthetic/seed_lexicon.tsv   30-word NRC-style lexicon (10 category rows per word)
  synthetic/embeddings.txt     16-d vectors for the seed words and candidates
  synthetic/candidates.txt     candidate words (incl. one seed word and two unembedded words)
  synthetic/corpus.jsonl       small unified stance corpus using fixture vocabulary
  exporter/ten_words_768.txt   exporter-format file: '#' header comment, 10 words x 768, 8 significant digits
"""

import json
import pathlib

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parent
EMOTIONS = ["anger", "anticipation", "disgust", "fear", "joy", "sadness", "surprise", "trust"]
NRC_ORDER = ["anger", "anticipation", "disgust", "fear", "joy", "negative", "positive", "sadness", "surprise", "trust"]
DIM = 16

# (words, cluster, emotions); three clusters with different spreads
GROUPS = [
    (["fury", "rage", "outrage", "hostile", "resent"], 0, ["anger", "disgust"]),
    (["dread", "panic", "grief", "mourn", "despair"], 0, ["fear", "sadness"]),
    (["delight", "cheer", "bliss", "glee", "elated"], 1, ["joy", "trust"]),
    (["hope", "eager", "await", "expect", "plan"], 1, ["anticipation"]),
    (["shock", "astound", "sudden", "startle", "wonder"], 2, ["surprise", "anticipation"]),
    (["loyal", "honest", "faith", "reliable", "sincere"], 2, ["trust"]),
]

# candidate -> seed word it is perturbed from (None: unrelated random vector)
CANDIDATES = {
    "furious": "fury", "enraged": "rage", "livid": "outrage", "terrified": "panic",
    "gloomy": "despair", "heartbroken": "grief", "joyous": "delight", "gleeful": "glee",
    "hopeful": "hope", "awaiting": "await", "stunned": "shock", "amazed": "astound",
    "trusty": "reliable", "devoted": "loyal", "uproar": "outrage", "serene": None,
    "table": None, "window": None, "quickly": None, "blue": None,
}


def fmt(x, digits):
    return f"{x:.{digits}g}"


def synthetic(rng):
    out = ROOT / "synthetic"
    out.mkdir(exist_ok=True)

    centers = rng.normal(size=(3, DIM))
    centers /= np.linalg.norm(centers, axis=1, keepdims=True)
    centers *= 9.0
    spread = [0.35, 0.6, 0.9]
    protos = {e: rng.normal(size=DIM) for e in EMOTIONS}

    vectors = {}
    lexicon = {}
    for words, cluster, emos in GROUPS:
        base = centers[cluster] + sum(protos[e] for e in emos) * 0.6
        for w in words:
            vectors[w] = base + rng.normal(scale=spread[cluster], size=DIM)
            lexicon[w] = set(emos)

    seeds = sorted(lexicon)
    for i, (c, anchor) in enumerate(CANDIDATES.items()):
        if anchor is not None:
            vectors[c] = vectors[anchor] + rng.normal(scale=0.25 + 0.15 * (i % 4), size=DIM)
        else:
            vectors[c] = rng.normal(scale=2.0, size=DIM)

    with open(out / "seed_lexicon.tsv", "w", newline="\n") as f:
        for w in seeds:
            for cat in NRC_ORDER:
                flag = 1 if cat in lexicon[w] else 0
                if cat == "positive":
                    flag = 1 if lexicon[w] & {"joy", "trust", "anticipation"} else 0
                if cat == "negative":
                    flag = 1 if lexicon[w] & {"anger", "fear", "sadness", "disgust"} else 0
                f.write(f"{w}\t{cat}\t{flag}\n")

    rows = sorted(vectors)
    with open(out / "embeddings.txt", "w", newline="\n") as f:
        f.write(f"{len(rows)} {DIM}\n")
        for w in rows:
            f.write(w + " " + " ".join(fmt(x, 10) for x in vectors[w]) + "\n")

    with open(out / "candidates.txt", "w", newline="\n") as f:
        for c in list(CANDIDATES) + ["fury", "unseenword", "anotherunseen"]:
            f.write(c + "\n")

    corpus = [
        ("t1", "School uniforms", "Uniforms cause outrage and hostile reactions among pupils.", "Against"),
        ("t2", "School uniforms", "Parents feel delight and trust in a fair dress code.", "For"),
        ("t3", "School uniforms", "Students are furious, livid even, about the rule!", "Against"),
        ("t4", "Nuclear energy", "We await a reliable, honest plan for clean power.", "For"),
        ("t5", "Nuclear energy", "Dread and panic follow every accident.", "Against"),
        ("t6", "Nuclear energy", "Hopeful engineers expect safer reactors soon.", "For"),
        ("t7", "Public transport", "Free buses would bring cheer to commuters.", "For"),
        ("t8", "Public transport", "The sudden fare rise was a shock.", "Against"),
        ("t9", "Public transport", "Riders grieve, mourn and despair over cuts.", "Against"),
        ("t10", "Public transport", "A loyal, devoted ridership deserves faith.", "For"),
    ]
    with open(out / "corpus.jsonl", "w", newline="\n") as f:
        for rid, topic, text, stance in corpus:
            f.write(json.dumps({"id": rid, "topic": topic, "text": text, "stance": stance, "source": "amt"}) + "\n")


def exporter_shape(rng):
    out = ROOT / "exporter"
    out.mkdir(exist_ok=True)
    words = ["abandon", "ability", "absence", "absurd", "abuse", "accident", "accomplish", "accuse", "ache", "achieve"]
    with open(out / "ten_words_768.txt", "w", newline="\n") as f:
        f.write("# model=distilbert-base-uncased@pinned pooling=mean-last-layer-subwords context=none\n")
        f.write(f"{len(words)} 768\n")
        for w in words:
            v = rng.normal(scale=0.3, size=768)
            f.write(w + " " + " ".join(fmt(x, 8) for x in v) + "\n")


def main():
    rng = np.random.default_rng(20240611)
    synthetic(rng)
    exporter_shape(rng)


if __name__ == "__main__":
    main()
