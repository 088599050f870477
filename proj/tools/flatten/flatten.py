#!/usr/bin/env python3
"""Flatten native stance-corpus files into JSONL rows for `elex corpus convert`.

These are worked examples, not format contracts: each reader covers the layout of
the sample under fixtures/corpus/<name>/ and emits rows with the default field
names (id, topic, text, stance) carrying the corpus-native label.

  flatten.py amt FILE.xml...      argumentation-graph XML, one row per EDU
  flatten.py ukp FILE.tsv...      sentence TSV (topic, sentence, annotation columns)
  flatten.py pe  ESSAY.ann...     brat standoff; claims with a Stance attribute
  flatten.py ibm FILE.csv...      claim CSV (topicText, claims.claimCorrectedText, claims.stance)

Output goes to stdout.
"""

import csv
import json
import pathlib
import sys
import xml.etree.ElementTree as ET


def emit(row):
    sys.stdout.write(json.dumps(row, ensure_ascii=False, sort_keys=False) + "\n")


def amt(path):
    root = ET.parse(path).getroot()
    graph = root.get("id")
    topic = root.get("topic_id", "")
    adu_type = {adu.get("id"): adu.get("type") for adu in root.iter("adu")}
    # segmentation edges link each EDU to the ADU it realizes
    edu_to_adu = {e.get("src"): e.get("trg") for e in root.iter("edge") if e.get("type") == "seg"}
    for edu in root.iter("edu"):
        adu = edu_to_adu.get(edu.get("id"))
        if adu is None or adu not in adu_type:
            continue
        emit({"id": f"{graph}/{edu.get('id')}", "topic": topic, "text": (edu.text or "").strip(),
              "stance": adu_type[adu]})


def ukp(path):
    with open(path, newline="", encoding="utf-8") as f:
        for i, row in enumerate(csv.DictReader(f, delimiter="\t"), start=1):
            label = row["annotation"]
            if label.startswith("Argument_"):
                label = label[len("Argument_"):]
            emit({"id": f"{pathlib.Path(path).stem}/{i}", "topic": row["topic"], "text": row["sentence"],
                  "stance": label})


def pe(path):
    ann = pathlib.Path(path)
    # the essay prompt is the first line of the matching .txt file
    topic = ann.with_suffix(".txt").read_text(encoding="utf-8").splitlines()[0].strip()
    spans, stance = {}, {}
    for line in ann.read_text(encoding="utf-8").splitlines():
        fields = line.split("\t")
        if line.startswith("T") and len(fields) == 3:
            kind = fields[1].split(" ")[0]
            if kind == "Claim":
                spans[fields[0]] = fields[2]
        elif line.startswith("A") and len(fields) == 2:
            name, target, value = fields[1].split(" ")
            if name == "Stance":
                stance[target] = value
    for tid, text in spans.items():
        if tid in stance:
            emit({"id": f"{ann.stem}/{tid}", "topic": topic, "text": text, "stance": stance[tid]})


def ibm(path):
    with open(path, newline="", encoding="utf-8") as f:
        for row in csv.DictReader(f):
            emit({"id": row["claims.claimId"], "topic": row["topicText"], "text": row["claims.claimCorrectedText"],
                  "stance": row["claims.stance"]})


READERS = {"amt": amt, "ukp": ukp, "pe": pe, "ibm": ibm}


def main(argv):
    if len(argv) < 3 or argv[1] not in READERS:
        sys.stderr.write(__doc__)
        return 1
    for path in argv[2:]:
        READERS[argv[1]](path)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
