#!/usr/bin/env python3
"""Independent reference for the text pipeline, TFIDF and ranking.

Regenerates the frozen expectations used by the C++ tests. Uses NLTK's
Porter stemmer in ORIGINAL_ALGORITHM mode and scikit-learn's English
stopword list; shares no code with the C++ implementation.

    python3 tests/oracles/text_oracle.py porter  WORDS_FILE > tests/data/porter_golden.tsv
    python3 tests/oracles/text_oracle.py golden  > tests/data/normalize_golden.tsv
    python3 tests/oracles/text_oracle.py fixture tests/data/researchers.csv
    python3 tests/oracles/text_oracle.py tfidf
"""
import csv
import html
import json
import math
import re
import sys
from collections import Counter

from nltk.stem.porter import PorterStemmer
from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS

STEMMER = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)
TAG = re.compile(r"<[A-Za-z/!?][^>]*>")
ENTITY = re.compile(r"&(amp|lt|gt|quot|#[0-9]+);")


def strip_html(text):
    text = TAG.sub(" ", text)
    return ENTITY.sub(lambda m: html.unescape(m.group(0)), text)


def normalize(text):
    text = strip_html(text)
    text = "".join(c.lower() if "A" <= c <= "Z" else c for c in text)
    out = []
    for tok in re.findall(r"[a-z]+", text):
        if len(tok) < 2 or tok in ENGLISH_STOP_WORDS:
            continue
        s = STEMMER.stem(tok)
        if len(s) < 2:
            continue
        out.append(s)
    return out


GOLDEN = [
    "Deep <i>Learning</i> for NLP!",
    "A I",
    "The the THE",
    "graph-mining, 2020!",
    "naïve bayes classifiers",
    "Mining &amp; Learning",
    '<p class="abs">Generalization of <b>convolutional</b> networks</p>',
    "COVID19 vaccines and covid-19 modeling",
    "Relational databases, relations, relativity",
    "doing things happily in the sky",
    "caresses ponies ties caress cats",
    "feed agreed plastered bled motoring sing",
    "conflated troubled sized hopping tanned falling hissing fizzed failing filing",
    "relational conditional rational valenci hesitanci digitizer conformabli radicalli differentli",
    "vietnamization predication operator feudalism decisiveness hopefulness callousness formaliti sensitiviti",
    "triplicate formative formalize electriciti electrical hopeful goodness",
    "revival allowance inference airliner gyroscopic adjustable defensible irritant replacement",
    "adjustment dependent adoption communism activate angulariti homologous effective bowdlerize",
    "Quasar &lt;feedback&gt; in &quot;galaxy&quot; evolution &#38; AI",
    "an unterminated <tag and 3 < 4 > 2 ok probate rate cease controll roll",
]


def read_dataset(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def document(row, pubset, emphasis):
    pubs = json.loads(row[pubset])
    parts = [p["title"] + " " + p.get("abstract", "") for p in pubs]
    kws = [k.strip() for k in row["keywords"].split(";") if k.strip()]
    for k in kws:
        parts.extend([k] * emphasis)
    return Counter(normalize(" ".join(parts)))


def tfidf(docs):
    n = len(docs)
    vocab = sorted(set().union(*docs))
    df = {t: sum(1 for d in docs if t in d) for t in vocab}
    idf = {t: math.log((1 + n) / (1 + df[t])) + 1 for t in vocab}
    cols = []
    for d in docs:
        raw = {t: d[t] * idf[t] for t in d}
        norm = math.sqrt(sum(v * v for v in raw.values()))
        cols.append({t: v / norm for t, v in raw.items()} if norm > 0 else {})
    return vocab, idf, cols


def query(text, vocab, idf, cols):
    c = Counter(t for t in normalize(text) if t in idf)
    q = {t: c[t] * idf[t] for t in c}
    qn = math.sqrt(sum(v * v for v in q.values()))
    return [sum(q[t] * col.get(t, 0.0) for t in q) / qn for col in cols]


def main():
    mode = sys.argv[1]
    if mode == "porter":
        words = sorted({w for w in open(sys.argv[2]).read().split() if w.isalpha() and w.islower()})
        for w in words:
            print(f"{w}\t{STEMMER.stem(w)}")
    elif mode == "golden":
        for s in GOLDEN:
            print(json.dumps(s, ensure_ascii=False) + "\t" + " ".join(normalize(s)))
    elif mode == "fixture":
        rows = read_dataset(sys.argv[2])
        for pubset in ("most_cited_publications", "most_recent_publications"):
            for emphasis in (0, 1, 3):
                docs = [document(r, pubset, emphasis) for r in rows]
                vocab, idf, cols = tfidf(docs)
                print(pubset, emphasis, "vocabulary", len(vocab))
        docs = [document(r, "most_cited_publications", 1) for r in rows]
        print("token totals", [sum(d.values()) for d in docs])
        print("distinct tokens", [len(d) for d in docs])
        vocab, idf, cols = tfidf(docs)
        for q in ("algorithms", "quasar", "black holes"):
            print(q, ["%.17g" % s for s in query(q, vocab, idf, cols)])
    elif mode == "tfidf":
        docs = [Counter(["apple", "apple", "banana"]), Counter(["banana", "cherry"]),
                Counter(["cherry", "cherry"])]
        vocab, idf, cols = tfidf(docs)
        print({t: "%.17g" % idf[t] for t in vocab})
        for c in cols:
            print({t: "%.17g" % v for t, v in c.items()})
        print("banana", ["%.17g" % s for s in query("banana", vocab, idf, cols)])


if __name__ == "__main__":
    main()
