#!/usr/bin/env python3
# Copyright 2026 The adserve Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Brute-force scorer for the demo fixture.

Scores every (site page, ad) pair with a from-scratch tokenizer and cosine,
then decides what each zone serves. Writes tests/golden/demo_serving.json.
The C++ matcher is checked against that file, never against this script.

Usage: match_oracle.py [--check]
"""

import json
import math
import pathlib
import re
import sys
from collections import Counter

ROOT = pathlib.Path(__file__).resolve().parents[2]
FIXTURE = ROOT / "fixtures" / "demo"
GOLDEN = ROOT / "tests" / "golden" / "demo_serving.json"
THRESHOLD = 0.05
WEIGHTS = {"keywords": 3.0, "title": 2.0, "description": 1.0}


def stopwords():
    words = set()
    for line in (ROOT / "data" / "stopwords.txt").read_text().splitlines():
        line = line.split("#")[0].strip().lower()
        if line:
            words.add(line)
    return words


STOP = stopwords()


def tokens(text):
    text = re.sub(r"<[^>]*>", " ", text)
    text = re.sub(r"&[A-Za-z0-9#]{1,10};", " ", text)
    out = []
    for t in re.findall(r"[a-z0-9]+", text.lower()):
        if len(t) >= 2 and not t.isdigit():
            out.append(t)
    return out


def unit(weights):
    norm = math.sqrt(sum(w * w for w in weights.values()))
    return {t: w / norm for t, w in weights.items()} if norm else {}


def page_vector(text):
    return unit(Counter(t for t in tokens(text) if t not in STOP))


def ad_vector(ad):
    acc = Counter()
    for kw in ad.get("keywords", []):
        for t in tokens(kw):
            if t not in STOP:
                acc[t] += WEIGHTS["keywords"]
    for field in ("title", "description"):
        for t in tokens(ad.get(field, "")):
            if t not in STOP:
                acc[t] += WEIGHTS[field]
    return unit(acc)


def cosine(a, b):
    if not a or not b:
        return 0.0
    dot = sum(w * b.get(t, 0.0) for t, w in a.items())
    na = math.sqrt(sum(w * w for w in a.values()))
    nb = math.sqrt(sum(w * w for w in b.values()))
    return min(1.0, max(0.0, dot / (na * nb)))


def main():
    fx = json.loads((FIXTURE / "fixture.json").read_text())
    ads = fx["ads"]
    order = {ad["key"]: i for i, ad in enumerate(ads)}
    campaign_of = {ad["key"]: ad["campaign"] for ad in ads}
    sites = {}
    for site in fx["websites"]:
        sites[site["key"]] = page_vector((FIXTURE / site["context_file"]).read_text())

    relevance = {
        s: {ad["key"]: cosine(vec, ad_vector(ad)) for ad in ads}
        for s, vec in sites.items()
    }

    serving = {}
    for zone in fx["zones"]:
        linked = set()
        for link in fx["links"]:
            if link["zone"] != zone["key"]:
                continue
            if "ad" in link:
                linked.add(link["ad"])
            else:
                linked |= {k for k, c in campaign_of.items() if c == link["campaign"]}
        picks = []
        for ad in ads:
            if ad["key"] not in linked:
                continue
            if ad["width"] > zone["width"] or ad["height"] > zone["height"]:
                continue
            rel = relevance[zone["website"]][ad["key"]]
            if rel < THRESHOLD:
                continue
            picks.append((-ad["bid"], -rel, order[ad["key"]], ad["key"]))
        picks.sort()
        serving[zone["key"]] = [p[3] for p in picks[: zone.get("capacity", 3)]]

    result = {
        "threshold": THRESHOLD,
        "serving": serving,
        "relevance": {s: {k: round(v, 12) for k, v in r.items()} for s, r in relevance.items()},
    }
    text = json.dumps(result, indent=2, sort_keys=True) + "\n"
    if "--check" in sys.argv:
        if GOLDEN.read_text() != text:
            print("golden file is stale", file=sys.stderr)
            return 1
        return 0
    GOLDEN.write_text(text)
    for zone, picks in serving.items():
        print(f"{zone:26s} {picks}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
