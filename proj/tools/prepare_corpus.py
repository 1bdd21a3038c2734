#!/usr/bin/env python3
# Copyright 2026 The boundkit Authors.
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
"""Builds the bundled desk-scale corpora from the World English Bible.

The World English Bible is in the public domain. Input is the verse table
t_web.csv.gz (columns: id, book, chapter, verse, text) as shipped with the
`freebible` package. Books 1-44 (Law through Acts) feed the training and
in-domain splits; books 45-66 (Epistles, Revelation) are the pseudo
out-of-domain source.
"""

import argparse
import csv
import gzip
import random
import re
from pathlib import Path

FOOTNOTE = re.compile(r"\{[^}]*\}")
SPACES = re.compile(r"\s+")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("verses", help="path to t_web.csv.gz")
    ap.add_argument("--out-dir", default="data")
    ap.add_argument("--train", type=int, default=16000)
    ap.add_argument("--indomain", type=int, default=2000)
    ap.add_argument("--ood", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=20210601)
    args = ap.parse_args()

    narrative, letters = [], []
    with gzip.open(args.verses, "rt", encoding="utf-8") as f:
        rows = csv.reader(f)
        next(rows)
        for _, book, _, _, text in rows:
            text = SPACES.sub(" ", FOOTNOTE.sub("", text)).strip()
            if not text:
                continue
            (narrative if int(book) <= 44 else letters).append(text)

    rng = random.Random(args.seed)
    rng.shuffle(narrative)
    rng.shuffle(letters)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    splits = {
        "train.txt": narrative[: args.train],
        "indomain.txt": narrative[args.train : args.train + args.indomain],
        "ood.txt": letters[: args.ood],
    }
    for name, lines in splits.items():
        (out / name).write_text("".join(l + "\n" for l in lines), encoding="utf-8")
        print(name, len(lines))


if __name__ == "__main__":
    main()
