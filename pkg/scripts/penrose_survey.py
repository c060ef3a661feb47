"""Classify the row- and column-method inverses over a random suite.

Prints a count of Penrose classes per rank kind and the largest defect
of each guaranteed condition.
"""
import argparse
from collections import Counter

from insitu import classify_col_method, classify_row_method
from insitu.suite import suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    classes = Counter()
    worst = {"row": [0.0] * 4, "col": [0.0] * 4}
    for case in suite(seed=args.seed, count=args.count):
        kind = case.name.split(":")[2]
        m, n = case.a.shape
        for mode, fn in (("row", classify_row_method), ("col", classify_col_method)):
            rep = fn(case.a)
            classes[(mode, kind, m <= n, rep.class_label)] += 1
            worst[mode] = [max(w, d) for w, d in zip(worst[mode], rep.defects)]

    print(f"{'mode':<4} {'rank':<5} {'shape':<5} {'class':<7} count")
    for (mode, kind, wide, label), k in sorted(classes.items()):
        print(f"{mode:<4} {kind:<5} {'wide' if wide else 'tall':<5} {label:<7} {k}")
    for mode, guaranteed in (("row", (0, 1, 3)), ("col", (0, 1, 2))):
        text = ", ".join(f"c{i + 1} {worst[mode][i]:.2e}" for i in guaranteed)
        print(f"{mode} guaranteed-condition max defects: {text}")


if __name__ == "__main__":
    main()
