#!/usr/bin/env python3
"""Convert a KEEL .dat file (ARFF-like header, comma-separated rows, class in
the last column) into LIBSVM text format.

Class values are mapped to integer labels in the order given by --classes, or
in sorted order of the raw values when --classes is omitted. Zero-valued
features are omitted from the output, as LIBSVM writers usually do.
"""
import argparse
import sys


def read_rows(path):
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("@") or line.startswith("%"):
                continue
            rows.append([tok.strip() for tok in line.split(",")])
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("input")
    parser.add_argument("output")
    parser.add_argument("--classes", help="comma-separated raw class values, mapped to -1,+1 (binary) or 0..C-1")
    args = parser.parse_args()

    rows = read_rows(args.input)
    if not rows:
        sys.exit(f"{args.input}: no data rows")

    raw_classes = sorted({r[-1] for r in rows})
    order = args.classes.split(",") if args.classes else raw_classes
    if sorted(order) != raw_classes:
        sys.exit(f"class list {order} does not match data classes {raw_classes}")
    if len(order) == 2:
        mapping = {order[0]: "-1", order[1]: "+1"}
    else:
        mapping = {c: str(i) for i, c in enumerate(order)}

    with open(args.output, "w", encoding="utf-8") as out:
        for r in rows:
            feats = []
            for idx, tok in enumerate(r[:-1], start=1):
                value = float(tok)
                if value != 0.0:
                    feats.append(f"{idx}:{value:.10g}")
            out.write(" ".join([mapping[r[-1]]] + feats) + "\n")


if __name__ == "__main__":
    main()
