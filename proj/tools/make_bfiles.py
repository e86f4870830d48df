#!/usr/bin/env python3
"""Regenerate data/oeis/b*.txt (A002559, A000045, A000129) offline.

Markov numbers come from a Vieta-jumping walk over unordered solutions of
x^2 + y^2 + z^2 = 3xyz, independent of the C++ enumeration.
"""
import argparse
import pathlib

HEADER = "# {seq}: first {count} terms, generated offline by tools/make_bfiles.py\n"


def markov_numbers(count):
    bound = 16
    while True:
        seen = {(1, 1, 1)}
        stack = [(1, 1, 1)]
        while stack:
            x, y, z = stack.pop()
            for t in ((3 * y * z - x, y, z), (x, 3 * x * z - y, z), (x, y, 3 * x * y - z)):
                key = tuple(sorted(t))
                if key[2] <= bound and key not in seen:
                    seen.add(key)
                    stack.append(key)
        values = sorted({v for t in seen for v in t})
        if len(values) > count:
            return values[:count]
        bound *= 16


def linear(count, coeff):
    out, prev, cur = [], 0, 1
    for _ in range(count):
        out.append(prev)
        prev, cur = cur, coeff * cur + prev
    return out


def write(path, seq, start, values):
    with open(path, "w", newline="\n") as fh:
        fh.write(HEADER.format(seq=seq, count=len(values)))
        for i, v in enumerate(values, start):
            fh.write(f"{i} {v}\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "oeis"))
    ap.add_argument("--count", type=int, default=1000)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write(out / "b002559.txt", "A002559", 1, markov_numbers(args.count))
    write(out / "b000045.txt", "A000045", 0, linear(args.count, 1))
    write(out / "b000129.txt", "A000129", 0, linear(args.count, 2))


if __name__ == "__main__":
    main()
