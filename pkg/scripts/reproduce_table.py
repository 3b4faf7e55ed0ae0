#!/usr/bin/env python3
"""Print the full 14 x 14 bracket table with the method used for each entry.

Usage: reproduce_table.py [--field rational|fp:p] [--reverse]
"""

import argparse

from fk3hh.brackets import compare_table
from fk3hh.session import Config, Session


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--field", default="rational")
    ap.add_argument("--reverse", action="store_true", help="use the reversed pivot order")
    args = ap.parse_args()
    S = Session(Config(field=args.field))
    if args.reverse:
        S = S.perturbed()
    rows = compare_table(S.B)
    bad = 0
    for r in rows:
        mark = "" if r.match else "   <-- differs from stored value " + str(r.expected)
        bad += not r.match
        value = S.P.format(r.result.value)
        print(f"[X{r.i},X{r.j}] = {value:<42} ({r.result.method}){mark}")
    print(f"{len(rows) - bad}/{len(rows)} entries agree with the stored table")


if __name__ == "__main__":
    main()
