"""Recompute a handful of the published tables and print their rows.

Pass table names on the command line to pick others; the heavy ones (e8,
tab:hoggar) take a minute or two.
"""
import sys
import time

from minor_designs.reproduce import run_table

DEFAULT = ["tab:doubly", "signedcube", "thm:hmpbd", "bh9", "tab:my_label"]


def main(tags):
    for tag in tags:
        start = time.perf_counter()
        rows = run_table(tag)
        took = time.perf_counter() - start
        counts = {}
        for r in rows:
            counts[r.status] = counts.get(r.status, 0) + 1
        print(f"== {tag}  ({took:.1f}s)  {counts}")
        for r in rows:
            print("  ", r.line())


if __name__ == "__main__":
    main(sys.argv[1:] or DEFAULT)
