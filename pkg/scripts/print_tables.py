#!/usr/bin/env python3
"""Render all sporadic-solution tables after re-deriving them from scratch."""

import sys

from metric_affine.classify import render_table_lines, reproduce_table
from metric_affine.fields import field_make


def main():
    bad = 0
    for dim, fname in ((0, "GF(2)"), (0, "GF(4)"), (1, "GF(2)"),
                       (1, "GF(3)"), (2, "GF(2)")):
        rep = reproduce_table(dim, field_make(fname))
        for line in render_table_lines(rep):
            print(line)
        if not rep.ok:
            bad += 1
            for line in rep.mismatch:
                print("MISMATCH: " + line)
        print()
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
