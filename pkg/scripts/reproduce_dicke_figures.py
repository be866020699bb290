#!/usr/bin/env python3
"""Regenerate the Dicke-state rank-scan CSVs.

Writes dicke3_n9.csv (three-level states, 9 qudits) and dicke4_n8.csv
(four-level states, 8 qudits) into the chosen output directory.
"""

import argparse
import pathlib
import sys

from sloccrank.cli import main

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default=".", help="output directory")
    args = parser.parse_args()
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rc = main(["scan", "--levels", "3", "--n", "9",
               "--out", str(outdir / "dicke3_n9.csv")])
    rc |= main(["scan", "--levels", "4", "--n", "8",
                "--out", str(outdir / "dicke4_n8.csv")])
    print(f"wrote {outdir / 'dicke3_n9.csv'} and {outdir / 'dicke4_n8.csv'}")
    sys.exit(rc)
