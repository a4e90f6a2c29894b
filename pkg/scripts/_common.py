"""Shared helpers for the experiment scripts."""

import argparse
from pathlib import Path

from coulomb_pt.io import csv_payload


def parser(description, default_name):
    ap = argparse.ArgumentParser(description=description)
    ap.add_argument("--out-dir", default="results", help="directory for the CSV output")
    ap.add_argument("--name", default=default_name)
    ap.add_argument("--epsilon", type=float, default=1e-3)
    return ap


def save(args, columns, rows, footer=None):
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{args.name}.csv"
    path.write_text(csv_payload(columns, rows, footer))
    print(f"wrote {path} ({len(rows)} rows)")
    return path
