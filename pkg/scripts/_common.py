"""Shared helpers for the figure scripts."""

import argparse
import csv
from pathlib import Path


def parser(description: str) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(description=description)
    p.add_argument("--outdir", type=Path, default=Path("figures"))
    p.add_argument("--no-plot", action="store_true", help="write CSV only")
    return p


def write_csv(path: Path, header, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([format(v, ".15g") if isinstance(v, float) else v for v in row])


def pyplot():
    """matplotlib.pyplot on a non-interactive backend, or None if unavailable."""
    try:
        import matplotlib
    except ImportError:
        return None
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt
