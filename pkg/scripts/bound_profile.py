"""Truncated outcomes of a few compounds as the index bound grows."""
import argparse
import time

from gameseries.parsing import parse_series_spec
from gameseries.verifier import solve_profile

SPECS = [
    "plain(pm_one)",
    "plain(ones) + game(-1)",
    "plain(geom_half) + game(-1)",
    "bullet(stars)",
    "subset(geom_half) + game(-1)",
]


def main(max_bound: int) -> None:
    for spec in SPECS:
        t0 = time.perf_counter()
        prof = solve_profile(parse_series_spec(spec), max_bound)
        cells = " ".join(f"{b}:{o}" for b, o in prof)
        print(f"{spec:32s} {cells}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-bound", type=int, default=4)
    main(ap.parse_args().max_bound)
