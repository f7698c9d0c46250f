"""Write the built-in figure sweeps as CSV files.

    python scripts/reproduce_figures.py --out results/
"""

import argparse
from pathlib import Path

from satwet.scenario import FIGURES, builtin_figure, run_sweep, to_csv


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("results"))
    parser.add_argument("figures", nargs="*", default=list(FIGURES))
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.figures:
        result = run_sweep(builtin_figure(name))
        path = args.out / f"{name}.csv"
        path.write_text(to_csv(result))
        print(f"{name}: {len(result.rows)} rows x {len(result.columns)} columns -> {path}")


if __name__ == "__main__":
    main()
