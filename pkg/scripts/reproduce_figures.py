"""Run every built-in preset and write CSV tables and SVG charts.

Produces, per preset, the full component table <label>.csv and two line
charts <label>_n1.svg, <label>_n2.svg, then prints a summary of tail
means and decision times so the left/right (plain vs phased amplitudes)
comparison can be read off directly.

Usage:
    python scripts/reproduce_figures.py --out figures
"""

import argparse
from pathlib import Path

from qduet.analysis import asymptotics, decision_time
from qduet.cli import write_csv, write_svg
from qduet.dynamics import decision_series
from qduet.model import PRESETS


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="figures", metavar="DIR",
                        help="output directory (default: figures)")
    parser.add_argument("--epsilon", type=float, default=0.01,
                        help="fluctuation threshold for decision times")
    args = parser.parse_args()

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    print(f"{'preset':<12} {'tail n1':>9} {'tail n2':>9} "
          f"{'tau1':>8} {'tau2':>8} {'files'}")
    for name, scenario in PRESETS.items():
        series = decision_series(scenario)
        write_csv(out_dir / f"{name}.csv", series)
        for j in (1, 2):
            write_svg(out_dir / f"{name}_n{j}.svg", series.times,
                      series.n[:, j - 1], title=f"{name}: n{j}(t)",
                      ylabel=f"n{j}")
        report = asymptotics(series, epsilon=args.epsilon)
        o1, o2 = decision_time(series, epsilon=args.epsilon)
        tau = lambda o: f"{o.tau:.4f}" if o.tau is not None else "none"
        print(f"{name:<12} {report.mean[0]:>9.5f} {report.mean[1]:>9.5f} "
              f"{tau(o1):>8} {tau(o2):>8} {name}.csv,_n1.svg,_n2.svg")
    print(f"\nwrote outputs to {out_dir}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
