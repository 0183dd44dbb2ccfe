"""Write the curve and surface data behind Figures 1-4 as CSV files.

    python scripts/reproduce_figures.py --out figures/ --ns 1.0
"""
import argparse
from dataclasses import dataclass
from pathlib import Path

from cq_exponent.cli import parse_config, run


@dataclass
class FigureRun:
    name: str
    argv: list


def figure_runs(ns: float, points: int) -> list:
    n = ["--ns", str(ns), "--points", str(points)]
    return [
        FigureRun("fig1a_binary", ["exponent", "--signal", "binary", *n]),
        FigureRun("fig1b_psk3", ["exponent", "--signal", "psk3", *n]),
        FigureRun("fig1c_orth4", ["exponent", "--signal", "orth4", *n]),
        FigureRun("fig2_ternary_entropy", ["entropy-surface", "--signal", "ternary",
                                           "--ns", str(ns), "--grid", "101"]),
        FigureRun("fig3_ternary", ["exponent", "--signal", "ternary", *n]),
        FigureRun("fig4_compare", ["compare", "--signal", "binary", *n]),
        FigureRun("cutoff_binary", ["cutoff", "--signal", "binary", "--ns", str(ns)]),
        FigureRun("cutoff_psk3", ["cutoff", "--signal", "psk3", "--ns", str(ns)]),
        FigureRun("cutoff_orth4", ["cutoff", "--signal", "orth4", "--ns", str(ns)]),
        FigureRun("cutoff_ternary", ["cutoff", "--signal", "ternary", "--ns", str(ns)]),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures")
    ap.add_argument("--ns", type=float, default=1.0)
    ap.add_argument("--points", type=int, default=41)
    ap.add_argument("--threads", type=int, default=4)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for fig in figure_runs(args.ns, args.points):
        text = run(parse_config(fig.argv + ["--threads", str(args.threads)]))
        (out / f"{fig.name}.csv").write_text(text, encoding="utf-8")
        print(f"wrote {out / fig.name}.csv ({text.count(chr(10)) - 1} rows)")


if __name__ == "__main__":
    main()
