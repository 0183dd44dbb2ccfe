"""Command-line front end: ``cq-exponent <command> [options]``.

Every command writes a CSV table (header row, data rows, optional trailing
``# key=value`` comment lines) to stdout or ``--output``. Rates, exponents
and entropies are in nats unless ``--bits`` is given; the rate-grid options
are always read in nats.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import gallager as gl
from . import quantum_exponent as qe
from .constellation import Kind, make_signal_set
from .csvio import Table, format_number
from .errors import CQError
from .search import simplex_grid
from .spectra import entropy_of

COMMANDS = ("exponent", "cutoff", "entropy-surface", "gallager", "compare")
SIGNALS = ("binary", "psk3", "orth4", "ternary")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    signal: str = "binary"
    ns: float = 1.0
    r_min: float = 0.0
    r_max: float | None = None
    points: int = 50
    grid: int = 101
    precision: int = 9
    output: str | None = None
    threads: int = 1
    bits: bool = False

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.signal not in SIGNALS:
            raise ConfigError(f"signal must be one of {', '.join(SIGNALS)}")
        if not (self.ns >= 0 and math.isfinite(self.ns)):
            raise ConfigError("ns must be >= 0")
        if self.points < 2:
            raise ConfigError("points must be >= 2")
        if self.grid < 2:
            raise ConfigError("grid must be >= 2")
        if not 1 <= self.precision <= 17:
            raise ConfigError("precision must be in [1, 17]")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if self.r_min < 0:
            raise ConfigError("r-min must be >= 0")
        if self.r_max is not None and not self.r_min < self.r_max:
            raise ConfigError("r-min must be < r-max")
        if self.command == "entropy-surface" and self.signal != "ternary":
            raise ConfigError("entropy-surface requires --signal ternary")
        if self.command in ("gallager", "compare"):
            if self.signal != "binary":
                raise ConfigError(f"{self.command} requires --signal binary")
            if self.ns == 0:
                raise ConfigError(f"{self.command} requires ns > 0 (identical states at ns=0)")

    @property
    def scale(self) -> float:
        return 1.0 / math.log(2.0) if self.bits else 1.0

    def rates(self, default_max: float) -> np.ndarray:
        r_max = default_max if self.r_max is None else self.r_max
        if not self.r_min < r_max:
            raise ConfigError("empty rate grid: r-min must be < r-max")
        return np.linspace(self.r_min, r_max, self.points)


# commands -----------------------------------------------------------------

def cmd_exponent(cfg: RunConfig) -> Table:
    s_set = make_signal_set(cfg.signal, cfg.ns)
    m = s_set.size
    rates = cfg.rates(math.log(m))
    pts = qe.parallel_map(lambda r: qe.reliability_at_rate(s_set, float(r)), rates, cfg.threads)
    header = ["R", "E_Qr", "s_opt"] + [f"xi{i + 1}" for i in range(m)] + ["regime"]
    rows = [[p.rate * cfg.scale, p.value * cfg.scale, p.s_opt, *p.xi_opt.xi, p.regime]
            for p in pts]
    return Table(header, rows, precision=cfg.precision)


def cmd_cutoff(cfg: RunConfig) -> Table:
    s_set = make_signal_set(cfg.signal, cfg.ns)
    r0, xi = qe.cutoff_rate(s_set)
    header = ["signal", "ns", "R0"] + [f"xi{i + 1}" for i in range(s_set.size)]
    return Table(header, [[cfg.signal, cfg.ns, r0 * cfg.scale, *xi.xi]], precision=cfg.precision)


def cmd_entropy_surface(cfg: RunConfig) -> Table:
    s_set = make_signal_set(Kind.TERNARY, cfg.ns)
    grid = simplex_grid(3, cfg.grid - 1)
    # lexicographic ascending in (xi1, xi2)
    grid = grid[np.lexsort((grid[:, 1], grid[:, 0]))]
    h = entropy_of(qe.prior_spectra(s_set, grid))
    rows = [[x[0], x[1], v * cfg.scale] for x, v in zip(grid, h)]
    k = int(np.argmax(h))
    p = cfg.precision
    best = grid[k]
    comment = "max " + ",".join(
        [f"xi{i + 1}={format_number(best[i], p)}" for i in range(3)]
        + [f"H={format_number(h[k] * cfg.scale, p)}"])
    return Table(["xi1", "xi2", "H"], rows, [comment], precision=p)


def _gallager_points(cfg: RunConfig, rates):
    s_set = make_signal_set(Kind.BINARY, cfg.ns)
    fam = gl.helstrom_family(gl.binary_kappa(s_set))
    return s_set, qe.parallel_map(lambda r: gl.gallager_exponent(float(r), fam), rates,
                                  cfg.threads)


def cmd_gallager(cfg: RunConfig) -> Table:
    rates = cfg.rates(math.log(2.0))
    _, pts = _gallager_points(cfg, rates)
    rows = [[p.rate * cfg.scale, p.value * cfg.scale, p.rho_opt, p.xi_opt.xi[0]] for p in pts]
    return Table(["R", "E_gallager", "rho_opt", "xi1_opt"], rows, precision=cfg.precision)


def cmd_compare(cfg: RunConfig) -> Table:
    rates = cfg.rates(math.log(2.0))
    s_set, gpts = _gallager_points(cfg, rates)
    qpts = qe.parallel_map(lambda r: qe.reliability_at_rate(s_set, float(r)), rates, cfg.threads)
    c1, _ = gl.capacity_c1(s_set)
    h, _ = qe.max_entropy(s_set)
    p, sc = cfg.precision, cfg.scale
    rows = [[q.rate * sc, q.value * sc, g.value * sc] for q, g in zip(qpts, gpts)]
    return Table(["R", "E_quantum", "E_gallager"], rows,
                 [f"C1={format_number(c1 * sc, p)}", f"H={format_number(h * sc, p)}"],
                 precision=p)


HANDLERS = {
    "exponent": cmd_exponent,
    "cutoff": cmd_cutoff,
    "entropy-surface": cmd_entropy_surface,
    "gallager": cmd_gallager,
    "compare": cmd_compare,
}


# argument handling --------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


_CASTS = {"signal": str, "ns": float, "r_min": float, "r_max": float, "points": int,
          "grid": int, "precision": int, "output": str, "threads": int}


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` file; keys match the long option names."""
    out = {}
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e.strerror}") from None
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key=value")
        key, val = (x.strip() for x in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "bits":
            out[key] = val.lower() in ("1", "true", "yes")
            continue
        if key not in _CASTS:
            raise ConfigError(f"{path}:{n}: unknown key {key!r}")
        try:
            out[key] = _CASTS[key](val)
        except ValueError:
            raise ConfigError(f"{path}:{n}: bad value for {key}: {val!r}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cq-exponent",
                     description="Quantum and Gallager reliability functions as CSV curves.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--signal", choices=SIGNALS)
        p.add_argument("--ns", type=float)
        p.add_argument("--r-min", type=float)
        p.add_argument("--r-max", type=float)
        p.add_argument("--points", type=int)
        p.add_argument("--grid", type=int)
        p.add_argument("--precision", type=int)
        p.add_argument("--output")
        p.add_argument("--threads", type=int, help="worker threads for grid points")
        p.add_argument("--bits", action="store_true", default=None,
                       help="report information quantities in bits")
        p.add_argument("--config", help="flat key=value file; flags override it")
    return parser


def parse_config(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    values = read_config_file(args.config) if args.config else {}
    for key, val in vars(args).items():
        if key not in ("command", "config") and val is not None:
            values[key] = val
    cfg = RunConfig(command=args.command, **values)
    cfg.validate()
    return cfg


def run(cfg: RunConfig) -> str:
    return HANDLERS[cfg.command](cfg).to_text()


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        text = run(cfg)
    except (ConfigError, CQError) as e:
        print(f"cq-exponent: error: {e}", file=sys.stderr)
        return 2
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
