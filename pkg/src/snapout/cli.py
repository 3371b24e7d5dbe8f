"""Command-line front end.

Exit codes: 0 on success (or all checks passing), 1 when a verification suite
fails, 2 for malformed input or configuration.
"""

from __future__ import annotations

import argparse
import io
import os
import sys
from pathlib import Path

import numpy as np

from . import corpus, csvio
from .errors import SnapoutError
from .evolution import EvolutionKind, cosine_evolve, semigroup_evolve
from .extensions import EXTENSIONS, SubspaceKind, extend
from .function_space import FunctionPair, Grid, LineFunction, MembraneParams, SharpFunction
from .projections import project_C, project_C_skew, project_D, project_D_weks
from .scaling import (
    DEFAULT_LADDER,
    converge_cosine,
    converge_perp,
    converge_projection,
    converge_semigroup,
)
from .verification import ACCEPTANCE, SUITES, Context, run_suite


class ConfigError(Exception):
    """Bad configuration or input; reported with exit code 2."""


# ---------------------------------------------------------------------------
# argument parsing


def _csv_floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _csv_ints(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("ladder entries must be positive integers")
    return values


def _common(p: argparse.ArgumentParser):
    g = p.add_argument_group("common options")
    g.add_argument("--config", type=Path, help="flat key=value file; command-line flags win")
    g.add_argument("--alpha", type=float, default=1.0, help="left-to-right permeability")
    g.add_argument("--beta", type=float, default=1.0, help="right-to-left permeability")
    g.add_argument("--grid-L", dest="grid_L", type=float, default=30.0, help="grid half-width")
    g.add_argument("--grid-n", dest="grid_n", type=int, default=6001, help="number of nodes (odd)")
    g.add_argument("--input", type=Path, help="input CSV (line, sharp or pair layout)")
    g.add_argument("--function", help="named corpus function, e.g. gauss or step(-1,1)")
    g.add_argument("--out", type=Path, help="output file (default: stdout)")
    g.add_argument("--seed", type=int, default=20240607, help="seed for random corpora")
    g.add_argument("--tol", type=float, default=1e-9, help="admissibility tolerance at 0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="snapout",
        description="Extensions, projections and cosine families for diffusions across a membrane.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extend", help="extend a two-sided function to a pair")
    p.add_argument("--kind", choices=[k.value for k in SubspaceKind], default="snapping")
    _common(p)

    p = sub.add_parser("project", help="project a pair onto one of the subspaces")
    p.add_argument("--which", choices=["C", "D", "C_skew", "D_weks"], default="C")
    p.add_argument("--first", help="corpus name for the first component")
    p.add_argument("--second", help="corpus name for the second component")
    p.add_argument("--random", action="store_true", help="use a random pair drawn from --seed")
    _common(p)

    p = sub.add_parser("evolve", help="apply a cosine family or heat semigroup")
    p.add_argument("--kind", choices=[k.value for k in EvolutionKind], default="snapping")
    p.add_argument("--mode", choices=["cosine", "semigroup"], default="cosine")
    p.add_argument("--time", type=float, default=1.0)
    _common(p)

    p = sub.add_parser("converge", help="run a scaling ladder and write n,error rows")
    p.add_argument("--experiment", choices=["cosine", "semigroup", "perp", "projection"],
                   default="cosine")
    p.add_argument("--ladder", type=_csv_ints, default=list(DEFAULT_LADDER))
    p.add_argument("--times", type=_csv_floats, default=None,
                   help="comma-separated t values (default depends on experiment)")
    p.add_argument("--reference-n", dest="reference_n", type=int, default=256)
    _common(p)

    p = sub.add_parser("verify", help="run named verification suites")
    p.add_argument("--suite", action="append",
                   help="suite name, 'acceptance' or 'all'; may be repeated")
    p.add_argument("--list", action="store_true", help="list suites and exit")
    _common(p)

    p = sub.add_parser("corpus", help="write a corpus function as CSV")
    p.add_argument("--random", choices=["line", "sharp", "continuous", "opposite", "pair"])
    p.add_argument("--list", action="store_true", help="list named functions and exit")
    _common(p)

    p = sub.add_parser("figures", help="write curve data for extension figures (no plotting)")
    p.add_argument("--figure", choices=sorted(FIGURES), default="extension-pair")
    p.add_argument("--window", type=float, default=5.0, help="emit nodes with |x| <= window")
    _common(p)
    return parser


def read_config(path: Path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment. Keys may use - or _."""
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def parse_args(argv) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None) is None:
        return args
    cfg = read_config(args.config)
    subparser = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest: a for a in subparser._actions}
    for key in cfg:
        if key not in known or key in ("help", "config"):
            raise ConfigError(f"{args.config}: unknown key {key!r} for command {args.command!r}")
    # re-parse with config values as defaults, so explicit flags still win
    subparser.set_defaults(**{k: _convert(known[k], v) for k, v in cfg.items()})
    return parser.parse_args(argv)


def _convert(action: argparse.Action, value: str):
    if isinstance(action, (argparse._StoreTrueAction,)):
        return value.lower() in ("1", "true", "yes", "on")
    if action.type is None:
        return value
    try:
        return action.type(value)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise ConfigError(f"bad value {value!r} for {action.dest}: {exc}") from None


# ---------------------------------------------------------------------------
# helpers


def _grid(args) -> Grid:
    try:
        return Grid(args.grid_L, args.grid_n)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _params(args) -> MembraneParams:
    return MembraneParams(args.alpha, args.beta)


def _load_sharp(args, grid: Grid) -> SharpFunction:
    if args.input is not None:
        obj = csvio.load_function(args.input)
        if isinstance(obj, LineFunction):
            obj = SharpFunction.from_line(obj)
        if not isinstance(obj, SharpFunction):
            raise ConfigError(f"{args.input}: expected a line or sharp function, found a pair")
        return obj
    if args.function:
        return corpus.named_function(grid, args.function)
    raise ConfigError("give --input PATH or --function NAME")


def _emit(args, write):
    if args.out is None:
        write(sys.stdout)
        return
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with open(args.out, "w", newline="") as fh:
        write(fh)


# ---------------------------------------------------------------------------
# commands


def cmd_extend(args) -> int:
    grid = _grid(args)
    f = _load_sharp(args, grid)
    kind = SubspaceKind(args.kind)
    if kind is SubspaceKind.SnappingC:
        pair = extend(kind, _params(args), f)
    else:
        pair = EXTENSIONS[kind](_params(args), f, tol=args.tol)
    _emit(args, lambda fh: csvio.write_pair(pair, fh))
    return 0


_PROJECTORS = {"C": project_C, "D": project_D, "C_skew": project_C_skew, "D_weks": project_D_weks}


def cmd_project(args) -> int:
    grid = _grid(args)
    if args.input is not None:
        p = csvio.load_function(args.input)
        if not isinstance(p, FunctionPair):
            raise ConfigError(f"{args.input}: expected a pair CSV (x,f1,f2)")
    elif args.random:
        p = corpus.random_pair(np.random.default_rng(args.seed), grid)
    elif args.first and args.second:
        p = FunctionPair(corpus.named_function(grid, args.first).to_line(),
                         corpus.named_function(grid, args.second).to_line())
    else:
        raise ConfigError("give --input PATH, --random, or both --first and --second")
    out = _PROJECTORS[args.which](_params(args), p)
    _emit(args, lambda fh: csvio.write_pair(out, fh))
    return 0


def cmd_evolve(args) -> int:
    grid = _grid(args)
    f = _load_sharp(args, grid)
    kind = EvolutionKind(args.kind)
    params = None if kind is EvolutionKind.Free else _params(args)
    if args.mode == "cosine":
        u = cosine_evolve(kind, args.time, f, params)
    else:
        u = semigroup_evolve(kind, args.time, f, params)
    _emit(args, lambda fh: csvio.write_sharp(u, fh))
    return 0


def cmd_converge(args) -> int:
    grid = _grid(args)
    params = _params(args)
    exp = args.experiment
    if exp == "projection":
        if args.input is not None:
            p = csvio.load_function(args.input)
            if not isinstance(p, FunctionPair):
                raise ConfigError(f"{args.input}: expected a pair CSV (x,f1,f2)")
        else:
            p = corpus.random_pair(np.random.default_rng(args.seed), grid)
        report = converge_projection(params, p, args.ladder)
    else:
        f = _load_sharp(args, grid)
        if exp == "cosine":
            report = converge_cosine(params, f, args.ladder, args.times or (0.25, 0.5, 1, 2, 4))
        elif exp == "perp":
            report = converge_perp(params, f, args.ladder, args.times or (0.25, 0.5, 1, 2, 4))
        else:
            report = converge_semigroup(params, f, args.ladder, args.times or (0.25, 0.5, 1),
                                        reference_n=args.reference_n)
    _emit(args, lambda fh: csvio.write_table(["n", "error"],
                                             [(n, float(e)) for n, e in report.rows()], fh))
    note = f"verdict: {report.verdict} ({report.uniform_over})"
    if report.witness_t is not None:
        note += f", witness t = {report.witness_t:g}"
    print(note, file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    if args.list:
        for s in SUITES.values():
            tag = " [acceptance]" if s.name in ACCEPTANCE else ""
            print(f"{s.name}: {s.summary}{tag}")
        return 0
    names = []
    for name in args.suite or ["acceptance"]:
        if name == "all":
            names += list(SUITES)
        elif name == "acceptance":
            names += list(ACCEPTANCE)
        elif name in SUITES:
            names.append(name)
        else:
            raise ConfigError(f"unknown suite {name!r}; try --list")
    ctx = Context(_grid(args), args.seed)
    failed = 0
    buf = io.StringIO()
    for name in names:
        checks = run_suite(name, ctx)
        ok = all(c.passed for c in checks)
        failed += not ok
        buf.write(f"[{'PASS' if ok else 'FAIL'}] {name}\n")
        for c in checks:
            buf.write(f"    {c.line()}\n")
    _emit(args, lambda fh: fh.write(buf.getvalue()))
    return 1 if failed else 0


def cmd_corpus(args) -> int:
    if args.list:
        print("\n".join(corpus.NAMED))
        return 0
    grid = _grid(args)
    if args.random:
        rng = np.random.default_rng(args.seed)
        make = {
            "line": corpus.random_line,
            "sharp": corpus.random_sharp,
            "continuous": corpus.random_continuous,
            "opposite": corpus.random_opposite,
            "pair": corpus.random_pair,
        }[args.random]
        obj = make(rng, grid)
    elif args.function:
        obj = corpus.named_function(grid, args.function)
    else:
        raise ConfigError("give --function NAME or --random KIND")
    _emit(args, lambda fh: fh.write(csvio.dumps(obj)))
    return 0


# figure data: long-format rows curve,x,value on the window


def _fig_extension_pair(args, grid):
    f = _load_sharp_or(args, grid, "step(-0.5,1)")
    pair = extend(SubspaceKind.SnappingC, _params(args), f)
    yield from _sharp_curves("f", f)
    yield "left_extension", pair.first
    yield "right_extension", pair.second


def _fig_extensions_alpha(args, grid):
    f = _load_sharp_or(args, grid, "step(-0.5,1)")
    for a in (0.25, 0.5, 1.0, 2.0, 4.0):
        pair = extend(SubspaceKind.SnappingC, MembraneParams(a, args.beta), f)
        yield f"left_extension_alpha={a:g}", pair.first
        yield f"right_extension_alpha={a:g}", pair.second


def _fig_skew_limit(args, grid):
    f = _load_sharp_or(args, grid, "atan")
    params = _params(args)
    for n in (1, 4, 16):
        pair = extend(SubspaceKind.SnappingC, params.scaled(n), f)
        yield f"left_extension_n={n}", pair.first
    yield "left_extension_skew", extend(SubspaceKind.SkewC, params, f).first


def _fig_weks_limit(args, grid):
    f = _load_sharp_or(args, grid, "ov_gauss")
    params = _params(args)
    for n in (1, 4, 16):
        pair = extend(SubspaceKind.PerpD, params.scaled(n), f)
        yield f"left_extension_n={n}", pair.first
    yield "left_extension_weks", extend(SubspaceKind.WeksD, params, f).first


FIGURES = {
    "extension-pair": _fig_extension_pair,
    "extensions-alpha": _fig_extensions_alpha,
    "skew-limit": _fig_skew_limit,
    "weks-limit": _fig_weks_limit,
}


def _load_sharp_or(args, grid, default: str) -> SharpFunction:
    if args.input is None and not args.function:
        return corpus.named_function(grid, default)
    return _load_sharp(args, grid)


def _sharp_curves(name, f: SharpFunction):
    m = f.grid.mid
    yield f"{name}_left", (f.grid.nodes[:m + 1], f.left)
    yield f"{name}_right", (f.grid.nodes[m:], f.right)


def cmd_figures(args) -> int:
    grid = _grid(args)
    rows = []
    for name, curve in FIGURES[args.figure](args, grid):
        if isinstance(curve, LineFunction):
            x, y = curve.grid.nodes, curve.samples
        else:
            x, y = curve
        keep = np.abs(x) <= args.window + 1e-12
        rows += [(name, float(a), float(b)) for a, b in zip(x[keep], y[keep])]
    _emit(args, lambda fh: csvio.write_table(["curve", "x", "value"], rows, fh))
    return 0


COMMANDS = {
    "extend": cmd_extend,
    "project": cmd_project,
    "evolve": cmd_evolve,
    "converge": cmd_converge,
    "verify": cmd_verify,
    "corpus": cmd_corpus,
    "figures": cmd_figures,
}


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
        return COMMANDS[args.command](args)
    except BrokenPipeError:
        # downstream reader closed early (e.g. `| head`); not an error
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except (ConfigError, SnapoutError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"snapout: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
