"""Command-line entry point: ``amalgamkit <subcommand> ...``.

Settings resolve in this order: command-line flags, then the environment
variable ``AMALGAMKIT_CACHE`` (cache directory only), then ``amalgamkit.ini``
in the working directory, then built-in defaults.  Exit codes: 0 success,
1 failed claims, 2 configuration or input errors.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .actions import Perm, action_on_points, orbits, projective_points, schreier_sims, stabilizer
from .errors import AmalgamError, ConfigError, FetchError, ShapeMismatch
from .fields import GF2, field_of_order, format_factorization, poly_factor_gf2
from .linalg import DenseMatrix, extend_scalars, min_poly, split_homogeneous
from .mtxio import DATA_DIR, Fetcher, load_manifest, parse_meataxe
from .scenarios import SCENARIOS, ScenarioConfig, verify_all
from .words import eval_word, load_script, parse_word, run_script

CONFIG_FILE = "amalgamkit.ini"
CONFIG_SECTION = "amalgamkit"
MAX_POINTS = 300_000
EXIT_OK, EXIT_CLAIMS, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad arguments or inputs detected by the command layer."""


@dataclass(frozen=True)
class CliConfig:
    command: str
    data_dir: Path
    cache_dir: Path
    offline: bool
    output: str
    workers: int


def _read_ini(cwd: Path) -> dict[str, str]:
    path = cwd / CONFIG_FILE
    if not path.exists():
        return {}
    parser = configparser.ConfigParser()
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return dict(parser[CONFIG_SECTION]) if parser.has_section(CONFIG_SECTION) else {}


def _as_bool(text: str, key: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key} must be a boolean, not {text!r}")


def resolve_config(args: argparse.Namespace, env: dict[str, str] | None = None,
                   cwd: Path | None = None) -> CliConfig:
    env = dict(os.environ) if env is None else env
    ini = _read_ini(cwd or Path.cwd())
    cache = (args.cache_dir or env.get("AMALGAMKIT_CACHE") or ini.get("cache_dir")
             or str(Path.home() / ".cache" / "amalgamkit"))
    data = args.data_dir or ini.get("data_dir") or str(DATA_DIR)
    offline = args.offline if args.offline is not None else _as_bool(ini.get("offline", "false"), "offline")
    output = args.format or ini.get("format") or "table"
    if output not in ("table", "json"):
        raise ConfigError(f"format must be table or json, not {output!r}")
    try:
        workers = args.workers if args.workers is not None else int(ini.get("workers", "1"))
    except ValueError:
        raise ConfigError("workers must be an integer") from None
    if workers < 1:
        raise ConfigError("workers must be at least 1")
    if not Path(data).is_dir():
        raise ConfigError(f"data directory {data} does not exist")
    return CliConfig(args.command, Path(data), Path(cache), offline, output, workers)


def _no_network(url: str) -> bytes:
    raise ConnectionError(f"offline mode forbids downloading {url}")


def _fetcher(cfg: CliConfig, use_vendored: bool = True) -> Fetcher:
    manifest = load_manifest(cfg.data_dir / "manifest.json")
    kwargs = {"transport": _no_network} if cfg.offline else {}
    return Fetcher(cfg.cache_dir, manifest.base_url,
                   vendored_dir=cfg.data_dir if use_vendored else None, **kwargs)


def _emit(cfg: CliConfig, doc: Any, lines: Sequence[str]) -> None:
    if cfg.output == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


# ---------------------------------------------------------------------------
# inputs

def _load_objects(path: str) -> list[DenseMatrix | Perm]:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    obj = parse_meataxe(p.read_text())
    return [obj.matrix()] if obj.kind == "matrix" else list(obj.perms)


def _load_one(path: str) -> DenseMatrix | Perm:
    objs = _load_objects(path)
    if len(objs) != 1:
        raise UsageError(f"{path} holds {len(objs)} objects; expected one")
    return objs[0]


def _generator_env(cfg: CliConfig, specs: Sequence[str], label: str | None) -> dict[str, Any]:
    """Generators from ``NAME=FILE`` or bare ``FILE`` (named a, b, ...) or a manifest label."""
    env: dict[str, Any] = {}
    if specs:
        for k, spec in enumerate(specs):
            name, _, path = spec.rpartition("=")
            env[name or chr(ord("a") + k)] = _load_one(path)
    else:
        label = label or "Co1-f2r24"
        fetcher = _fetcher(cfg)
        fetcher.transport = _no_network
        entry = load_manifest(cfg.data_dir / "manifest.json")[label]
        paths = fetcher.fetch(entry, offline=True)
        env = {chr(ord("a") + k): _load_one(str(p)) for k, p in enumerate(paths)}
    kinds = {type(v) for v in env.values()}
    if len(kinds) > 1:
        raise UsageError("generators mix matrices and permutations")
    shapes = {v.shape if isinstance(v, DenseMatrix) else v.degree for v in env.values()}
    if len(shapes) > 1:
        raise ShapeMismatch(f"generators have different shapes: {sorted(map(str, shapes))}")
    return env


def _summary(name: str, x: DenseMatrix | Perm) -> dict:
    if isinstance(x, Perm):
        return {"name": name, "kind": "permutation", "degree": x.degree, "order": x.order(),
                "digest": x.digest()}
    return {"name": name, "kind": "matrix", "field": x.field.order, "shape": list(x.shape),
            "order": x.order(), "digest": x.digest()}


def _summary_line(s: dict) -> str:
    shape = f"degree {s['degree']}" if s["kind"] == "permutation" else \
        f"{s['shape'][0]}x{s['shape'][1]} over GF({s['field']})"
    return f"{s['name']}: order {s['order']}, {shape}, sha256 {s['digest'][:16]}"


# ---------------------------------------------------------------------------
# subcommands

def cmd_fetch(cfg: CliConfig, args: argparse.Namespace) -> int:
    manifest = load_manifest(cfg.data_dir / "manifest.json")
    labels = args.labels + args.group or manifest.labels()
    fetcher = _fetcher(cfg, use_vendored=not args.no_vendored)
    results = []
    for label in labels:
        paths = fetcher.fetch(manifest[label], offline=cfg.offline)
        results.append({"label": label, "files": [str(p) for p in paths]})
    lines = [f"{r['label']}: {', '.join(r['files'])}" for r in results]
    _emit(cfg, {"fetched": results, "downloads": fetcher.downloads}, lines)
    return EXIT_OK


def cmd_eval(cfg: CliConfig, args: argparse.Namespace) -> int:
    env = _generator_env(cfg, args.gen, args.label)
    if args.script:
        script = load_script(args.script)
        run = run_script(script, env, orders=False)
        names = args.name or [n for n in script.names("co1-exact") if n in run.env]
        missing = [n for n in names if n not in run.env]
        if missing:
            raise UsageError(f"not evaluated by the script: {', '.join(missing)}")
        summaries = [_summary(n, run.env[n]) for n in names]
    else:
        if not args.word:
            raise UsageError("give a word or --script")
        summaries = [_summary(args.word, eval_word(parse_word(args.word), env))]
    _emit(cfg, {"elements": summaries}, [_summary_line(s) for s in summaries])
    return EXIT_OK


def cmd_order(cfg: CliConfig, args: argparse.Namespace) -> int:
    summaries = []
    for path in args.files:
        for k, x in enumerate(_load_objects(path)):
            summaries.append(_summary(f"{path}[{k}]", x))
    _emit(cfg, {"elements": summaries}, [_summary_line(s) for s in summaries])
    return EXIT_OK


def _square_matrix(path: str, power: int = 1) -> DenseMatrix:
    M = _load_one(path)
    if not isinstance(M, DenseMatrix):
        raise UsageError(f"{path} is not a matrix")
    if not M.is_square():
        raise ShapeMismatch(f"{path} is {M.nrows}x{M.ncols}, not square")
    return M ** power


def cmd_minpoly(cfg: CliConfig, args: argparse.Namespace) -> int:
    M = _square_matrix(args.file, args.power)
    mp = min_poly(M)
    doc = {"file": args.file, "power": args.power, "minpoly": str(mp)}
    lines = [f"minimal polynomial: {mp}"]
    if M.field == GF2:
        factors = poly_factor_gf2(mp)
        doc["factors"] = [[str(f), e] for f, e in factors]
        lines.append(f"factorization: {format_factorization(factors)}")
    _emit(cfg, doc, lines)
    return EXIT_OK


def cmd_split(cfg: CliConfig, args: argparse.Namespace) -> int:
    M = _square_matrix(args.file, args.power)
    comps = split_homogeneous(M)
    factors = ["x^3+x^2+1", "x^3+x+1"]
    doc = {"file": args.file, "power": args.power,
           "components": [{"factor": f, "dim": c.dim, "invariant": c.is_invariant(M)}
                          for f, c in zip(factors, comps)]}
    lines = [f"nullspace of {c['factor']}: dimension {c['dim']}, invariant {c['invariant']}"
             for c in doc["components"]]
    _emit(cfg, doc, lines)
    return EXIT_OK


def cmd_orbits(cfg: CliConfig, args: argparse.Namespace) -> int:
    gens = [_square_matrix(p) for p in args.files]
    F = gens[0].field
    if any(g.field != F for g in gens):
        raise UsageError("generators lie over different fields")
    if len({g.nrows for g in gens}) != 1:
        raise ShapeMismatch("generators have different dimensions")
    if args.extend_to:
        target = _parse_field(args.extend_to)
        if target.degree % F.degree:
            raise UsageError(f"GF({target.order}) does not contain GF({F.order})")
        if target != F:
            gens = [extend_scalars(g, target) for g in gens]
        F = target
    n = gens[0].nrows
    count = (F.order ** n - 1) // (F.order - 1)
    if count > MAX_POINTS:
        raise UsageError(f"{count} points exceed the limit of {MAX_POINTS}")
    pts = projective_points(F, n)
    perms = action_on_points(gens, pts)
    chain = schreier_sims(perms, len(pts))
    part = orbits(perms, len(pts))
    rows = []
    for rep, size in zip(part.representatives, part.sizes):
        rows.append({"representative": rep, "size": size, "stabilizer": stabilizer(chain, rep)[1]})
    rows.sort(key=lambda r: (r["size"], r["representative"]))
    doc = {"field": F.order, "dimension": n, "points": len(pts), "group_order": chain.order(),
           "orbits": rows}
    lines = [f"{len(pts)} points of PG({n - 1},{F.order}); group order {chain.order()}; {len(rows)} orbits"]
    if len(rows) <= 50:
        lines += [f"  orbit of point {r['representative']}: size {r['size']}, stabilizer order {r['stabilizer']}"
                  for r in rows]
    else:
        sizes: dict[int, int] = {}
        for r in rows:
            sizes[r["size"]] = sizes.get(r["size"], 0) + 1
        lines += [f"  {k} orbits of size {s}" for s, k in sorted(sizes.items())]
    _emit(cfg, doc, lines)
    return EXIT_OK


def _parse_field(text: str):
    t = text.upper().removeprefix("GF").strip("()")
    try:
        return field_of_order(int(t))
    except (ValueError, AmalgamError):
        raise UsageError(f"unsupported field {text!r}") from None


def cmd_scenario(cfg: CliConfig, args: argparse.Namespace) -> int:
    ids = tuple(SCENARIOS) if args.all or not args.ids else tuple(args.ids)
    scfg = ScenarioConfig(data_dir=str(cfg.data_dir), cache_dir=str(cfg.cache_dir), offline=True,
                          scenarios=ids, workers=cfg.workers).validate()
    report = verify_all(scfg)
    as_json = args.json or cfg.output == "json"
    text = report.to_json(timing=not args.no_timing) if as_json else report.table()
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK if report.ok else EXIT_CLAIMS


COMMANDS = {"fetch": cmd_fetch, "eval": cmd_eval, "order": cmd_order, "minpoly": cmd_minpoly,
            "split": cmd_split, "orbits": cmd_orbits, "scenario": cmd_scenario}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data-dir", help="directory with manifest, claims and vendored files")
    common.add_argument("--cache-dir", help="download cache (default $AMALGAMKIT_CACHE or ~/.cache/amalgamkit)")
    common.add_argument("--offline", action="store_const", const=True, default=None,
                        help="never touch the network")
    common.add_argument("--format", choices=("table", "json"), help="output format")
    common.add_argument("--workers", type=int, help="parallel scenario workers")

    parser = argparse.ArgumentParser(prog="amalgamkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fetch", parents=[common], help="retrieve generator files listed in the manifest")
    p.add_argument("labels", nargs="*", help="manifest labels (default: all)")
    p.add_argument("--group", action="append", default=[], metavar="LABEL", help="manifest label (repeatable)")
    p.add_argument("--no-vendored", action="store_true", help="ignore the vendored copies")

    p = sub.add_parser("eval", parents=[common], help="evaluate a word or a script over generators")
    p.add_argument("word", nargs="?", help="word such as 'ab^2(ab)^-1'")
    p.add_argument("-g", "--gen", action="append", default=[], metavar="[NAME=]FILE",
                   help="generator file; bare files are named a, b, ... in order")
    p.add_argument("--label", help="manifest label supplying the generators (default Co1-f2r24)")
    p.add_argument("--script", help="element script to run instead of a single word")
    p.add_argument("--name", action="append", help="script entries to report (default: all evaluated)")

    p = sub.add_parser("order", parents=[common], help="orders of the matrices or permutations in files")
    p.add_argument("files", nargs="+")

    for name, text in (("minpoly", "minimal polynomial and its factorization"),
                       ("split", "homogeneous split of an order-7 fixed-point-free matrix")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file")
        p.add_argument("--power", type=int, default=1, help="use this power of the matrix")

    p = sub.add_parser("orbits", parents=[common], help="orbits on 1-spaces with stabilizer orders")
    p.add_argument("files", nargs="+", help="generator matrices")
    p.add_argument("--extend-to", help="extend scalars first, e.g. GF8")

    p = sub.add_parser("scenario", parents=[common], help="run claim reproductions")
    p.add_argument("ids", nargs="*", help=f"scenario ids among {', '.join(SCENARIOS)}")
    p.add_argument("--all", action="store_true", help="run every scenario")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--no-timing", action="store_true", help="drop timing fields from JSON")
    p.add_argument("--output", help="write the report to this file")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](cfg, args)
    except (UsageError, AmalgamError, OSError, ValueError) as exc:
        kind = "fetch error" if isinstance(exc, FetchError) else "error"
        print(f"amalgamkit: {kind}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
