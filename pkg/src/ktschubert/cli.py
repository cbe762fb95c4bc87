"""Command-line front end.

    ktschubert table  --type A --rank 2 --claims grra53
    ktschubert verify --type G --rank 2 --claims grra53,grku52,dualizing
    ktschubert cache  --type B --rank 2 --cache-dir .cache

Exit codes: 0 pass, 1 usage/config error, 2 positivity violation, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .cache import CACHE_ENV, cache_path, default_cache_dir, dumps_tables, load_engine
from .kring import Expansion, FlagK
from .laurent import LaurentPoly, NotInYRing
from .positivity import (
    CLAIMS,
    PositivityReport,
    SubtorusBasis,
    inject_term,
    to_y,
    verify_dualizing,
    verify_grku_prime,
    verify_grra,
    verify_richardson_family,
)
from .rootsystem import ConfigurationError, build_root_system
from .weyl import DEFAULT_MAX_ORDER, ResourceCapError, WeylGroup

log = logging.getLogger("ktschubert")

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_RESOURCE = 0, 1, 2, 3

DEFAULT_SUITE = ("grra53", "grku52", "dualizing")

# table claim -> (basis, sign convention, y-variables)
TABLE_BASES = {
    "grra53": ("O_upper", True, "minus"),
    "grku52": ("xi_upper", True, "minus"),
    "dualizing": ("dualizing", False, "plus"),
}
BASIS_CLAIM = {basis: claim for claim, (basis, _, _) in TABLE_BASES.items()}


@dataclass
class JobConfig:
    cartan_type: str
    rank: int
    parabolic: tuple[int, ...] = ()  # zero-based
    claims: tuple[str, ...] = DEFAULT_SUITE
    basis: str | None = None
    subtorus: SubtorusBasis | None = None
    output_format: str = "json"
    cache_dir: Path | None = None
    degree_cap: int | None = None
    jobs: int = 1
    max_order: int = DEFAULT_MAX_ORDER
    fault_inject: bool = False
    output: Path | None = None

    def validate(self, command: str) -> None:
        try:
            build_root_system(self.cartan_type, self.rank)
        except ConfigurationError as exc:
            raise ConfigurationError(f"{exc} (try e.g. --type A --rank 2)") from None
        if not self.claims:
            raise ConfigurationError(f"empty claim set; choose from {', '.join(CLAIMS)}")
        unknown = [c for c in self.claims if c not in CLAIMS]
        if unknown:
            raise ConfigurationError(f"unknown claims {unknown}; choose from {', '.join(CLAIMS)}")
        if any(not 0 <= i < self.rank for i in self.parabolic):
            raise ConfigurationError(f"--parabolic indices must lie in 1..{self.rank}")
        if self.parabolic and any(c not in ("grra53", "grku52") for c in self.claims):
            raise ConfigurationError("--parabolic is supported only for grra53 and grku52")
        if command == "table":
            if self.basis is None and not any(c in TABLE_BASES for c in self.claims):
                raise ConfigurationError(f"table needs one of the claims {', '.join(TABLE_BASES)}")
            if self.basis is not None and self.basis not in BASIS_CLAIM:
                raise ConfigurationError(f"--basis must be one of {', '.join(BASIS_CLAIM)}")
        if self.output_format not in ("json", "csv"):
            raise ConfigurationError("--format must be json or csv")
        if self.subtorus is not None and self.subtorus.ncols != self.rank:
            raise ConfigurationError(f"--subtorus matrix must have {self.rank} columns")
        if self.degree_cap is not None and self.degree_cap < 0:
            raise ConfigurationError("--degree-cap must be nonnegative")
        if self.jobs < 1:
            raise ConfigurationError("--jobs must be at least 1")


def read_subtorus(path: str) -> SubtorusBasis:
    text = Path(path).read_text()
    try:
        rows = json.loads(text)
    except json.JSONDecodeError:
        rows = [[int(x) for x in line.replace(",", " ").split()] for line in text.splitlines() if line.strip()]
    if not rows or len({len(r) for r in rows}) != 1:
        raise ConfigurationError(f"{path}: expected a rectangular integer matrix")
    return SubtorusBasis(tuple(tuple(int(x) for x in r) for r in rows))


# engine construction, shared with worker processes

_worker_engine: FlagK | None = None


def build_engine(cfg: JobConfig) -> FlagK:
    W = WeylGroup(build_root_system(cfg.cartan_type, cfg.rank), max_order=cfg.max_order)
    return load_engine(W, cfg.cache_dir)


def _init_worker(cfg: JobConfig) -> None:
    global _worker_engine
    _worker_engine = build_engine(cfg)


def _engine(cfg: JobConfig) -> FlagK:
    global _worker_engine
    if _worker_engine is None or _worker_engine.rs.name != f"{cfg.cartan_type.upper()}{cfg.rank}":
        _worker_engine = build_engine(cfg)
    return _worker_engine


def _fault_hook(K: FlagK):
    """Adds e^{alpha_1} to the top coefficient of the first instance checked."""
    state = {"done": False}

    def hook(key, exp: Expansion) -> Expansion:
        if state["done"]:
            return exp
        state["done"] = True
        target = max(exp.coefficients, key=lambda w: w.index) if exp.coefficients else K.W.longest
        return inject_term(exp, target, K.char(K.rs.simple_roots[0]))

    return hook


# table


def _table_chunk(cfg: JobConfig, claim: str, basis: str, u_indices: list[int]) -> list[dict]:
    K = _engine(cfg)
    _, signed, variables = TABLE_BASES[claim]
    reps = K.W.minimal_coset_reps(cfg.parabolic)
    out = []
    for ui in u_indices:
        u = K.W[ui]
        for v in reps:
            if cfg.parabolic:
                exp = K.parabolic_structure_constants(u, v, cfg.parabolic, basis)
            else:
                exp = K.structure_constants(u, v, basis)
            constants = {}
            base = u.length + v.length + len(K.rs.positive_roots)
            for w, c in exp.items():
                sign = -1 if signed and (w.length - u.length - v.length) % 2 else 1
                entry = {"laurent": c.to_json(), "grading_sign": sign}
                try:
                    entry["y_poly"] = to_y(K, c, cfg.degree_cap, variables, None, base).scale(sign).to_json()
                except (NotInYRing, ValueError) as exc:
                    entry["y_poly"] = None
                    entry["error"] = str(exc)
                constants[w.label] = entry
            out.append({"u_word": u.label, "v_word": v.label, "constants": constants})
    return out


def _map_chunks(cfg: JobConfig, fn, args_list: list[tuple]) -> list:
    if cfg.jobs == 1 or len(args_list) <= 1:
        return [fn(cfg, *args) for args in args_list]
    with ProcessPoolExecutor(max_workers=cfg.jobs, initializer=_init_worker, initargs=(cfg,)) as pool:
        futures = [pool.submit(fn, cfg, *args) for args in args_list]
        return [f.result() for f in futures]


def _chunks(indices: list[int], jobs: int) -> list[list[int]]:
    k = max(1, jobs)
    return [indices[i::k] for i in range(k) if indices[i::k]]


def make_tables(cfg: JobConfig) -> dict:
    K = _engine(cfg)
    reps = [w.index for w in K.W.minimal_coset_reps(cfg.parabolic)]
    if cfg.basis is not None:
        wanted = [(BASIS_CLAIM[cfg.basis], cfg.basis)]
    else:
        wanted = [(c, TABLE_BASES[c][0]) for c in cfg.claims if c in TABLE_BASES]
    tables = []
    for claim, basis in wanted:
        parts = _map_chunks(cfg, _table_chunk, [(claim, basis, ch) for ch in _chunks(reps, cfg.jobs)])
        entries = [e for part in parts for e in part]
        order = {K.W[i].label: pos for pos, i in enumerate(reps)}
        entries.sort(key=lambda e: (order[e["u_word"]], order[e["v_word"]]))
        tables.append({"claim": claim, "basis": basis, "entries": entries})
    return {
        "group": K.rs.name,
        "parabolic": [i + 1 for i in cfg.parabolic],
        "schema": 1,
        "tables": tables,
    }


def tables_to_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["group", "claim", "basis", "u", "v", "w", "grading_sign", "laurent", "y_poly"])
    for t in doc["tables"]:
        for e in t["entries"]:
            for w, c in e["constants"].items():
                writer.writerow([
                    doc["group"], t["claim"], t["basis"], e["u_word"], e["v_word"], w, c["grading_sign"],
                    json.dumps(c["laurent"], separators=(",", ":")),
                    json.dumps(c["y_poly"], separators=(",", ":")),
                ])
    return buf.getvalue()


def cmd_table(cfg: JobConfig) -> int:
    doc = make_tables(cfg)
    if cfg.output_format == "json":
        text = json.dumps(doc, sort_keys=True) + "\n"
    else:
        text = tables_to_csv(doc)
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        Path(cfg.output).write_text(text)
        log.info("wrote %s", cfg.output)
    return EXIT_OK


# verify


def _verify_chunk(cfg: JobConfig, claim: str, u_indices: list[int]) -> PositivityReport:
    K = _engine(cfg)
    fault = _fault_hook(K) if cfg.fault_inject and u_indices and u_indices[0] == 0 else None
    if claim in ("grku51", "richardson"):
        pairs = [(K.W[i], w) for i in u_indices for w in K.W]
        if claim == "grku51":
            bases = [cfg.subtorus or SubtorusBasis.identity(K.n)]
        else:
            bases = [SubtorusBasis.identity(K.n), SubtorusBasis.ones_row(K.n)]
            if cfg.subtorus is not None:
                bases.append(cfg.subtorus)
        return verify_richardson_family(K, bases, pairs, cfg.degree_cap, fault, claim=claim)
    reps = K.W.minimal_coset_reps(cfg.parabolic)
    pairs = [(K.W[i], v) for i in u_indices for v in reps]
    if claim == "grra53":
        return verify_grra(K, cfg.parabolic, pairs, cfg.degree_cap, fault)
    if claim == "grku52":
        return verify_grku_prime(K, cfg.parabolic, pairs, cfg.degree_cap, fault)
    return verify_dualizing(K, pairs, cfg.degree_cap, fault)


def run_claim(cfg: JobConfig, claim: str) -> PositivityReport:
    K = _engine(cfg)
    if claim in ("grku51", "richardson"):
        indices = [w.index for w in K.W]
    else:
        indices = [w.index for w in K.W.minimal_coset_reps(cfg.parabolic)]
    parts = _map_chunks(cfg, _verify_chunk, [(claim, ch) for ch in _chunks(indices, cfg.jobs)])
    report = parts[0]
    for p in parts[1:]:
        report.merge(p)
    report.parabolic = tuple(sorted(cfg.parabolic))
    report.violations.sort(key=lambda v: v.indices)
    return report


def cmd_verify(cfg: JobConfig) -> int:
    out_dir = Path(cfg.output) if cfg.output is not None else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    status = EXIT_OK
    K = _engine(cfg)
    for claim in cfg.claims:
        report = run_claim(cfg, claim)
        suffix = "" if not cfg.parabolic else "_P" + "".join(str(i + 1) for i in cfg.parabolic)
        path = out_dir / f"report_{claim}_{K.rs.name}{suffix}.json"
        path.write_text(report.dumps() + "\n")
        print(report.summary())
        if not report.passed:
            status = EXIT_VIOLATION
    return status


def cmd_cache(cfg: JobConfig) -> int:
    if cfg.cache_dir is None:
        raise ConfigurationError(f"cache needs --cache-dir or ${CACHE_ENV}")
    K = build_engine(cfg)
    path = cache_path(cfg.cache_dir, K.W)
    assert path.read_text() == dumps_tables(K)
    print(path)
    return EXIT_OK


# argument parsing


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ktschubert", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", dest="cartan_type", required=True, help="Cartan type A-G")
    common.add_argument("--rank", type=int, required=True)
    common.add_argument("--parabolic", default="", help="comma-separated simple indices (1-based) generating W_P")
    common.add_argument("--claims", default=None, help=f"comma-separated subset of {','.join(CLAIMS)}")
    common.add_argument("--basis", default=None, help="table basis: O_upper, xi_upper or dualizing")
    common.add_argument("--subtorus", default=None, help="path to an integer matrix (rows = beta-coordinates)")
    common.add_argument("--format", dest="output_format", default="json", help="json or csv")
    common.add_argument("--cache-dir", default=None, help="overrides $KTSCHUBERT_CACHE_DIR")
    common.add_argument("--degree-cap", type=int, default=None)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER, help="cap on |W|")
    common.add_argument("--fault-inject", action="store_true", help=argparse.SUPPRESS)
    common.add_argument("--output", "-o", default=None, help="table file, or report directory for verify")
    common.add_argument("-v", "--verbose", action="store_true")
    sub.add_parser("table", parents=[common], help="write a structure-constant table")
    sub.add_parser("verify", parents=[common], help="run positivity claim suites")
    sub.add_parser("cache", parents=[common], help="build the restriction-table cache")
    return p


def config_from_args(args: argparse.Namespace) -> JobConfig:
    if args.claims is None:
        claims = ("grra53",) if args.command == "table" else DEFAULT_SUITE
    else:
        claims = tuple(c.strip() for c in args.claims.split(",") if c.strip())
    try:
        parabolic = tuple(sorted({int(x) - 1 for x in args.parabolic.split(",") if x.strip()}))
    except ValueError:
        raise ConfigurationError("--parabolic takes comma-separated integers") from None
    cache_dir = Path(args.cache_dir) if args.cache_dir else default_cache_dir()
    return JobConfig(
        cartan_type=args.cartan_type.upper(),
        rank=args.rank,
        parabolic=parabolic,
        claims=claims,
        basis=args.basis,
        subtorus=read_subtorus(args.subtorus) if args.subtorus else None,
        output_format=args.output_format,
        cache_dir=cache_dir,
        degree_cap=args.degree_cap,
        jobs=args.jobs,
        max_order=args.max_order,
        fault_inject=args.fault_inject,
        output=Path(args.output) if args.output else None,
    )


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = config_from_args(args)
        cfg.validate(args.command)
        return {"table": cmd_table, "verify": cmd_verify, "cache": cmd_cache}[args.command](cfg)
    except (ConfigurationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
