"""Command-line surface: triangle emission, batch verification suites, poset
export, chain counts, and the dual-triangle check.

Exit codes: 0 success, 1 verification failure, 2 parse/usage error, 3 budget
exceeded.  Flags can be defaulted through CATWB_-prefixed environment
variables; --cache-dir enables the on-disk result cache.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .cache import ResultCache
from .errors import BudgetExceeded, TypeParseError, UnsupportedType
from .exactmath import MPoly
from .ftriangle import check_recurrence, f_closed, verify_dual
from .fmverify import verify_fm, verify_fm_dn_general
from .identities import failure_dump, run_named_cases, run_random_suite
from .ncposet import export_poset_obj, m_triangle_bruteforce, m_triangle_formula
from .report import VerificationReport
from .rootdata import RootSystemType
from .wgroup import chain_counts_classical

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

FORMATS = ("json", "csv", "latex")


@dataclass
class RunConfig:
    """Validated run settings assembled from flags and CATWB_ env overrides."""

    group_cap: int = 100_000
    poset_cap: int = 2_000_000
    m_grid: tuple[int, ...] = (1, 2, 3)
    types: tuple[str, ...] = ()
    format: str = "latex"
    cache_dir: str | None = None
    seed: int = 7

    def __post_init__(self):
        if self.group_cap <= 0 or self.poset_cap <= 0:
            raise ValueError("caps must be positive")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")

    @staticmethod
    def from_args(args) -> "RunConfig":
        return RunConfig(
            group_cap=args.group_cap if args.group_cap is not None else 100_000,
            poset_cap=getattr(args, "poset_cap", None) or 2_000_000,
            m_grid=tuple(int(v) for v in args.m_grid.split(",")) if getattr(args, "m_grid", None) else (1, 2, 3),
            types=tuple(getattr(args, "types", "").split(",")) if getattr(args, "types", None) else (),
            format=getattr(args, "format", None) or "latex",
            cache_dir=args.cache_dir,
            seed=args.seed,
        )


def _env(name: str, default=None):
    return os.environ.get(f"CATWB_{name}", default)


def _add_common(p: argparse.ArgumentParser, fmt: bool = True):
    p.add_argument("--cache-dir", default=_env("CACHE_DIR"), help="directory for the result cache")
    p.add_argument("--group-cap", type=int, default=_int_env("GROUP_CAP"), help="group order cap")
    p.add_argument("--poset-cap", type=int, default=_int_env("POSET_CAP"), help="poset pair cap")
    p.add_argument("--seed", type=int, default=_int_env("SEED", 7), help="random seed")
    if fmt:
        p.add_argument(
            "--format",
            choices=("json", "csv", "latex"),
            default=_env("FORMAT", "latex"),
            help="output format",
        )


def _int_env(name: str, default=None):
    raw = _env(name)
    return int(raw) if raw is not None else default


def _parse_type(s: str) -> RootSystemType:
    return RootSystemType.parse(s)


def _emit_poly(poly_obj: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(poly_obj, sort_keys=True, separators=(",", ":"))
    poly = MPoly.from_json_obj(poly_obj)
    if fmt == "csv":
        lines = ["k,l,coeff"]
        for k, l, c in poly.iter_terms():
            lines.append(f"{k},{l},{c.format()}")
        return "\n".join(lines)
    return poly.format(latex=True)


def cmd_ftriangle(args) -> int:
    t = _parse_type(args.type)
    cache = ResultCache(args.cache_dir)
    key = f"{t}_m{args.m if args.m is not None else 'sym'}"

    def compute():
        poly = f_closed(t).poly
        if args.m is not None:
            poly = poly.eval_m(args.m)
        return poly.to_json_obj()

    obj = cache.get_or_compute("ftriangle", key, compute)
    print(_emit_poly(obj, args.format))
    return EXIT_OK


def cmd_mtriangle(args) -> int:
    t = _parse_type(args.type)
    cache = ResultCache(args.cache_dir)
    if args.mode == "brute":
        if args.m is None:
            print("error: brute mode requires --m", file=sys.stderr)
            return EXIT_USAGE
        key = f"{t}_brute_m{args.m}"

        def compute():
            return m_triangle_bruteforce(
                t, args.m, group_cap=args.group_cap, poset_cap=args.poset_cap
            ).poly.to_json_obj()

    else:
        key = f"{t}_formula_m{args.m if args.m is not None else 'sym'}"

        def compute():
            poly = m_triangle_formula(t, group_cap=args.group_cap).poly
            if args.m is not None:
                poly = poly.eval_m(args.m)
            return poly.to_json_obj()

    obj = cache.get_or_compute("mtriangle", key, compute)
    print(_emit_poly(obj, args.format))
    return EXIT_OK


def cmd_export_poset(args) -> int:
    t = _parse_type(args.type)
    cache = ResultCache(args.cache_dir)
    key = f"{t}_m{args.m}"
    obj = cache.get_or_compute(
        "poset",
        key,
        lambda: export_poset_obj(t, args.m, group_cap=args.group_cap, poset_cap=args.poset_cap),
    )
    payload = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    Path(args.out).write_text(payload)
    print(f"wrote {obj['num_elements']} elements to {args.out}")
    return EXIT_OK


def cmd_chains(args) -> int:
    t = _parse_type(args.type)
    jumps = tuple(int(x) for x in args.jumps.split(","))
    res = chain_counts_classical(
        t, args.m, jumps, group_cap=args.group_cap, poset_cap=args.poset_cap
    )
    brute = "n/a (over budget)" if res.brute is None else str(res.brute)
    status = "OK" if res.equal else "MISMATCH"
    print(f"[{status}] {t} m={args.m} jumps={args.jumps}: formula={res.formula} brute={brute}")
    return EXIT_OK if res.equal else EXIT_FAIL


def cmd_dual(args) -> int:
    t = _parse_type(args.type)
    rep = verify_dual(t, args.m)
    print(rep.summary_line())
    return EXIT_OK if rep.equal else EXIT_FAIL


# --- verification suites ----------------------------------------------------

RECURRENCE_TYPES = (
    [f"A{n}" for n in range(1, 9)]
    + [f"B{n}" for n in range(2, 9)]
    + [f"D{n}" for n in range(4, 9)]
    + [f"I2({a})" for a in range(3, 11)]
    + ["H3", "H4", "F4", "E6", "E7", "E8"]
)

FM_CLOSED_TYPES = (
    [f"A{n}" for n in range(1, 7)] + [f"B{n}" for n in range(2, 7)] + [f"D{n}" for n in range(4, 7)]
)

FM_FORMULA_TYPES = [f"I2({a})" for a in range(3, 9)] + ["H3", "H4", "F4", "E6"]

FM_BRUTE_GRID = [
    (s, m)
    for s in ("A2", "A3", "A4", "B2", "B3", "D4", "I2(3)", "I2(4)", "I2(5)", "I2(6)", "H3")
    for m in (1, 2, 3)
]

DUAL_SYMBOLIC_TYPES = [f"A{n}" for n in range(1, 7)] + [f"B{n}" for n in range(2, 6)]
DUAL_CENSUS_GRID = [
    (s, m) for s in ("D4", "I2(3)", "I2(4)", "I2(5)", "I2(6)", "H3") for m in (1, 2, 3)
]


def positive_compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in positive_compositions(n - first):
            yield (first,) + rest


def _filter_types(cfg: RunConfig, types: list[str]) -> list[str]:
    return [s for s in types if not cfg.types or s in cfg.types]


def _filter_grid(cfg: RunConfig, grid):
    return [(s, m) for s, m in grid if (not cfg.types or s in cfg.types) and m in cfg.m_grid]


def _suite_recurrence(cfg: RunConfig, out: list[VerificationReport]):
    for s in _filter_types(cfg, RECURRENCE_TYPES):
        out.append(check_recurrence(RootSystemType.parse(s)))


def _suite_fm(cfg: RunConfig, out: list[VerificationReport]):
    for s in _filter_types(cfg, FM_CLOSED_TYPES):
        out.append(verify_fm(RootSystemType.parse(s), "closed"))
    for s in _filter_types(cfg, FM_FORMULA_TYPES):
        out.append(verify_fm(RootSystemType.parse(s), "formula", group_cap=cfg.group_cap))
    for s, m in _filter_grid(cfg, FM_BRUTE_GRID):
        out.append(
            verify_fm(RootSystemType.parse(s), "brute", m, group_cap=cfg.group_cap, poset_cap=cfg.poset_cap)
        )
    # open case in family D: reported, never gated on
    for m in (2, 3):
        rep = verify_fm_dn_general(4, m, group_cap=cfg.group_cap, poset_cap=cfg.poset_cap)
        print(rep.summary_line() + f"  ({rep.note})")


def _suite_chains(cfg: RunConfig, out: list[VerificationReport]):
    grid = []
    for n in range(1, 5):
        for m in (1, 2, 3):
            grid.append((f"A{n}", m))
    for n in (2, 3):
        for m in (1, 2, 3):
            grid.append((f"B{n}", m))
    grid += [("D4", 1), ("D5", 1)]
    any_failure = False
    for s, m in _filter_grid(cfg, grid):
        t = RootSystemType.parse(s)
        bad = []
        for jumps in positive_compositions(t.rank):
            res = chain_counts_classical(
                t, m, jumps, group_cap=cfg.group_cap, poset_cap=cfg.poset_cap
            )
            if not res.equal:
                bad.append(res)
        status = "FAIL" if bad else "PASS"
        print(f"[{status}] chains {s} m={m} (all jump vectors)")
        any_failure = any_failure or bool(bad)
    if any_failure:
        out.append(_fail_marker("chains"))


def _fail_marker(name: str) -> VerificationReport:
    one = MPoly.const(1)
    rep = VerificationReport(name, "-", "brute", None, one, MPoly.zero())
    return rep


def _suite_dual(cfg: RunConfig, out: list[VerificationReport]):
    for s in _filter_types(cfg, DUAL_SYMBOLIC_TYPES):
        out.append(verify_dual(RootSystemType.parse(s)))
    for s, m in _filter_grid(cfg, DUAL_CENSUS_GRID):
        out.append(verify_dual(RootSystemType.parse(s), m))


def _suite_carlitz(cfg: RunConfig, out: list[VerificationReport]):
    res = run_random_suite(seed=cfg.seed, draws=200)
    named = run_named_cases()
    print(
        f"carlitz random: {res.passed} passed, {res.skipped} skipped; "
        f"named: {named.passed} passed, {named.skipped} skipped"
    )
    if res.failures or named.failures:
        print("carlitz failures:", failure_dump(res.failures + named.failures), file=sys.stderr)
        out.append(_fail_marker("carlitz"))


def cmd_verify(args) -> int:
    cfg = RunConfig.from_args(args)
    suites = {
        "recurrence": _suite_recurrence,
        "fm": _suite_fm,
        "chains": _suite_chains,
        "dual": _suite_dual,
        "carlitz": _suite_carlitz,
    }
    selected = list(suites) if args.suite == "all" else [args.suite]
    reports: list[VerificationReport] = []
    for name in selected:
        suites[name](cfg, reports)
    for rep in reports:
        print(rep.summary_line())
    ok = all(r.equal for r in reports)
    payload = {
        "suite": args.suite,
        "ok": ok,
        "checks": [r.to_json_obj() for r in reports],
    }
    report_dir = Path(args.cache_dir) if args.cache_dir else Path.cwd()
    report_dir.mkdir(parents=True, exist_ok=True)
    report_path = report_dir / f"verify_{args.suite}.json"
    report_path.write_text(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    print(f"report: {report_path}")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catwb",
        description="Exact workbench for cluster-complex F-triangles and m-divisible "
        "non-crossing partition M-triangles over finite reflection groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ftriangle", help="emit the F-triangle of a type")
    p.add_argument("type")
    p.add_argument("--m", type=int, default=None, help="evaluate at a concrete m")
    _add_common(p)
    p.set_defaults(func=cmd_ftriangle)

    p = sub.add_parser("mtriangle", help="emit an M-triangle (formula or brute mode)")
    p.add_argument("type")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--mode", choices=("formula", "brute"), default="formula")
    _add_common(p)
    p.set_defaults(func=cmd_mtriangle)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "--suite",
        choices=("fm", "recurrence", "chains", "dual", "carlitz", "all"),
        required=True,
    )
    p.add_argument("--types", default=None, help="comma-separated type filter, e.g. A2,B3")
    p.add_argument("--m-grid", default=None, dest="m_grid", help="comma-separated m values")
    _add_common(p, fmt=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-poset", help="write the Hasse diagram of NC^m as JSON")
    p.add_argument("type")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--out", required=True)
    _add_common(p, fmt=False)
    p.set_defaults(func=cmd_export_poset)

    p = sub.add_parser("chains", help="rank-jump chain counts: formula vs brute force")
    p.add_argument("type")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--jumps", required=True, help="comma-separated rank jumps, e.g. 1,1,2")
    _add_common(p, fmt=False)
    p.set_defaults(func=cmd_chains)

    p = sub.add_parser("dual", help="verify the dual F-triangle identity for a type")
    p.add_argument("type")
    p.add_argument("--m", type=int, default=None)
    _add_common(p, fmt=False)
    p.set_defaults(func=cmd_dual)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cache_dir", None):
        from . import wgroup

        wgroup.set_disk_cache(ResultCache(args.cache_dir))
    try:
        return args.func(args)
    except (TypeParseError, UnsupportedType) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
