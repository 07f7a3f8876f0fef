"""trigsums command line: verify, list, characters, classnum."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .characters import class_number, enumerate_characters, kronecker_character, kronecker_real_odd_exists
from .identities import catalog
from .sweep import ConfigError, SweepConfig, default_jobs, emit_report, parse_k_selector, run_sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_CONFIG_KEYS = {
    "identity", "k", "backend", "precision", "tolerance", "jobs", "report", "probe_imprimitive",
}


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trigsums", description="Verify finite trigonometric and character sums.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check identities over a range of k")
    v.add_argument("--identity", help="comma-separated ids or 'all' (default all)")
    v.add_argument("--k", help="k values: 7 | 7,11 | 3..21 | 3..21:2 (default 1..101)")
    v.add_argument("--backend", choices=("float", "exact"))
    v.add_argument("--precision", type=int, help="float precision in bits (default 256)")
    v.add_argument("--tolerance", help="absolute tolerance, decimal (default 2^(-precision/2))")
    v.add_argument("--jobs", type=int, help="worker processes (default: CPU count)")
    v.add_argument("--report", help="JSON-lines output path (default stdout)")
    v.add_argument("--probe-imprimitive", action="store_true", default=None,
                   help="add report-only rows for imprimitive real odd characters")
    v.add_argument("--config", help="JSON file with defaults for the flags above")

    sub.add_parser("list", help="print the identity catalog")

    c = sub.add_parser("characters", help="classify all Dirichlet characters mod k")
    c.add_argument("--k", type=int, required=True)

    h = sub.add_parser("classnum", help="class number h(-k) by both character sums")
    h.add_argument("--k", type=int, required=True)
    return p


def _load_config(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def _sweep_config(args: argparse.Namespace) -> SweepConfig:
    base = _load_config(args.config) if args.config else {}
    flags = {
        "identity": args.identity, "k": args.k, "backend": args.backend, "precision": args.precision,
        "tolerance": args.tolerance, "jobs": args.jobs, "report": args.report,
        "probe_imprimitive": args.probe_imprimitive,
    }
    merged = {**base, **{key: val for key, val in flags.items() if val is not None}}
    k = merged.get("k", "1..101")
    k_values = tuple(k) if isinstance(k, list) else parse_k_selector(str(k))
    return SweepConfig(
        identities=merged.get("identity", "all"),
        k_values=k_values,
        backend=merged.get("backend", "float"),
        precision_bits=int(merged.get("precision", 256)),
        tolerance=None if merged.get("tolerance") is None else str(merged["tolerance"]),
        jobs=int(merged.get("jobs", default_jobs())),
        report_path=merged.get("report"),
        probe_imprimitive=bool(merged.get("probe_imprimitive", False)),
    )


def _cmd_verify(args) -> int:
    cfg = _sweep_config(args)
    if cfg.report_path not in (None, "-"):
        # fail early on an unwritable path, before the sweep runs
        open(cfg.report_path, "a", encoding="utf-8").close()
    report = run_sweep(cfg)
    emit_report(report, cfg.report_path)
    s = report.summary
    print(
        f"pass={s['pass']} fail={s['fail']} not_applicable={s['not_applicable']} "
        f"probe_fail={s['probe_fail']} max_residual={s['max_residual']}",
        file=sys.stderr,
    )
    return report.exit_code


def _cmd_list(args) -> int:
    for rec in catalog():
        print(f"{rec.id:22s} ({', '.join(rec.params)})  {rec.anchor}")
        print(f"{'':22s} requires: {rec.hypothesis}")
    return EXIT_OK


def _cmd_characters(args) -> int:
    k = args.k
    if k < 1:
        raise ConfigError("k must be positive")
    kron = kronecker_character(k) if kronecker_real_odd_exists(k) else None
    print(f"{'idx':>4} {'order':>5} {'real':>5} {'parity':>6} {'principal':>9} {'conductor':>9} {'primitive':>9}")
    for i, chi in enumerate(enumerate_characters(k)):
        parity = "odd" if chi.is_odd else "even" if chi.is_even else "-"
        mark = "  kronecker" if chi == kron else ""
        print(f"{i:>4} {chi.order:>5} {str(chi.is_real):>5} {parity:>6} {str(chi.is_principal):>9} "
              f"{chi.conductor:>9} {str(chi.is_primitive):>9}{mark}")
    return EXIT_OK


def _cmd_classnum(args) -> int:
    try:
        r = class_number(args.k)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    print(f"h(-{r.k}) = {r.h}")
    print(f"  -(1/k) sum j chi(j)                    = {r.via_weighted_sum}")
    print(f"  sum_(j<=(k-1)/2) chi(j) / (2 - chi(2)) = {r.via_half_sum}")
    return EXIT_OK


_COMMANDS = {"verify": _cmd_verify, "list": _cmd_list, "characters": _cmd_characters, "classnum": _cmd_classnum}


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"trigsums: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(cli_main())
