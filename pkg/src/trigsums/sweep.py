"""Parameter sweeps over the identity catalog and JSON-lines reports."""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from . import __version__
from .identities import bindings, catalog, check, lookup, modulus_reason

__all__ = ["ConfigError", "Report", "SweepConfig", "emit_report", "parse_k_selector", "run_sweep"]

BACKENDS = ("float", "exact")


class ConfigError(ValueError):
    pass


def parse_k_selector(text: str) -> tuple[int, ...]:
    """Parse "7", "7,11,15", "3..21" or "3..21:2" (ranges inclusive); pieces combine with commas."""
    out: list[int] = []
    for piece in str(text).split(","):
        piece = piece.strip()
        if not piece:
            raise ConfigError(f"empty entry in k selector {text!r}")
        try:
            if ".." in piece:
                span, _, step = piece.partition(":")
                lo, hi = (int(s) for s in span.split("..", 1))
                step_n = int(step) if step else 1
                if lo < 1 or hi < lo or step_n < 1:
                    raise ConfigError(f"k range {piece!r} must satisfy 1 <= lo <= hi, step >= 1")
                out.extend(range(lo, hi + 1, step_n))
            else:
                n = int(piece)
                if n < 1:
                    raise ConfigError(f"k must be positive, got {n}")
                out.append(n)
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"bad k selector {piece!r}") from None
    return tuple(sorted(set(out)))


def _parse_identities(sel) -> tuple[str, ...]:
    if sel is None or sel == "all":
        return tuple(r.id for r in catalog())
    names = [s.strip() for s in sel.split(",")] if isinstance(sel, str) else list(sel)
    if not names or any(not n for n in names):
        raise ConfigError("empty identity selector")
    for n in names:
        try:
            lookup(n)
        except KeyError:
            raise ConfigError(f"unknown identity {n!r}") from None
    order = {r.id: i for i, r in enumerate(catalog())}
    return tuple(sorted(set(names), key=order.__getitem__))


@dataclass(frozen=True)
class SweepConfig:
    identities: tuple[str, ...] = field(default_factory=lambda: tuple(r.id for r in catalog()))
    k_values: tuple[int, ...] = tuple(range(1, 102))
    backend: str = "float"
    precision_bits: int = 256
    tolerance: Optional[str] = None
    jobs: int = 1
    report_path: Optional[str] = None
    probe_imprimitive: bool = False

    def __post_init__(self):
        object.__setattr__(self, "identities", _parse_identities(self.identities))
        ks = self.k_values
        if isinstance(ks, (str, int)):
            ks = parse_k_selector(str(ks))
        ks = tuple(sorted(set(int(k) for k in ks)))
        if not ks:
            raise ConfigError("k selector is empty")
        if ks[0] < 1:
            raise ConfigError("k values must be positive")
        object.__setattr__(self, "k_values", ks)
        if self.backend not in BACKENDS:
            raise ConfigError(f"backend must be one of {', '.join(BACKENDS)}")
        if self.backend == "float" and self.precision_bits < 64:
            raise ConfigError("precision must be at least 64 bits on the float backend")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        if self.tolerance is not None:
            try:
                tol = Fraction(str(self.tolerance))
            except ValueError:
                raise ConfigError(f"bad tolerance {self.tolerance!r}") from None
            if tol <= 0:
                raise ConfigError("tolerance must be positive")
            object.__setattr__(self, "tolerance", str(self.tolerance))

    def to_json(self) -> dict:
        return {
            "identities": list(self.identities),
            "k_values": list(self.k_values),
            "backend": self.backend,
            "precision_bits": self.precision_bits,
            "tolerance": self.tolerance,
            "jobs": self.jobs,
            "probe_imprimitive": self.probe_imprimitive,
        }


@dataclass
class Report:
    header: dict
    rows: list[dict]
    summary: dict

    @property
    def exit_code(self) -> int:
        return 1 if self.summary["fail"] else 0

    def lines(self) -> list[str]:
        out = [json.dumps({"type": "header", **self.header})]
        out.extend(json.dumps({"type": "row", **row}) for row in self.rows)
        out.append(json.dumps({"type": "summary", **self.summary}))
        return out


def _run_cell(identity: str, k: int, backend: str, precision: int, tolerance, probe: bool) -> list[dict]:
    rec = lookup(identity)
    found = bindings(identity, k, backend, probe)
    rows: list[dict] = []
    if not any(not is_probe for _, is_probe in found):
        reason = modulus_reason(identity, k)
        params = {"k": k} if rec.uses_modulus else {"a": k}
        rows.append({
            "identity": identity, "params": params, "backend": backend,
            "lhs": None, "lhs_display": None, "rhs": None, "rhs_display": None,
            "residual": None, "verdict": "not_applicable", "reason": reason,
            "probe": False, "tag": "primitive_only",
        })
    for params, is_probe in found:
        res = check(identity, params, backend, precision=precision, tolerance=tolerance, probe=is_probe)
        rows.append(res.to_dict())
    return rows


def _cell_args(cfg: SweepConfig) -> list[tuple]:
    return [
        (ident, k, cfg.backend, cfg.precision_bits, cfg.tolerance, cfg.probe_imprimitive)
        for ident in cfg.identities
        for k in cfg.k_values
    ]


def _star_cell(args: tuple) -> list[dict]:
    return _run_cell(*args)


def summarize(rows: Sequence[dict]) -> dict:
    counts = {"pass": 0, "fail": 0, "not_applicable": 0, "probe_pass": 0, "probe_fail": 0}
    max_res: Optional[Fraction] = None
    max_text: Optional[str] = None
    for row in rows:
        if row["probe"]:
            if row["verdict"] in ("pass", "fail"):
                counts["probe_" + row["verdict"]] += 1
            else:
                counts["not_applicable"] += 1
            continue
        counts[row["verdict"]] += 1
        if row["residual"] is not None:
            r = Fraction(row["residual"])
            if max_res is None or r > max_res:
                max_res, max_text = r, row["residual"]
    return {"rows": len(rows), **counts, "max_residual": max_text}


def run_sweep(config: SweepConfig) -> Report:
    """Check every selected identity x k x in-hypothesis binding.

    Cells (identity, k) run in worker processes when ``config.jobs > 1``;
    rows come back in catalog order, then k, then parameters, whatever the
    number of workers.
    """
    cells = _cell_args(config)
    if config.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            # map preserves submission order, so the report is deterministic
            chunks = list(pool.map(_star_cell, cells, chunksize=1))
    else:
        chunks = [_star_cell(c) for c in cells]
    rows = [row for chunk in chunks for row in chunk]
    header = {
        "tool": "trigsums",
        "version": __version__,
        "config": config.to_json(),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    return Report(header, rows, summarize(rows))


def emit_report(report: Report, path: Optional[str] = None, stream: Optional[TextIO] = None) -> None:
    """Write JSON lines: header, one line per row, summary.  ``path`` None or "-" means stdout."""
    text = "\n".join(report.lines()) + "\n"
    if path in (None, "-"):
        (stream or sys.stdout).write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def default_jobs() -> int:
    return os.cpu_count() or 1
