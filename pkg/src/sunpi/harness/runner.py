"""Run verification targets, in parallel if requested, and write JSON reports."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple

import mpmath

from ..precision import MIN_DIGITS, Verdict, ctx_new
from .pipeline import VerificationReport, default_tolerance, verify_constants, verify_entry, verify_headline
from .registry import load_registry


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class VerifyConfig:
    targets: Tuple[str, ...] = ()
    digits: int = 120
    tolerance: Optional[str] = None
    report_dir: Optional[str] = None
    fmt: str = "text"
    jobs: int = 1

    def __post_init__(self):
        if self.digits < MIN_DIGITS:
            raise ConfigError(f"--digits must be at least {MIN_DIGITS}")
        if self.jobs < 1:
            raise ConfigError("--jobs must be positive")
        if self.fmt not in ("json", "text"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        known = set(all_targets())
        for t in self.targets:
            if t not in known:
                raise ConfigError(f"unknown target {t!r}")
        tol = self.tolerance_value()
        floor = ctx_new(self.digits).tol * 10**5
        if not tol > 0:
            raise ConfigError("tolerance must be positive")
        if tol < floor * mpmath.mpf("0.999999"):
            raise ConfigError(
                f"tolerance {self.tolerance} is too tight for {self.digits} digits "
                f"(smallest supported: {mpmath.nstr(floor, 3)})"
            )

    def tolerance_text(self) -> str:
        return default_tolerance(self.digits) if self.tolerance is None else str(self.tolerance)

    def tolerance_value(self):
        try:
            return ctx_new(self.digits).mp.mpf(self.tolerance_text())
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"cannot parse tolerance {self.tolerance!r}") from exc


def all_targets() -> List[str]:
    return ["headline", "constants"] + list(load_registry())


def run_target(target: str, digits: int, tolerance: str) -> VerificationReport:
    ctx = ctx_new(digits)
    tol = mpmath.mpf(tolerance)
    if target == "headline":
        return verify_headline(ctx, tol)
    if target == "constants":
        return verify_constants(ctx, tol)
    return verify_entry(load_registry()[target], ctx, tol)


def _run_json(args) -> dict:
    return run_target(*args).to_json()


def _file_name(target: str) -> str:
    return target if target in ("headline", "constants") else f"entry-{target}"


@dataclass
class RunSummary:
    reports: List[dict] = field(default_factory=list)

    @property
    def all_verified(self) -> bool:
        return bool(self.reports) and all(r["verdict"] == Verdict.VERIFIED.value for r in self.reports)

    @property
    def exit_code(self) -> int:
        return 0 if self.all_verified else 1


def run_all(config: VerifyConfig) -> RunSummary:
    targets = list(config.targets) or all_targets()
    tol = config.tolerance_text()
    jobs = [(t, config.digits, tol) for t in targets]
    if config.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(_run_json, jobs))
    else:
        reports = [_run_json(j) for j in jobs]
    if config.report_dir:
        out = Path(config.report_dir)
        out.mkdir(parents=True, exist_ok=True)
        for rep in reports:
            path = out / f"{_file_name(rep['target'])}.json"
            path.write_text(json.dumps(rep, indent=2, sort_keys=True) + "\n")
    return RunSummary(reports)


def format_text(summary: RunSummary) -> str:
    lines = []
    for rep in summary.reports:
        lines.append(f"[{rep['verdict'].upper():>12}] {rep['target']}  ({rep['wall_ms']} ms, {rep['precision_digits']} digits)")
        for c in rep["checks"]:
            tag = "xfail-ok" if c.get("expected_failure") and c["verdict"] == "verified" else c["verdict"]
            lines.append(f"    {tag:<12} {c['name']}: residual {c['residual']} (tolerance {c['tolerance']})")
            if c.get("detail"):
                lines.append(f"                 {c['detail']}")
    n_ok = sum(r["verdict"] == "verified" for r in summary.reports)
    lines.append(f"{n_ok}/{len(summary.reports)} targets verified")
    return os.linesep.join(lines)
