"""Command-line entry point ``verify``.

Exit codes: 0 if every check verified, 1 if any check is refuted or
inconclusive, 2 for configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .runner import ConfigError, VerifyConfig, all_targets, format_text, run_all


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="verify", description="Verify the 520/pi series and related identities.")
    which = ap.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true", help="every target")
    which.add_argument("--entry", metavar="ID", help="a single table entry, e.g. 3.24")
    which.add_argument("--headline", action="store_true", help="the 520/pi series and its reformulations")
    which.add_argument("--constants", action="store_true", help="explicit constants and their certificates")
    ap.add_argument("--digits", type=int, default=120, help="working precision in decimal digits (default 120)")
    ap.add_argument("--tolerance", default=None, help="check tolerance, e.g. 1e-40 (default 10^-(digits/4+10), at most 10^-(digits/2-5))")
    ap.add_argument("--report-dir", default=None, help="directory for one JSON report per target")
    ap.add_argument("--format", dest="fmt", choices=("json", "text"), default="text")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.all:
        targets = tuple(all_targets())
    elif args.entry:
        targets = (args.entry,)
    elif args.headline:
        targets = ("headline",)
    else:
        targets = ("constants",)
    try:
        config = VerifyConfig(targets, args.digits, args.tolerance, args.report_dir, args.fmt, args.jobs)
    except ConfigError as exc:
        print(f"verify: configuration error: {exc}", file=sys.stderr)
        return 2
    summary = run_all(config)
    if config.fmt == "json":
        print(json.dumps({"verified": summary.all_verified, "reports": summary.reports}, indent=2, sort_keys=True))
    else:
        print(format_text(summary))
    return summary.exit_code


if __name__ == "__main__":
    sys.exit(main())
