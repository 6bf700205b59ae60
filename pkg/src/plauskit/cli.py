"""Command-line entry point.

    plauskit <command> --config <path> [--out <dir>] [--seed <u64>]
             [--set section.key=value ...]

Exit status 0 on success.  Failures emit one machine-parseable JSON record
on stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import json
import sys

from .harness import COMMANDS, HarnessError, load_config, run


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plauskit", description=__doc__)
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="run config (INI)")
    parser.add_argument("--out", default=None, help="output directory override")
    parser.add_argument("--seed", type=int, default=None, help="seed override")
    parser.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY=VALUE", help="override a config key "
                        "(section.key=value); repeatable")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, overrides=args.overrides,
                             out=args.out, seed=args.seed)
        artifacts = run(args.command, config)
    except (HarnessError, ValueError, KeyError, OSError) as exc:
        record = {"status": "error", "command": args.command,
                  "error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(record), file=sys.stderr)
        return 1
    for path in artifacts:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
