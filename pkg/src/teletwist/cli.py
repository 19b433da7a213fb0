"""``teletwist`` command line.

Exit status: 0 when every check passes, 1 when some check fails, 2 for an
invalid configuration, 3 for capacity or I/O failures.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import CapacityError, ConfigError
from .scenario import CONFIG_SCHEMA, builtin_suite, emit_report, parse_run, render_report, run_configs

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_RESOURCE = 0, 1, 2, 3


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="teletwist", description="Run teleportation and measurement scenarios.")
    ap.add_argument("--version", action="version", version=f"teletwist {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the scenarios in a JSON config file")
    run.add_argument("--config", required=True, help="path to a scenario object or array ('-' for stdin)")
    run.add_argument("--out", help="report path (default: the config's output field, else stdout)")
    run.add_argument("--seed", type=int, help="master seed (default: the first scenario's seed)")
    run.add_argument("--format", choices=("csv", "json"), help="report format (default: the config's, else csv)")
    run.add_argument("--jobs", type=int, default=1, help="scenarios run in parallel (does not change results)")
    run.add_argument("--timing", action="store_true", help="add a wall_time_ms column (makes reports non-reproducible)")

    ver = sub.add_parser("verify", help="run a built-in check suite")
    ver.add_argument("--suite", choices=("identities", "povm", "all"), default="all")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--out", help="report path (default: stdout)")
    ver.add_argument("--format", choices=("csv", "json"), default="csv")
    ver.add_argument("--jobs", type=int, default=1)

    sub.add_parser("schema", help="print the JSON schema of a scenario config")
    return ap


def _summary(report) -> str:
    fails = report.failures
    checked = sum(r.get("passed") is not None for r in report.rows)
    lines = [f"{checked - len(fails)}/{checked} checks passed"]
    for r in fails[:20]:
        lines.append(f"FAIL {r['scenario_id']} {r['check']}: residual {r['residual']!r}")
    return "\n".join(lines)


def _deliver(report, fmt, out) -> None:
    if out:
        emit_report(report, fmt, out)
    else:
        sys.stdout.write(render_report(report, fmt))


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "schema":
        print(json.dumps(CONFIG_SCHEMA, indent=2))
        return EXIT_OK
    try:
        if args.command == "run":
            if args.jobs < 1:
                raise ConfigError("--jobs must be at least 1")
            try:
                text = sys.stdin.read() if args.config == "-" else open(args.config, encoding="utf-8").read()
            except OSError as e:
                print(f"teletwist: cannot read config: {e}", file=sys.stderr)
                return EXIT_RESOURCE
            configs = parse_run(text)
            fmt = args.format or configs[0].format
            out = args.out or configs[0].output
            report = run_configs(configs, seed=args.seed, jobs=args.jobs, timing=args.timing)
        else:
            configs = builtin_suite(args.suite, args.seed)
            fmt, out = args.format, args.out
            report = run_configs(configs, seed=args.seed, jobs=max(args.jobs, 1))
        _deliver(report, fmt, out)
    except ConfigError as e:
        for msg in e.errors:
            print(f"teletwist: config error: {msg}", file=sys.stderr)
        return EXIT_CONFIG
    except CapacityError as e:
        print(f"teletwist: capacity exceeded: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as e:
        print(f"teletwist: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    print(_summary(report), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
