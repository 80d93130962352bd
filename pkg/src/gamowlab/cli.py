"""Command-line front end: run scenarios, list the catalog, validate configs.

Exit codes: 0 all checks passed, 1 a check failed (manifests still written),
2 usage or configuration error (nothing executed).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import os
import sys

from ._version import __version__
from .scenarios import (
    CATALOG,
    ScenarioConfig,
    list_scenarios,
    manifest_passed,
    run_scenario,
    validate_config_file,
    with_overrides,
)

DEFAULT_OUT = "gamowlab_out"
ENV_OUT = "GAMOWLAB_OUT"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gamowlab",
        description="resonance-expansion numerical laboratory",
    )
    parser.add_argument("--version", action="version", version=f"gamowlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run built-in scenarios or a JSON config")
    run.add_argument(
        "targets",
        nargs="+",
        metavar="SCENARIO",
        help="catalog names, 'all', or paths to JSON config files",
    )
    run.add_argument("--out", default=None, help="output root directory")
    run.add_argument("--jobs", type=int, default=1, help="parallel scenarios")
    run.add_argument("--grid-points", type=int, default=None, help="override grid size")
    run.add_argument("--dt", type=float, default=None, help="override propagator step")

    sub.add_parser("list", help="print the built-in scenario catalog")

    val = sub.add_parser("validate", help="check a JSON config without running it")
    val.add_argument("config", help="path to the JSON config file")
    return parser


def _resolve_targets(targets: list[str]) -> tuple[list[ScenarioConfig], list[str]]:
    configs: list[ScenarioConfig] = []
    problems: list[str] = []
    for target in targets:
        if target == "all":
            configs.extend(CATALOG[name] for name in sorted(CATALOG))
        elif target in CATALOG:
            configs.append(CATALOG[target])
        elif target.endswith(".json"):
            if not os.path.exists(target):
                problems.append(f"{target}: no such file")
                continue
            config, diags = validate_config_file(target)
            if diags:
                problems.extend(f"{target}: {d}" for d in diags)
            else:
                configs.append(config)
        else:
            problems.append(f"{target}: not a catalog scenario (try 'gamowlab list')")
    return configs, problems


def _cmd_run(args: argparse.Namespace) -> int:
    configs, problems = _resolve_targets(args.targets)
    if problems:
        for line in problems:
            print(line, file=sys.stderr)
        return 2
    if args.jobs < 1:
        print("--jobs must be >= 1", file=sys.stderr)
        return 2
    try:
        configs = [with_overrides(c, args.grid_points, args.dt) for c in configs]
    except Exception as exc:  # invalid override values
        print(f"invalid override: {exc}", file=sys.stderr)
        return 2
    out_root = args.out or os.environ.get(ENV_OUT) or DEFAULT_OUT

    def one(config: ScenarioConfig) -> bool:
        manifest = run_scenario(config, os.path.join(out_root, config.name))
        ok = manifest_passed(manifest)
        status = "ok" if ok else "FAIL"
        checks = ", ".join(
            f"{c['name']}={'pass' if c['passed'] else 'fail'}" for c in manifest["checks"]
        )
        print(f"{config.name}: {status} ({checks})")
        return ok

    if args.jobs == 1 or len(configs) == 1:
        results = [one(c) for c in configs]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(one, configs))
    return 0 if all(results) else 1


def _cmd_list() -> int:
    for name, description in list_scenarios():
        print(f"{name}\t{description}")
    return 0


def _cmd_validate(path: str) -> int:
    if not os.path.exists(path):
        print(f"{path}: no such file", file=sys.stderr)
        return 2
    config, diags = validate_config_file(path)
    if diags:
        for line in diags:
            print(line)
        return 1
    print(f"{config.name}: valid")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "list":
        return _cmd_list()
    return _cmd_validate(args.config)


if __name__ == "__main__":
    sys.exit(main())
