"""Command-line entry points: run, preset, list, validate.

Exit codes: 0 on success, 1 for configuration problems, 2 when a numeric
invariant check fails during execution.
"""

from __future__ import annotations

import argparse
import sys

import yaml

from .hilbert import InvariantViolationError
from .presets import PRESET_NAMES, list_presets, preset, preset_description
from .runner import ConfigError, load_config, run, scenario_from_dict, scenario_to_dict


def _apply_overrides(config: dict, overrides: list[str]) -> dict:
    """Apply dotted key=value assignments; values parse as YAML scalars."""
    for item in overrides:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError as exc:
            raise ConfigError(f"override value {raw!r} is not valid YAML: {exc}")
        node = config
        parts = key.split(".")
        for part in parts[:-1]:
            child = node.get(part)
            if child is None:
                child = {}
                node[part] = child
            if not isinstance(child, dict):
                raise ConfigError(f"override {key!r} descends into non-mapping {part!r}")
            node = child
        node[parts[-1]] = value
    return config


def _cmd_run(args) -> int:
    scenario = load_config(args.config)
    result = run(scenario, out_dir=args.out)
    for path in result.files:
        print(path)
    if result.leakage_flagged:
        print(
            f"warning: leakage {result.max_leakage:.3e} exceeds threshold "
            f"{scenario.leakage_threshold:.3e}; flagged in metadata",
            file=sys.stderr,
        )
    return 0


def _cmd_preset(args) -> int:
    scenario = preset(args.name)
    if args.overrides:
        data = _apply_overrides(scenario_to_dict(scenario), args.overrides)
        scenario = scenario_from_dict(data)
    result = run(scenario, out_dir=args.out)
    for path in result.files:
        print(path)
    if result.leakage_flagged:
        print(
            f"warning: leakage {result.max_leakage:.3e} exceeds threshold "
            f"{scenario.leakage_threshold:.3e}; flagged in metadata",
            file=sys.stderr,
        )
    return 0


def _cmd_list(_args) -> int:
    width = max(len(name) for name in PRESET_NAMES)
    for name in list_presets():
        print(f"{name:<{width}}  {preset_description(name)}")
    return 0


def _cmd_validate(args) -> int:
    scenario = load_config(args.config)
    print(yaml.safe_dump(scenario_to_dict(scenario), sort_keys=True), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rabisim",
        description="Digitized quantum Rabi dynamics: scans, traces, dissipation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a scenario config file")
    p_run.add_argument("config", help="path to a YAML scenario config")
    p_run.add_argument("--out", default=None, help="output directory override")
    p_run.set_defaults(func=_cmd_run)

    p_pre = sub.add_parser("preset", help="execute a named preset")
    p_pre.add_argument("name", help="preset name (see 'list')")
    p_pre.add_argument("--out", default=None, help="output directory override")
    p_pre.add_argument(
        "--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
        help="override a config entry by dotted key, e.g. --set plan.l=8",
    )
    p_pre.set_defaults(func=_cmd_preset)

    p_list = sub.add_parser("list", help="list available presets")
    p_list.set_defaults(func=_cmd_list)

    p_val = sub.add_parser("validate", help="validate a config and print its resolved form")
    p_val.add_argument("config", help="path to a YAML scenario config")
    p_val.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolationError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
