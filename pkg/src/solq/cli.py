"""Command-line entry point: scenario runners and parameter validation.

Usage pattern:

    solq rates --out results/
    solq steady --scenario fig5b --points 401 --out results/
    solq validate --config params.cfg

Config files are flat key=value lines ('#' starts a comment). Model keys
(nu, mass_ratio, n0_xi, wannier_convention) plus the scenario-specific
settings listed in `--help` for each subcommand.
"""

import argparse
import sys
from pathlib import Path

from .model import ModelParams
from .scenarios import Scenario, format_value, run_scenario, validate_report

MODEL_KEYS = ("nu", "mass_ratio", "n0_xi", "wannier_convention")

SETTING_KEYS = {
    "fig2": (),
    "fig3a": ("t_final",),
    "fig3b": ("t_final", "d"),
    "fig4": ("t_final", "d", "omega_1", "omega_2", "initial_state"),
    "fig5a": ("omega", "d_min", "d_max"),
    "fig5b": ("d", "omega_max"),
    "figS1": ("box_length",),
    "figS3": ("count", "spacing", "box_length", "t_final"),
}

COMMAND_SCENARIOS = {
    "rates": ("fig2",),
    "decay": ("fig3a", "fig3b"),
    "driven": ("fig4",),
    "steady": ("fig5b", "fig5a"),
    "gpe-boundstates": ("figS1",),
    "gpe-multisoliton": ("figS3",),
}


def parse_config(path: str) -> dict:
    """key=value lines; '#' comments; later keys win."""
    out = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _split_config(cfg: dict, scenario_name: str) -> tuple[dict, dict]:
    """Partition config entries into model kwargs and scenario settings."""
    allowed = SETTING_KEYS[scenario_name]
    model_kwargs = {}
    settings = {}
    for key, value in cfg.items():
        if key in MODEL_KEYS:
            if key == "wannier_convention":
                model_kwargs[key] = value
            else:
                model_kwargs[key] = float(value)
        elif key in allowed:
            settings[key] = value
        else:
            raise ValueError(
                f"config key {key!r} is not used by scenario {scenario_name}"
            )
    return model_kwargs, settings


def _add_common(sub: argparse.ArgumentParser, scenarios) -> None:
    sub.add_argument(
        "--scenario", choices=scenarios, default=scenarios[0],
        help=f"preset to run (default {scenarios[0]})",
    )
    sub.add_argument("--config", help="key=value parameter file")
    sub.add_argument("--out", default=".", help="output directory (default .)")
    sub.add_argument("--points", type=int, help="override sweep/grid resolution")
    sub.add_argument(
        "--seed", type=int,
        help="recorded in the metadata sidecar; physics is deterministic",
    )
    sub.add_argument(
        "--threads", type=int,
        help="sweep parallelism (default: available cores)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solq",
        description="Soliton-qubit dissipative entanglement datasets",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "rates": "collective emission rates vs qubit separation",
        "decay": "undriven decay of the one-excitation state",
        "driven": "driven time evolution from the ground state",
        "steady": "driven steady-state concurrence sweeps",
        "gpe-boundstates": "impurity orbitals in a frozen soliton",
        "gpe-multisoliton": "soliton-chain stability in a box",
    }
    for command, scenarios in COMMAND_SCENARIOS.items():
        sub = subparsers.add_parser(command, help=descriptions[command])
        _add_common(sub, scenarios)
        settable = sorted({k for s in scenarios for k in SETTING_KEYS[s]})
        if settable:
            sub.epilog = "config keys: " + ", ".join(MODEL_KEYS + tuple(settable))
    val = subparsers.add_parser("validate", help="parameter regime report")
    val.add_argument("--config", help="key=value parameter file")
    val.add_argument("--d", type=float, default=2.5, help="probe separation")
    return parser


def _run_dataset(args) -> int:
    cfg = parse_config(args.config) if args.config else {}
    model_kwargs, settings = _split_config(cfg, args.scenario)
    params = ModelParams(**model_kwargs)
    scenario = Scenario(
        name=args.scenario,
        params=params,
        settings=settings,
        out_dir=Path(args.out),
        points=args.points,
        seed=args.seed,
        threads=args.threads,
    )
    paths = run_scenario(scenario)
    print("wrote " + " ".join(str(p) for p in paths))
    return 0


def _run_validate(args) -> int:
    cfg = parse_config(args.config) if args.config else {}
    model_kwargs = {}
    for key, value in cfg.items():
        if key not in MODEL_KEYS:
            raise ValueError(f"config key {key!r} is not a model parameter")
        model_kwargs[key] = value if key == "wannier_convention" else float(value)
    params = ModelParams(**model_kwargs)
    report, ok = validate_report(params, d_check=args.d)
    for key, value in report.items():
        print(f"{key}={format_value(value)}")
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "validate":
            return _run_validate(args)
        return _run_dataset(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
