"""SPARSEFIT Pipeline: sparse non-negative approximation by dictionary NNLS.

Usage:
    python -m scripts.run_pipeline approximate --preset rational_power --alpha 0.5 --m 10
    python -m scripts.run_pipeline approximate --config runs/my.cfg --max-outer 300
    python -m scripts.run_pipeline reference --table table1_a50
    python -m scripts.run_pipeline sweep --preset rational_power --sweep m=5,10,20
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

# Fix Windows console encoding
os.environ.setdefault("PYTHONIOENCODING", "utf-8")
if sys.stdout and sys.stdout.encoding != "utf-8" and hasattr(sys.stdout, "reconfigure"):
    sys.stdout.reconfigure(encoding="utf-8")

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from loguru import logger

from src.approx.reference import REFERENCE_IDS
from src.config import OUTPUT_DIR
from src.errors import SelectionError
from src.experiments.config_file import apply_overrides, read_config
from src.experiments.presets import PRESET_NAMES, preset
from src.models import ExperimentConfig, Spacing
from src.pipeline import SWEEP_KEYS, cmd_approximate, cmd_reference, cmd_sweep


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", choices=PRESET_NAMES, help="Named experiment (default: rational_power)")
    parser.add_argument("--config", type=Path, help="Config file (key = value); flags override it")
    parser.add_argument("--alpha", type=float, help="Target exponent, 0 < alpha < 1")
    parser.add_argument("--m", type=int, help="Number of terms to select")
    parser.add_argument("--n", type=int, help="Number of grid nodes")
    parser.add_argument("--l", type=int, help="Number of candidate parameters")
    parser.add_argument("--c", type=float, help="Smallest candidate parameter")
    parser.add_argument("--d", type=float, help="Largest candidate parameter")
    parser.add_argument("--a", type=float, help="Left end of the interval")
    parser.add_argument("--b", type=float, help="Right end of the interval")
    parser.add_argument("--max-outer", type=int, help="Cap on NNLS outer iterations")
    parser.add_argument("--eval-n", type=int, help="Nodes of a separate evaluation grid (0: fitting grid)")
    parser.add_argument("--spacing", choices=[s.value for s in Spacing], help="Candidate spacing")
    parser.add_argument("--unpinned", action="store_true", help="Use the raw (unpinned) atom family")


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """Preset, then config file, then command-line flags."""
    if args.config:
        config = read_config(args.config)
        if args.preset:
            logger.warning("--preset ignored: --config given")
    else:
        config = preset(
            args.preset or "rational_power",
            alpha=args.alpha if args.alpha is not None else 0.5,
            m=args.m,
            pinned=not args.unpinned,
        )
    overrides = {
        "alpha": args.alpha,
        "m": args.m,
        "n": args.n,
        "l": args.l,
        "c": args.c,
        "d": args.d,
        "a": args.a,
        "b": args.b,
        "max_outer": args.max_outer,
        "eval_n": args.eval_n,
        "spacing": args.spacing,
    }
    return apply_overrides(config, overrides)


def _parse_sweep(text: str) -> tuple[str, list[float]]:
    key, _, raw = text.partition("=")
    key = key.strip()
    if key not in SWEEP_KEYS or not raw.strip():
        raise argparse.ArgumentTypeError(f"expected {'|'.join(SWEEP_KEYS)}=v1,v2,..., got '{text}'")
    return key, [float(v) for v in raw.split(",") if v.strip()]


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description="SPARSEFIT Pipeline")
    sub = parser.add_subparsers(dest="command", required=True)

    p_approx = sub.add_parser("approximate", help="Fit one approximant")
    _add_config_flags(p_approx)
    p_approx.add_argument("--out", type=Path, default=OUTPUT_DIR / "approximate", help="Output directory")
    p_approx.add_argument("--snapshots", action="store_true", help="Also write per-iteration coefficients")
    p_approx.add_argument("--dump-system", type=Path, help="Write the design system (.csv or binary)")

    p_ref = sub.add_parser("reference", help="Evaluate published parameters")
    p_ref.add_argument("--table", required=True, help=f"One of: {', '.join(REFERENCE_IDS)}")
    p_ref.add_argument("--eval-n", type=int, default=0, help="Nodes of a separate evaluation grid")
    p_ref.add_argument("--out", type=Path, default=None, help="Output directory")

    p_sweep = sub.add_parser("sweep", help="Repeat a fit over m, l or alpha values")
    _add_config_flags(p_sweep)
    p_sweep.add_argument("--sweep", type=_parse_sweep, required=True, help="e.g. m=5,10,20 or l=500,1000,2000")
    p_sweep.add_argument("--out", type=Path, default=OUTPUT_DIR / "sweep", help="Output directory")

    args = parser.parse_args(argv)

    try:
        if args.command == "approximate":
            manifest = cmd_approximate(
                resolve_config(args),
                args.out,
                snapshots=args.snapshots,
                dump_path=args.dump_system,
            )
        elif args.command == "reference":
            out = args.out or OUTPUT_DIR / f"reference_{args.table}"
            manifest = cmd_reference(args.table, out, eval_n=args.eval_n)
        else:
            key, values = args.sweep
            manifest = cmd_sweep(resolve_config(args), key, values, args.out)
    except SelectionError as e:
        logger.error("Selection failed: {}", e)
        logger.error("Raise --max-outer or choose m from the attained sizes above")
        return 1
    except ValueError as e:
        logger.error("Rejected input: {}", e)
        return 1

    print("\n" + "=" * 60)
    print(f"{args.command.upper()} done, {len(manifest.outputs)} files:")
    for path in manifest.outputs:
        print(f"  {path}")
    print("=" * 60 + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
