"""Command-line interface.

Commands: track, eval, ablate, synth, plot. Exit codes: 0 on success, 2 on
input errors (bad paths, malformed files, invalid parameters), 3 on runtime
failures while tracking.
"""

import argparse
import os
import sys

from .config import TrackerConfig, load_config
from .errors import InputError, TrackerError
from .bench import ope, sequences, synth

_TOGGLES = (
    ("no_memory", "--no-memory", {"lambda2": 0.0}, "disable memory-view training"),
    ("no_context", "--no-context", {"lambda3": 0.0}, "disable context training"),
    ("no_channel_weights", "--no-channel-weights", {"eta": 0.0},
     "freeze channel weights"),
)


def _add_config_args(parser, with_toggles=True):
    parser.add_argument("--config", help="flat key = value config file")
    if with_toggles:
        for dest, flag, _, help_text in _TOGGLES:
            parser.add_argument(flag, dest=dest, action="store_true", help=help_text)


def _resolve_config(args):
    cfg = load_config(args.config) if args.config else TrackerConfig().validate()
    overrides = {}
    for dest, _, mapping, _ in _TOGGLES:
        if getattr(args, dest, False):
            overrides.update(mapping)
    return cfg.replace(**overrides) if overrides else cfg


def _cmd_track(args):
    cfg = _resolve_config(args)
    manifest = sequences.load_sequence(args.sequence)
    out = args.out or f"{manifest.name}_results.txt"
    report, _ = ope.run_ope(cfg, manifest, out_path=out)
    print(f"{manifest.name}: {report.steps} steps, "
          f"precision@20 = {report.precision_at_20:.3f}, "
          f"AUC = {report.auc:.3f}, FPS = {report.fps:.1f}")
    print(f"results written to {out}")
    if args.report:
        report.save(args.report)
        print(f"report written to {args.report}")
    return 0


def _cmd_eval(args):
    manifest = sequences.load_sequence(args.sequence)
    predictions = sequences.read_results(args.results)
    if len(predictions) != len(manifest):
        raise InputError(f"{len(predictions)} predictions for {len(manifest)} frames")
    report = ope.evaluate(manifest, predictions)
    print(f"{manifest.name}: precision@20 = {report.precision_at_20:.3f}, "
          f"AUC = {report.auc:.3f}")
    if args.report:
        report.save(args.report)
        print(f"report written to {args.report}")
    return 0


def _cmd_ablate(args):
    cfg = _resolve_config(args)
    manifests = [sequences.load_sequence(p) for p in args.sequences]
    rows = ope.run_ablation(cfg, manifests)
    outdir = args.out or "."
    os.makedirs(outdir, exist_ok=True)
    csv_path = os.path.join(outdir, "ablation.csv")
    ope.write_ablation_csv(rows, csv_path)
    header = f"{'configuration':<12} {'precision@20':>12} {'auc':>8} {'fps':>8}"
    print(header)
    for row in rows:
        print(f"{row.name:<12} {row.precision:>12.4f} {row.auc:>8.4f} {row.fps:>8.2f}")
        for manifest in manifests:
            safe = row.name.replace("+", "p")
            path = os.path.join(outdir, f"{manifest.name}__{safe}.txt")
            sequences.write_results(path, row.predictions[manifest.name])
    print(f"table written to {csv_path}")
    return 0


def _cmd_synth(args):
    spec = synth.load_synth_spec(args.spec)
    manifest = synth.generate(spec, args.outdir)
    print(f"wrote {len(manifest)} frames to {args.outdir}")
    return 0


def _cmd_plot(args):
    from .bench import plots  # defers the matplotlib import

    report = ope.EvalReport.load(args.report)
    paths = plots.render_report(report, args.outdir)
    for label, path in paths.items():
        print(f"{label}: {path}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="memtrack",
        description="Correlation-filter tracker with view memory, context "
                    "suppression, and channel weighting; one-pass benchmark tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_track = sub.add_parser("track", help="track a sequence, write predictions")
    p_track.add_argument("sequence", help="sequence directory or .json manifest")
    p_track.add_argument("--out", help="results file (default <name>_results.txt)")
    p_track.add_argument("--report", help="also write the evaluation report JSON")
    _add_config_args(p_track)
    p_track.set_defaults(func=_cmd_track)

    p_eval = sub.add_parser("eval", help="score a results file against ground truth")
    p_eval.add_argument("sequence")
    p_eval.add_argument("results")
    p_eval.add_argument("--report", help="write the evaluation report JSON")
    p_eval.set_defaults(func=_cmd_eval)

    p_ablate = sub.add_parser("ablate", help="run the five-row module-toggle table")
    p_ablate.add_argument("sequences", nargs="+")
    p_ablate.add_argument("--out", help="output directory (default .)")
    _add_config_args(p_ablate)
    p_ablate.set_defaults(func=_cmd_ablate)

    p_synth = sub.add_parser("synth", help="render a synthetic sequence")
    p_synth.add_argument("spec", help="flat key = value spec file")
    p_synth.add_argument("outdir")
    p_synth.set_defaults(func=_cmd_synth)

    p_plot = sub.add_parser("plot", help="render CSV curves and an SVG figure")
    p_plot.add_argument("report", help="report JSON written by track/eval")
    p_plot.add_argument("--outdir", default=".")
    p_plot.set_defaults(func=_cmd_plot)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TrackerError as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
