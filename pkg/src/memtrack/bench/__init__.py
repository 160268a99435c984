"""Benchmark harness: sequence I/O, OPE metrics, synthetic sequences.

``plots`` is imported lazily by the CLI so that library use never pays the
matplotlib import cost.
"""

from .metrics import (auc, center_error, iou, precision_at, precision_curve,
                      success_curve)
from .ope import (AblationRow, EvalReport, evaluate, run_ablation, run_ope,
                  track_sequence, write_ablation_csv)
from .sequences import (SequenceManifest, load_frame, load_sequence,
                        read_results, write_results)
from .synth import SynthSpec, generate, load_synth_spec, parse_synth_spec, render_frames

__all__ = [
    "AblationRow", "EvalReport", "SequenceManifest", "SynthSpec",
    "auc", "center_error", "evaluate", "generate", "iou", "load_frame",
    "load_sequence", "load_synth_spec", "parse_synth_spec", "precision_at",
    "precision_curve", "read_results", "render_frames", "run_ablation",
    "run_ope", "success_curve", "track_sequence", "write_ablation_csv",
    "write_results",
]
