"""One-pass evaluation: initialize on the first ground-truth box, never
reset, score predictions against ground truth, and time the tracker loop.

Wall-clock FPS covers the per-frame tracker work only; frame decoding and
disk I/O sit outside the timed region.
"""

import csv
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .. import tracker
from ..errors import TrackerError
from ..imaging import BBox
from . import metrics
from .sequences import load_frame, write_results

ABLATION_ROWS = (
    ("full", {}),
    ("+CW+CC", {"lambda2": 0.0}),
    ("+CC+AM", {"eta": 0.0}),
    ("+CW", {"lambda2": 0.0, "lambda3": 0.0}),
    ("baseline", {"lambda2": 0.0, "lambda3": 0.0, "eta": 0.0}),
)


@dataclass
class EvalReport:
    name: str
    center_errors: list
    ious: list
    precision_curve: list
    success_curve: list
    precision_at_20: float
    auc: float
    fps: float = None
    steps: int = 0

    def to_dict(self):
        return {
            "name": self.name,
            "center_errors": self.center_errors,
            "ious": self.ious,
            "precision_thresholds": list(metrics.PRECISION_THRESHOLDS),
            "precision_curve": self.precision_curve,
            "success_thresholds": list(metrics.SUCCESS_THRESHOLDS),
            "success_curve": self.success_curve,
            "precision_at_20": self.precision_at_20,
            "auc": self.auc,
            "fps": self.fps,
            "steps": self.steps,
        }

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=1)

    @classmethod
    def from_dict(cls, data):
        return cls(name=data["name"], center_errors=data["center_errors"],
                   ious=data["ious"], precision_curve=data["precision_curve"],
                   success_curve=data["success_curve"],
                   precision_at_20=data["precision_at_20"], auc=data["auc"],
                   fps=data.get("fps"), steps=data.get("steps", 0))

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def evaluate(manifest, predictions, fps=None):
    """Score corner-format predictions against the manifest's ground truth.

    Frames whose ground truth is the NaN absent-target sentinel are dropped
    from every metric denominator.
    """
    errors, overlaps = [], []
    for gt, pred in zip(manifest.boxes, predictions):
        if any(math.isnan(v) for v in gt) or any(math.isnan(v) for v in pred):
            errors.append(math.nan)
            overlaps.append(math.nan)
            continue
        errors.append(metrics.center_error(pred, gt))
        overlaps.append(metrics.iou(pred, gt))
    pcurve = metrics.precision_curve(errors)
    scurve = metrics.success_curve(overlaps)
    return EvalReport(name=manifest.name, center_errors=errors, ious=overlaps,
                      precision_curve=list(pcurve), success_curve=list(scurve),
                      precision_at_20=metrics.precision_at(errors, 20.0),
                      auc=metrics.auc(scurve), fps=fps,
                      steps=max(len(predictions) - 1, 0))


def track_sequence(config, manifest, frames=None):
    """Run the tracker over a manifest; returns (predictions, elapsed seconds).

    ``frames`` optionally supplies pre-decoded frames (arrays) instead of
    reading the manifest's files. On a tracker error the partial prediction
    list is attached to the exception as ``partial_predictions``.
    """
    def frame_at(i):
        return frames[i] if frames is not None else load_frame(manifest.frames[i])

    predictions = [tuple(manifest.boxes[0])]
    state = tracker.init(frame_at(0), BBox.from_corner(*manifest.boxes[0]), config)
    elapsed = 0.0
    try:
        for i in range(1, len(manifest)):
            frame = frame_at(i)
            t0 = time.perf_counter()
            state, box = tracker.step(state, frame)
            elapsed += time.perf_counter() - t0
            predictions.append(box.to_corner())
    except TrackerError as exc:
        exc.partial_predictions = predictions
        raise
    return predictions, elapsed


def run_ope(config, manifest, out_path=None, frames=None):
    """One-pass evaluation of ``config`` on a sequence.

    Returns (EvalReport, predictions); with ``out_path`` the predictions are
    written as a results file, including the partial list when the tracker
    aborts mid-sequence.
    """
    try:
        predictions, elapsed = track_sequence(config, manifest, frames=frames)
    except TrackerError as exc:
        if out_path and getattr(exc, "partial_predictions", None):
            write_results(out_path, exc.partial_predictions)
        raise
    steps = len(predictions) - 1
    fps = steps / elapsed if elapsed > 0 else float("inf")
    report = evaluate(manifest, predictions, fps=fps)
    if out_path:
        write_results(out_path, predictions)
    return report, predictions


@dataclass
class AblationRow:
    name: str
    precision: float
    auc: float
    fps: float
    reports: list = field(default_factory=list)
    predictions: dict = field(default_factory=dict)   # sequence name -> list


def run_ablation(config, manifests, frames_by_name=None):
    """Run the five-row module-toggle table over the given sequences.

    Rows toggle memory (lambda2=0), context (lambda3=0), and channel weights
    (eta=0) off the supplied base config. Precision and AUC average over
    sequences; FPS pools all timed steps.
    """
    rows = []
    for name, overrides in ABLATION_ROWS:
        cfg = config.replace(**overrides)
        reports, predictions = [], {}
        total_steps, total_time = 0, 0.0
        for manifest in manifests:
            frames = (frames_by_name or {}).get(manifest.name)
            preds, elapsed = track_sequence(cfg, manifest, frames=frames)
            report = evaluate(manifest, preds,
                              fps=(len(preds) - 1) / elapsed if elapsed > 0 else None)
            reports.append(report)
            predictions[manifest.name] = preds
            total_steps += len(preds) - 1
            total_time += elapsed
        rows.append(AblationRow(
            name=name,
            precision=float(np.mean([r.precision_at_20 for r in reports])),
            auc=float(np.mean([r.auc for r in reports])),
            fps=total_steps / total_time if total_time > 0 else float("inf"),
            reports=reports,
            predictions=predictions))
    return rows


def write_ablation_csv(rows, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["configuration", "precision@20", "auc", "fps"])
        for row in rows:
            writer.writerow([row.name, f"{row.precision:.4f}",
                             f"{row.auc:.4f}", f"{row.fps:.2f}"])
