"""Report rendering: delimited curve data plus an SVG precision/success figure."""

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import metrics


def write_curve_csv(path, thresholds, values, threshold_label, value_label):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([threshold_label, value_label])
        for t, v in zip(thresholds, values):
            writer.writerow([f"{t:.6g}", f"{v:.6g}"])


def render_report(report, outdir, stem=None):
    """Write precision/success CSVs and the SVG figure; returns their paths."""
    os.makedirs(outdir, exist_ok=True)
    stem = stem or report.name
    paths = {
        "precision_csv": os.path.join(outdir, f"{stem}_precision_curve.csv"),
        "success_csv": os.path.join(outdir, f"{stem}_success_curve.csv"),
        "figure": os.path.join(outdir, f"{stem}_curves.svg"),
    }
    write_curve_csv(paths["precision_csv"], metrics.PRECISION_THRESHOLDS,
                    report.precision_curve, "threshold_px", "precision")
    write_curve_csv(paths["success_csv"], metrics.SUCCESS_THRESHOLDS,
                    report.success_curve, "threshold_iou", "success")

    fig, (ax_p, ax_s) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax_p.plot(metrics.PRECISION_THRESHOLDS, report.precision_curve, lw=2)
    ax_p.axvline(20.0, color="gray", ls="--", lw=0.8)
    ax_p.set_xlabel("center error threshold (px)")
    ax_p.set_ylabel("precision")
    ax_p.set_title(f"precision@20 = {report.precision_at_20:.3f}")
    ax_p.set_ylim(0, 1.05)
    ax_s.plot(metrics.SUCCESS_THRESHOLDS, report.success_curve, lw=2)
    ax_s.set_xlabel("IoU threshold")
    ax_s.set_ylabel("success rate")
    ax_s.set_title(f"AUC = {report.auc:.3f}")
    ax_s.set_ylim(0, 1.05)
    fig.suptitle(report.name)
    fig.tight_layout()
    fig.savefig(paths["figure"])
    plt.close(fig)
    return paths
