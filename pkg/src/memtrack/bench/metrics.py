"""One-pass evaluation metrics: center error, IoU, precision/success curves.

Boxes are corner-format (x, y, w, h) tuples; both inputs must use the same
indexing convention, which then cancels out of every metric.
"""

import math

import numpy as np

PRECISION_THRESHOLDS = np.linspace(0.0, 50.0, 51)   # pixels
SUCCESS_THRESHOLDS = np.linspace(0.0, 1.0, 51)      # IoU


def center_error(a, b):
    """Euclidean distance between box centers in pixels."""
    dx = (a[0] + a[2] / 2.0) - (b[0] + b[2] / 2.0)
    dy = (a[1] + a[3] / 2.0) - (b[1] + b[3] / 2.0)
    return math.hypot(dx, dy)


def iou(a, b):
    """Intersection-over-union of two boxes; zero-area unions give 0."""
    ix = min(a[0] + a[2], b[0] + b[2]) - max(a[0], b[0])
    iy = min(a[1] + a[3], b[1] + b[3]) - max(a[1], b[1])
    inter = max(ix, 0.0) * max(iy, 0.0)
    union = a[2] * a[3] + b[2] * b[3] - inter
    if union <= 0:
        return 0.0
    return inter / union


def precision_curve(errors, thresholds=PRECISION_THRESHOLDS):
    """Fraction of frames with center error <= t, per threshold; NaNs excluded."""
    errs = np.asarray([e for e in errors if not math.isnan(e)], dtype=np.float64)
    if errs.size == 0:
        return np.zeros(len(thresholds))
    return (errs[None, :] <= np.asarray(thresholds)[:, None]).mean(axis=1)


def success_curve(ious, thresholds=SUCCESS_THRESHOLDS):
    """Fraction of frames with IoU strictly above s, per threshold; NaNs excluded."""
    vals = np.asarray([v for v in ious if not math.isnan(v)], dtype=np.float64)
    if vals.size == 0:
        return np.zeros(len(thresholds))
    return (vals[None, :] > np.asarray(thresholds)[:, None]).mean(axis=1)


def auc(curve):
    """Success-curve summary: the mean over its samples."""
    return float(np.mean(curve))


def precision_at(errors, threshold=20.0):
    errs = [e for e in errors if not math.isnan(e)]
    if not errs:
        return 0.0
    return sum(1 for e in errs if e <= threshold) / len(errs)
