"""Suppressed-context features: an enlarged surround region squeezed down to
filter size, with the object removed by a quadratic mask, used as a
zero-response negative training sample.
"""

import numpy as np

from .errors import ParameterConstraintViolation
from .features import apply_window, compute_features
from .imaging import BBox, extract_patch


def suppression_mask(m, n, obj_w, obj_h):
    """Quadratic object-removal mask on an m x n cell grid.

    With rho the elliptical radius normalized to the object's half-extents
    (obj_w, obj_h, in cells) around the center cell (m//2, n//2), the mask is
    min(1, rho^2): zero on the object center, one at and beyond its border.
    """
    if obj_w <= 0 or obj_h <= 0:
        raise ParameterConstraintViolation(f"object extent must be positive, got {obj_w}x{obj_h}")
    du = (np.arange(m, dtype=np.float64) - m // 2)[:, None]
    dv = (np.arange(n, dtype=np.float64) - n // 2)[None, :]
    rho2 = (2.0 * du / obj_h) ** 2 + (2.0 * dv / obj_w) ** 2
    return np.minimum(1.0, rho2)


def compressed_context_features(frame, obj, search_side, context_scale, cell, window):
    """Feature map of the compressed, object-suppressed context region.

    A square of side context_scale * search_side centered on the object is
    resampled down to the filter's pixel size (window cells * cell px),
    feature-extracted, windowed, and multiplied per channel by the
    suppression mask sized for the compressed object extent.
    """
    if context_scale <= 1:
        raise ParameterConstraintViolation(f"context_scale must exceed 1, got {context_scale}")
    m, n = window.shape
    out_h, out_w = m * cell, n * cell
    side = context_scale * search_side
    patch = extract_patch(frame, BBox(obj.cx, obj.cy, side, side), out_w, out_h)
    fmap = apply_window(compute_features(patch, cell), window)
    # compression factor: side px map onto out px, then cell px per grid cell
    obj_w_cells = obj.w * out_w / (side * cell)
    obj_h_cells = obj.h * out_h / (side * cell)
    mask = suppression_mask(m, n, obj_w_cells, obj_h_cells)
    return fmap * mask[:, :, None]
