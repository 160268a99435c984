"""Hand-crafted feature maps for CPU tracking.

A patch is turned into a (cells_y, cells_x, 10) tensor: channel 0 is the
cell-mean gray level minus 0.5, channels 1-9 a 9-bin unsigned
gradient-orientation histogram per cell, L2-normalized with eps=1e-3 and
clipped to [0, 1].
"""

import numpy as np

from .errors import InvalidInput, ShapeMismatch

ORIENT_BINS = 9
CHANNELS = 1 + ORIENT_BINS
_NORM_EPS = 1e-3


def compute_features(patch, cell):
    """Extract the 10-channel feature map on a grid of cell x cell pixels.

    Patch dimensions must be positive multiples of ``cell``.
    """
    patch = np.asarray(patch, dtype=np.float64)
    if patch.ndim != 2:
        raise InvalidInput(f"expected a 2-D gray patch, got shape {patch.shape}")
    h, w = patch.shape
    if h < cell or w < cell:
        raise InvalidInput(f"patch {h}x{w} smaller than one {cell}px cell")
    if h % cell or w % cell:
        raise InvalidInput(f"patch {h}x{w} not divisible by cell={cell}")
    my, mx = h // cell, w // cell

    gy, gx = np.gradient(patch)
    mag = np.hypot(gx, gy)
    orient = np.mod(np.arctan2(gy, gx), np.pi)
    bins = (orient * (ORIENT_BINS / np.pi)).astype(np.intp) % ORIENT_BINS

    cell_ids = (np.arange(h, dtype=np.intp)[:, None] // cell) * mx \
        + (np.arange(w, dtype=np.intp)[None, :] // cell)
    flat = cell_ids * ORIENT_BINS + bins
    hist = np.bincount(flat.ravel(), weights=mag.ravel(),
                       minlength=my * mx * ORIENT_BINS)
    hist = hist.reshape(my, mx, ORIENT_BINS)
    norm = np.sqrt(np.sum(hist * hist, axis=2, keepdims=True) + _NORM_EPS ** 2)
    hist = np.clip(hist / norm, 0.0, 1.0)

    out = np.empty((my, mx, CHANNELS), dtype=np.float64)
    out[:, :, 0] = patch.reshape(my, cell, mx, cell).mean(axis=(1, 3)) - 0.5
    out[:, :, 1:] = hist
    return out


def cosine_window(m, n):
    """Separable raised-cosine weights: zero on the border, 1 at the center."""
    if m < 1 or n < 1:
        raise InvalidInput("window dims must be at least 1")
    return np.outer(np.hanning(m), np.hanning(n))


def apply_window(fmap, window):
    """Multiply every channel of a feature map by the window."""
    fmap = np.asarray(fmap)
    window = np.asarray(window)
    if fmap.shape[:2] != window.shape:
        raise ShapeMismatch(f"feature grid {fmap.shape[:2]} vs window {window.shape}")
    return fmap * window[:, :, None]
