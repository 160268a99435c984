"""Pixel-level services: grayscale conversion, patch extraction, 2-D DCT.

Gray images are plain 2-D float64 arrays with values in [0, 1], row-major.
Coordinates are pixel-center based: pixel (row, col) sits at (y, x) =
(row, col), so an image of width W covers the continuous range
[-0.5, W - 0.5] along x.
"""

from dataclasses import dataclass

import numpy as np
from scipy import fft as _sfft

from .errors import InvalidInput

# ITU-R BT.601 luma weights
_LUMA = np.array([0.299, 0.587, 0.114])


@dataclass(frozen=True)
class BBox:
    """Axis-aligned box: sub-pixel center (cx, cy) plus extent (w, h) in pixels."""

    cx: float
    cy: float
    w: float
    h: float

    def __post_init__(self):
        vals = (self.cx, self.cy, self.w, self.h)
        if not all(np.isfinite(v) for v in vals):
            raise InvalidInput(f"non-finite box {vals}")
        if self.w <= 0 or self.h <= 0:
            raise InvalidInput(f"non-positive box extent {self.w}x{self.h}")

    @classmethod
    def from_corner(cls, x, y, w, h):
        """Build from benchmark corner format: 1-indexed top-left pixel, w x h."""
        return cls((x - 1.0) + (w - 1.0) / 2.0, (y - 1.0) + (h - 1.0) / 2.0,
                   float(w), float(h))

    def to_corner(self):
        """Inverse of :meth:`from_corner`; exact round trip for float inputs."""
        return (self.cx - (self.w - 1.0) / 2.0 + 1.0,
                self.cy - (self.h - 1.0) / 2.0 + 1.0,
                self.w, self.h)

    def scaled(self, factor):
        return BBox(self.cx, self.cy, self.w * factor, self.h * factor)

    def moved_to(self, cx, cy):
        return BBox(cx, cy, self.w, self.h)


def to_gray(frame):
    """Convert an 8-bit grayscale/RGB frame to a float gray image in [0, 1].

    Integer input is scaled by 1/255; float input is assumed to already be
    luminance-scaled. RGB is reduced with BT.601 weights.
    """
    a = np.asarray(frame)
    if a.size == 0:
        raise InvalidInput("zero-sized image")
    scale = 1.0 / 255.0 if np.issubdtype(a.dtype, np.integer) else 1.0
    if a.ndim == 2:
        g = a.astype(np.float64) * scale
    elif a.ndim == 3 and a.shape[2] in (3, 4):
        g = (a[:, :, :3].astype(np.float64) @ _LUMA) * scale
    else:
        raise InvalidInput(f"unsupported frame shape {a.shape}")
    if not np.isfinite(g).all():
        raise InvalidInput("non-finite pixel values")
    return np.clip(g, 0.0, 1.0)


def _bilinear_rows_cols(img, ys, xs):
    # Separable sample grid; out-of-range coordinates replicate the edge.
    h, w = img.shape
    y0 = np.floor(ys)
    x0 = np.floor(xs)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]
    y0 = y0.astype(np.intp)
    x0 = x0.astype(np.intp)
    y0c = np.clip(y0, 0, h - 1)
    y1c = np.clip(y0 + 1, 0, h - 1)
    x0c = np.clip(x0, 0, w - 1)
    x1c = np.clip(x0 + 1, 0, w - 1)
    top = img[y0c][:, x0c] * (1.0 - fx) + img[y0c][:, x1c] * fx
    bot = img[y1c][:, x0c] * (1.0 - fx) + img[y1c][:, x1c] * fx
    return top * (1.0 - fy) + bot * fy


def extract_patch(img, region, out_w, out_h):
    """Crop ``region`` and bilinearly resample it to out_w x out_h.

    Pixels outside the image replicate the nearest edge. Output pixel j
    samples the source at region_left + (j + 0.5) * region_w / out_w, which
    makes a whole-image crop at native size an exact identity.
    """
    if out_w < 1 or out_h < 1:
        raise InvalidInput("output size must be at least 1x1")
    img = np.asarray(img, dtype=np.float64)
    xs = (region.cx - region.w / 2.0) + (np.arange(out_w) + 0.5) * (region.w / out_w)
    ys = (region.cy - region.h / 2.0) + (np.arange(out_h) + 0.5) * (region.h / out_h)
    return _bilinear_rows_cols(img, ys, xs)


def dct2(img):
    """Orthonormal type-II 2-D DCT; coefficient (0, 0) is the DC term."""
    a = np.asarray(img, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise InvalidInput(f"dct2 expects a non-empty 2-D array, got shape {a.shape}")
    return _sfft.dctn(a, type=2, norm="ortho")
