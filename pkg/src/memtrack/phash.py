"""Perceptual hashing of object views for memory admission.

A view is resized to 32x32, DCT-transformed, and the top-left 8x8
low-frequency block is binarized against its own mean. Appearance
difference is the normalized Hamming distance of two hash matrices.
"""

import numpy as np

from . import imaging
from .errors import InvalidInput, SizeMismatch

HASH_SIDE = 8
_RESIZE_SIDE = 32


def hash_view(view):
    """64-bit perceptual hash of a gray view as an 8x8 {0,1} matrix.

    Bit (i, j) is 1 iff DCT coefficient (i, j) strictly exceeds the mean of
    the retained block; ties give 0.
    """
    img = np.asarray(view, dtype=np.float64)
    if img.ndim != 2 or img.size == 0:
        raise InvalidInput(f"expected a non-empty gray image, got shape {img.shape}")
    if img.shape != (_RESIZE_SIDE, _RESIZE_SIDE):
        h, w = img.shape
        whole = imaging.BBox((w - 1) / 2.0, (h - 1) / 2.0, float(w), float(h))
        img = imaging.extract_patch(img, whole, _RESIZE_SIDE, _RESIZE_SIDE)
    block = imaging.dct2(img)[:HASH_SIDE, :HASH_SIDE]
    return (block > block.mean()).astype(np.uint8)


def difference_score(a, b):
    """Normalized Hamming distance in [0, 1] between two hash matrices."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise SizeMismatch(f"hash sizes differ: {a.shape} vs {b.shape}")
    return float(np.count_nonzero(a != b)) / a.size
