"""2-D DFT wrappers and elementwise complex algebra for the filter core.

Convention, fixed project-wide: unnormalized forward transform, 1/(MN) on
the inverse. Arrays are (m, n) planes or (m, n, d) channel stacks; the
transform always runs over the first two axes, one plane per channel.

A module-level counter tracks how many 2-D planes have been transformed
(forward or inverse) since the last reset; the tracker's per-frame work
bound is asserted against it in tests.
"""

import numpy as np

from .errors import ImaginaryResidueExceeded, ShapeMismatch

_plane_count = 0


def reset_plane_count():
    global _plane_count
    _plane_count = 0


def plane_count():
    return _plane_count


def _count_planes(a):
    global _plane_count
    _plane_count += int(a.size // (a.shape[0] * a.shape[1])) if a.size else 0


def dft2(plane):
    """Forward 2-D DFT of a real or complex plane (or stack of planes)."""
    a = np.asarray(plane)
    if a.ndim < 2:
        raise ShapeMismatch(f"expected at least 2 dimensions, got {a.ndim}")
    _count_planes(a)
    return np.fft.fft2(a, axes=(0, 1))


def idft2(spec, strict=False, return_residue=False):
    """Inverse 2-D DFT, returning the real part.

    With ``strict`` the call raises ImaginaryResidueExceeded when the largest
    imaginary component exceeds 1e-6 times the largest output magnitude;
    ``return_residue`` additionally returns that residue.
    """
    a = np.asarray(spec)
    if a.ndim < 2:
        raise ShapeMismatch(f"expected at least 2 dimensions, got {a.ndim}")
    _count_planes(a)
    full = np.fft.ifft2(a, axes=(0, 1))
    out = np.ascontiguousarray(full.real)
    if strict or return_residue:
        residue = float(np.abs(full.imag).max()) if full.size else 0.0
        peak = float(np.abs(out).max()) if out.size else 0.0
        if strict and residue > 1e-6 * peak:
            raise ImaginaryResidueExceeded(
                f"imaginary residue {residue:.3e} exceeds 1e-6 * {peak:.3e}")
        if return_residue:
            return out, residue
    return out


def _check_same_shape(a, b):
    if a.shape != b.shape:
        raise ShapeMismatch(f"shape mismatch: {a.shape} vs {b.shape}")


def conj(spec):
    return np.conj(spec)


def mul(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    _check_same_shape(a, b)
    return a * b


def add(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    _check_same_shape(a, b)
    return a + b


def scale(spec, factor):
    return np.asarray(spec) * factor


def div_real(spec, denom, offset=0.0):
    """Divide a spectrum by (real plane + scalar offset).

    The plane must match the spectrum's leading two dims; channel stacks
    share the same real denominator across channels.
    """
    a = np.asarray(spec)
    d = np.asarray(denom, dtype=np.float64)
    if d.shape != a.shape[:2]:
        raise ShapeMismatch(f"denominator shape {d.shape} does not match plane {a.shape[:2]}")
    full = d + offset
    if a.ndim > 2:
        full = full[:, :, None]
    return a / full
