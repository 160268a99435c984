"""Frequency-domain ridge-regression filter: closed-form training, online
numerator/denominator updates, channel-reliability weights, and detection.

All functions work on spectra, shape (m, n, d) complex (one plane per
feature channel) for samples and (m, n) for labels; callers own the
forward transforms so view and label spectra can be cached across frames.

Training a filter w against a sample x with desired response y, a set of
remembered views (x_k, y_k) weighted by lambda2, a suppressed context
sample m_b weighted by lambda3, and ridge weight lambda1 has the per-bin
closed form

    w^d = (conj(x^d) y + lambda2 sum_k conj(x_k^d) y_k)
          / (sum_d' (|x^d'|^2 + lambda2 sum_k |x_k^d'|^2 + lambda3 |m_b^d'|^2) + lambda1)

with a real denominator shared across channels. Online tracking keeps the
numerator and per-channel denominator terms as exponentially blended
accumulators instead of re-solving from scratch.
"""

from dataclasses import dataclass, field

import numpy as np

from . import transforms
from .errors import (GammaOutOfRange, NonpositiveRegularizer, ShapeMismatch)

_WEIGHT_FLOOR = 1e-12


@dataclass
class TrainTerms:
    """One frame's training contributions, before temporal blending.

    numerator: conj(x_c) * y_c + lambda2 * sum_k conj(x_k) * y_k, per channel.
    energy: |x_c|^2 + lambda2 * sum_k |x_k|^2, per channel (real).
    context_energy: |m_b|^2 per channel (real); zeros when no context sample.
    """

    numerator: np.ndarray
    energy: np.ndarray
    context_energy: np.ndarray


def _abs2(spec):
    return spec.real * spec.real + spec.imag * spec.imag


def train_terms(sample, label, views, context, lambda2):
    """Accumulate numerator/energy terms for the current sample plus views.

    ``sample`` is the (m, n, d) spectrum of the current windowed features,
    ``label`` the (m, n) spectrum of its desired response, ``views`` an
    iterable of (spectrum, label spectrum) pairs, ``context`` the spectrum
    of the suppressed context sample or None.
    """
    sample = np.asarray(sample)
    label = np.asarray(label)
    if label.shape != sample.shape[:2]:
        raise ShapeMismatch(f"label {label.shape} vs sample grid {sample.shape[:2]}")
    numerator = np.conj(sample) * label[:, :, None]
    energy = _abs2(sample)
    if lambda2 != 0.0:
        for vspec, vlabel in views:
            vspec = np.asarray(vspec)
            vlabel = np.asarray(vlabel)
            if vspec.shape != sample.shape:
                raise ShapeMismatch(f"view {vspec.shape} vs sample {sample.shape}")
            if vlabel.shape != label.shape:
                raise ShapeMismatch(f"view label {vlabel.shape} vs label {label.shape}")
            numerator += lambda2 * (np.conj(vspec) * vlabel[:, :, None])
            energy += lambda2 * _abs2(vspec)
    if context is None:
        context_energy = np.zeros_like(energy)
    else:
        context = np.asarray(context)
        if context.shape != sample.shape:
            raise ShapeMismatch(f"context {context.shape} vs sample {sample.shape}")
        context_energy = _abs2(context)
    return TrainTerms(numerator, energy, context_energy)


def solve_filter(numerator, denominator, lambda1):
    """Per-channel filter spectrum numerator / (sum_d denominator + lambda1).

    ``denominator`` holds the per-channel real energy terms; the channel sum
    plus lambda1 is the shared real denominator, bounded below by lambda1.
    """
    if lambda1 <= 0:
        raise NonpositiveRegularizer(f"lambda1 must be positive, got {lambda1}")
    numerator = np.asarray(numerator)
    denominator = np.asarray(denominator)
    if denominator.shape != numerator.shape:
        raise ShapeMismatch(f"denominator {denominator.shape} vs numerator {numerator.shape}")
    return transforms.div_real(numerator, denominator.sum(axis=2), lambda1)


@dataclass
class FilterState:
    """Online filter model: blended accumulators, solved filters, weights."""

    numerator: np.ndarray       # (m, n, d) complex
    denominator: np.ndarray     # (m, n, d) real, already includes lambda3 context
    weights: np.ndarray         # (d,) channel reliabilities on the simplex
    lambda1: float
    lambda2: float
    lambda3: float
    gamma: float
    eta: float
    filters: np.ndarray = field(default=None, repr=False)

    @classmethod
    def from_terms(cls, terms, lambda1, lambda2, lambda3, gamma, eta):
        """Initial state from first-frame terms; uniform channel weights."""
        d = terms.numerator.shape[2]
        state = cls(numerator=terms.numerator.copy(),
                    denominator=terms.energy + lambda3 * terms.context_energy,
                    weights=np.full(d, 1.0 / d),
                    lambda1=lambda1, lambda2=lambda2, lambda3=lambda3,
                    gamma=gamma, eta=eta)
        state.filters = solve_filter(state.numerator, state.denominator, lambda1)
        return state


def update_state(state, terms, gamma=None):
    """Blend fresh terms into the accumulators and re-solve the filters.

    numerator <- (1-gamma) numerator + gamma * fresh numerator
    denominator <- (1-gamma) denominator + gamma * (energy + lambda3 context)
    """
    g = state.gamma if gamma is None else gamma
    if not 0.0 <= g <= 1.0:
        raise GammaOutOfRange(f"gamma must lie in [0, 1], got {g}")
    fresh_den = terms.energy + state.lambda3 * terms.context_energy
    state.numerator = (1.0 - g) * state.numerator + g * terms.numerator
    state.denominator = (1.0 - g) * state.denominator + g * fresh_den
    state.filters = solve_filter(state.numerator, state.denominator, state.lambda1)
    return state


def update_channel_weights(state, sample):
    """Blend channel weights toward each channel's share of peak response.

    The reliability of channel d is the maximum of its spatial response to
    the current sample, max(real(idft2(w^d * x^d))). Weights are
    renormalized onto the simplex when every per-channel maximum is
    positive; a degenerate total (<= 1e-12) leaves them untouched.
    """
    eta = state.eta
    if eta == 0.0:
        return state
    sample = np.asarray(sample)
    if sample.shape != state.filters.shape:
        raise ShapeMismatch(f"sample {sample.shape} vs filters {state.filters.shape}")
    responses = transforms.idft2(state.filters * sample)
    maxima = responses.max(axis=(0, 1))
    total = float(maxima.sum())
    if total <= _WEIGHT_FLOOR:
        return state
    weights = (1.0 - eta) * state.weights + eta * (maxima / total)
    if np.all(maxima > 0.0):
        weights = weights / weights.sum()
    state.weights = weights
    return state


@dataclass
class ResponseMap:
    """Detection output: the response plane plus peak location data.

    ``peak_cell`` is the integer argmax; ``offset`` the signed, sub-cell
    refined displacement (dy, dx) in cells, with indices past half the grid
    wrapped negative.
    """

    map: np.ndarray
    peak_cell: tuple
    peak_value: float
    offset: tuple


def _wrap_index(p, n):
    return p - n if p > n // 2 else p


def _parabolic_delta(left, center, right):
    # vertex of the parabola through (-1, left), (0, center), (1, right)
    denom = left - 2.0 * center + right
    if abs(denom) < 1e-12 * max(1.0, abs(center)):
        return 0.0
    delta = 0.5 * (left - right) / denom
    return float(np.clip(delta, -0.5, 0.5))


def detect(state, sample, strict=False):
    """Channel-weighted response map for a search sample spectrum.

    R = idft2(sum_d weight_d * w^d * z^d); the peak offset from bin (0, 0)
    is the object's displacement in cells. The filter spectrum already
    carries the training-sample conjugation (w = conj(x) y / den), so the
    cross-correlation conj(x) * z sits inside the plain product.
    """
    sample = np.asarray(sample)
    if sample.shape != state.filters.shape:
        raise ShapeMismatch(f"sample {sample.shape} vs filters {state.filters.shape}")
    combined = (state.filters * sample * state.weights[None, None, :]).sum(axis=2)
    resp = transforms.idft2(combined, strict=strict)
    m, n = resp.shape
    py, px = np.unravel_index(int(np.argmax(resp)), resp.shape)
    peak = float(resp[py, px])
    dy = _parabolic_delta(resp[(py - 1) % m, px], peak, resp[(py + 1) % m, px])
    dx = _parabolic_delta(resp[py, (px - 1) % n], peak, resp[py, (px + 1) % n])
    offset = (_wrap_index(py, m) + dy, _wrap_index(px, n) + dx)
    return ResponseMap(resp, (int(py), int(px)), peak, offset)
