"""View memory: permanent first-frame anchor, FIFO queue of admitted views,
hash-gated admission, and the graded desired-response ladder.

The queue holds at most ``capacity`` views besides the anchor. Training
labels form a ladder: the current frame gets the sharpest, tallest
Gaussian; queue slots get progressively lower peaks and wider spreads the
older they are; the anchor has its own fixed label.
"""

from dataclasses import dataclass, field

import numpy as np

from . import transforms
from .errors import ParameterConstraintViolation
from .phash import difference_score


@dataclass
class StoredView:
    """One remembered object appearance: windowed features plus its hash."""

    features: np.ndarray            # (m, n, d), cosine-windowed
    hash_bits: np.ndarray           # (8, 8) uint8
    frame_index: int
    spectrum: np.ndarray | None = None  # cached dft2(features)


@dataclass
class MemoryQueue:
    """Anchor view plus an oldest-first FIFO of at most ``capacity`` views."""

    anchor: StoredView
    capacity: int
    views: list = field(default_factory=list)

    def __len__(self):
        return len(self.views)


@dataclass
class AdmissionResult:
    admitted: bool
    evicted: StoredView | None = None


def _wrapped_offsets(n):
    idx = np.arange(n)
    return np.where(idx <= n // 2, idx, idx - n)


def gaussian_label(m, n, sigma, peak):
    """Gaussian desired-response map with its peak wrapped to index (0, 0)."""
    if sigma <= 0 or peak <= 0:
        raise ParameterConstraintViolation(f"need sigma > 0 and peak > 0, got {sigma}, {peak}")
    du = _wrapped_offsets(m)[:, None].astype(np.float64)
    dv = _wrapped_offsets(n)[None, :].astype(np.float64)
    return peak * np.exp(-(du * du + dv * dv) / (2.0 * sigma * sigma))


@dataclass
class ResponseLadder:
    """Desired responses for the current frame, the K queue slots, and the anchor.

    Slot k in 1..K has peak nu**(K-k+1) * peak_c and spread mu**(K-k+1) *
    sigma_c, so the newest slot (k=K) sits just below the current frame's
    label and older slots fall off geometrically. Slot 0 is the anchor label
    (peak phi * peak_c, spread varphi * sigma_c).
    """

    capacity: int
    sigma_c: float
    peak_c: float
    current: np.ndarray
    slots: list                 # index 0 -> anchor label, k -> queue slot k
    slot_peaks: np.ndarray      # aligned with ``slots``
    slot_sigmas: np.ndarray
    current_spectrum: np.ndarray = None
    slot_spectra: list = None

    def label(self, slot):
        return self.slots[slot]

    def label_spectrum(self, slot):
        return self.slot_spectra[slot]


def build_ladder(sigma_c, peak_c, capacity, nu, mu, phi, varphi, shape):
    """Construct the label ladder for a queue of ``capacity`` slots."""
    if not nu < 1:
        raise ParameterConstraintViolation(f"nu must be < 1, got {nu}")
    if not mu > 1:
        raise ParameterConstraintViolation(f"mu must be > 1, got {mu}")
    if not phi < 1:
        raise ParameterConstraintViolation(f"phi must be < 1, got {phi}")
    if not varphi > 1:
        raise ParameterConstraintViolation(f"varphi must be > 1, got {varphi}")
    if capacity < 1:
        raise ParameterConstraintViolation(f"capacity must be >= 1, got {capacity}")
    m, n = shape
    current = gaussian_label(m, n, sigma_c, peak_c)
    peaks = np.empty(capacity + 1)
    sigmas = np.empty(capacity + 1)
    peaks[0] = phi * peak_c
    sigmas[0] = varphi * sigma_c
    for k in range(1, capacity + 1):
        peaks[k] = nu ** (capacity - k + 1) * peak_c
        sigmas[k] = mu ** (capacity - k + 1) * sigma_c
    slots = [gaussian_label(m, n, sigmas[k], peaks[k]) for k in range(capacity + 1)]
    ladder = ResponseLadder(capacity, sigma_c, peak_c, current, slots, peaks, sigmas)
    ladder.current_spectrum = transforms.dft2(current)
    ladder.slot_spectra = [transforms.dft2(y) for y in slots]
    return ladder


def maybe_admit(queue, features, hash_bits, tau, *, frame_index=0, spectrum=None):
    """Admit the candidate iff its hash differs from the last stored view.

    The comparison target is the most recently admitted view, or the anchor
    while the queue is empty; admission requires score > tau strictly. A full
    queue evicts its oldest view.
    """
    last = queue.views[-1] if queue.views else queue.anchor
    score = difference_score(hash_bits, last.hash_bits)
    if score <= tau:
        return AdmissionResult(False)
    evicted = None
    if len(queue.views) >= queue.capacity:
        evicted = queue.views.pop(0)
    queue.views.append(StoredView(features, hash_bits, frame_index, spectrum))
    return AdmissionResult(True, evicted)


def training_views(queue, ladder):
    """Pairs of (stored view, ladder slot) used in this frame's training.

    The anchor always pairs with slot 0. The L queued views take the top L
    slots so the newest view always gets slot K; with L=2 and K=5 the views
    land on slots 4 and 5.
    """
    pairs = [(queue.anchor, 0)]
    count = len(queue.views)
    first_slot = ladder.capacity - count + 1
    for i, view in enumerate(queue.views):
        pairs.append((view, first_slot + i))
    return pairs
