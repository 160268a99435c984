"""Per-frame tracking loop: detect, localize, optional scale probe, sample,
admit to memory, retrain.

The filter grid is fixed at initialization from the first box: a square
search region of side search_scale * sqrt(w*h) (clamped to the frame),
divided into cell-sized feature cells. Later frames sample a region scaled
with the current box area and resample it back to the base grid, so one
grid cell always corresponds to cell * scale pixels.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import filters, memory, transforms
from .config import TrackerConfig
from .context import compressed_context_features
from .errors import InvalidInput
from .features import apply_window, compute_features, cosine_window
from .imaging import BBox, extract_patch, to_gray
from .phash import hash_view

_HASH_CROP = 32
_MIN_BOX_PX = 4.0
# Peak weight for scale probes, per step away from the current size. Scale
# responses at neighboring sizes differ by only a few percent, so without
# hysteresis the box size random-walks; a true size change accumulates
# template mismatch until an off-scale probe clears the damping anyway.
_SCALE_DAMPING = 0.9


@dataclass
class TrackState:
    config: TrackerConfig
    bbox: BBox
    filter: filters.FilterState
    memory: memory.MemoryQueue
    ladder: memory.ResponseLadder
    window: np.ndarray
    frame_index: int
    base_side: int          # search-region pixels at scale 1, multiple of cell
    base_area: float        # first-frame w * h, defines the scale reference


def _scale_of(state, box):
    return math.sqrt(box.w * box.h / state.base_area)


def _sample_spectrum(state, gray, center, side):
    """Windowed feature spectrum of the square patch at ``center``."""
    patch = extract_patch(gray, BBox(center[0], center[1], side, side),
                          state.base_side, state.base_side)
    fmap = apply_window(compute_features(patch, state.config.cell), state.window)
    return transforms.dft2(fmap), fmap


def init(frame, groundtruth, config):
    """Build the tracking state from the first frame and its object box."""
    config.validate()
    gray = to_gray(frame)
    h, w = gray.shape
    box = groundtruth
    if not (0 <= box.cx <= w - 1 and 0 <= box.cy <= h - 1):
        raise InvalidInput(f"box center ({box.cx}, {box.cy}) outside {w}x{h} frame")
    cell = config.cell

    side = config.search_scale * math.sqrt(box.w * box.h)
    side = min(side, float(min(w, h)))
    base_side = max(cell * 4, int(round(side / cell)) * cell)
    cells = base_side // cell
    window = cosine_window(cells, cells)

    sigma_c = math.sqrt((box.w / cell) * (box.h / cell)) * config.sigma_factor
    ladder = memory.build_ladder(sigma_c, 1.0, config.K, config.nu, config.mu,
                                 config.phi, config.varphi, (cells, cells))

    state = TrackState(config=config, bbox=box, filter=None,
                       memory=None, ladder=ladder, window=window,
                       frame_index=0, base_side=base_side,
                       base_area=box.w * box.h)

    spectrum, fmap = _sample_spectrum(state, gray, (box.cx, box.cy), base_side)
    crop = extract_patch(gray, box, _HASH_CROP, _HASH_CROP)
    anchor = memory.StoredView(fmap, hash_view(crop), 0, spectrum)
    state.memory = memory.MemoryQueue(anchor, config.K)

    context_spec = None
    if config.lambda3 > 0:
        context_spec = transforms.dft2(compressed_context_features(
            gray, box, base_side, config.context_scale, cell, window))
    terms = filters.train_terms(spectrum, ladder.current_spectrum, [],
                                context_spec, config.lambda2)
    state.filter = filters.FilterState.from_terms(
        terms, config.lambda1, config.lambda2, config.lambda3,
        config.gamma, config.eta)
    return state


def _clamp_center(cx, cy, shape):
    h, w = shape
    return min(max(cx, 0.0), w - 1.0), min(max(cy, 0.0), h - 1.0)


def _training_pairs(state):
    pairs = []
    for view, slot in memory.training_views(state.memory, state.ladder):
        pairs.append((view.spectrum, state.ladder.label_spectrum(slot)))
    return pairs


def step(state, frame):
    """Advance one frame; returns (state, predicted box)."""
    cfg = state.config
    gray = to_gray(frame)
    strict = cfg.strict_mode
    cell = cfg.cell
    box = state.bbox
    scale = _scale_of(state, box)
    side = state.base_side * scale

    # locate: detect at the previous position, move by the peak offset
    spectrum, _ = _sample_spectrum(state, gray, (box.cx, box.cy), side)
    resp = filters.detect(state.filter, spectrum, strict=strict)
    dy, dx = resp.offset
    px_per_cell = cell * scale
    cx, cy = _clamp_center(box.cx + dx * px_per_cell, box.cy + dy * px_per_cell,
                           gray.shape)
    box = box.moved_to(cx, cy)

    # scale probe: re-detect at a few region sizes, keep the strongest
    # damped peak
    if cfg.scale_count > 1:
        offsets = range(-(cfg.scale_count // 2),
                        cfg.scale_count - cfg.scale_count // 2)
        best_factor, best_peak = 1.0, -math.inf
        for i in offsets:
            factor = cfg.scale_step ** i
            probe, _ = _sample_spectrum(state, gray, (cx, cy), side * factor)
            peak = filters.detect(state.filter, probe, strict=strict).peak_value
            peak *= _SCALE_DAMPING ** abs(i)
            if peak > best_peak:
                best_factor, best_peak = factor, peak
        if best_factor != 1.0:
            limit = 2.0 * min(gray.shape)
            new_w = min(max(box.w * best_factor, _MIN_BOX_PX), limit)
            new_h = min(max(box.h * best_factor, _MIN_BOX_PX), limit)
            box = BBox(box.cx, box.cy, new_w, new_h)
            scale = _scale_of(state, box)
            side = state.base_side * scale

    # sample the new position for training
    xc_spectrum, xc_fmap = _sample_spectrum(state, gray, (box.cx, box.cy), side)
    context_spec = None
    if cfg.lambda3 > 0:
        context_spec = transforms.dft2(compressed_context_features(
            gray, box, side, cfg.context_scale, cell, state.window))

    # memory admission against the last stored appearance
    crop = extract_patch(gray, box, _HASH_CROP, _HASH_CROP)
    memory.maybe_admit(state.memory, xc_fmap, hash_view(crop), cfg.tau,
                       frame_index=state.frame_index + 1, spectrum=xc_spectrum)

    # retrain with the queue contents, then refresh channel reliabilities
    terms = filters.train_terms(xc_spectrum, state.ladder.current_spectrum,
                                _training_pairs(state), context_spec, cfg.lambda2)
    filters.update_state(state.filter, terms)
    filters.update_channel_weights(state.filter, xc_spectrum)

    state.bbox = box
    state.frame_index += 1
    return state, box
