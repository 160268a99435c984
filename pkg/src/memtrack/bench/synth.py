"""Deterministic synthetic sequences for desk-scale benchmarking.

A spec describes frame size, a textured object on a cluttered background,
a linear trajectory, optional texture-switch and full-occlusion windows,
and pixel noise. Rendering is fully determined by the seed, so generated
frame files are byte-identical across runs. Ground truth is the exact
trajectory, independent of rendering quantization.
"""

import os
from dataclasses import dataclass, field

import numpy as np
from PIL import Image

from ..errors import InvalidInput
from .sequences import SequenceManifest, write_results


@dataclass
class SynthSpec:
    name: str = "synth"
    frames: int = 100
    width: int = 640
    height: int = 360
    object_w: int = 60
    object_h: int = 60
    start_x: float = None        # defaults keep the whole path inside the frame
    start_y: float = None
    vx: float = 2.0              # pixels per frame
    vy: float = 0.0
    noise: float = 0.02          # per-pixel Gaussian sigma before quantization
    seed: int = 7
    texture_switch: list = field(default_factory=list)   # [(start, end)) uses texture B
    occlusion: list = field(default_factory=list)        # [(start, end)) fully occluded

    def start(self):
        sx = self.start_x if self.start_x is not None else self.object_w
        sy = self.start_y if self.start_y is not None else self.height / 2.0
        return float(sx), float(sy)

    def center_at(self, t):
        sx, sy = self.start()
        return sx + self.vx * t, sy + self.vy * t


def _parse_windows(raw):
    windows = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            a, b = part.split(":")
            windows.append((int(a), int(b)))
        except ValueError:
            raise InvalidInput(f"bad frame window {part!r}, expected start:end") from None
    return windows


_INT_KEYS = {"frames", "width", "height", "object_w", "object_h", "seed"}
_FLOAT_KEYS = {"start_x", "start_y", "vx", "vy", "noise"}
_WINDOW_KEYS = {"texture_switch", "occlusion"}


def parse_synth_spec(text):
    """Parse the flat ``key = value`` spec format (same shape as configs)."""
    spec = SynthSpec()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise InvalidInput(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (p.strip() for p in stripped.split("=", 1))
        if key == "name":
            spec.name = raw
        elif key in _INT_KEYS:
            setattr(spec, key, int(raw))
        elif key in _FLOAT_KEYS:
            setattr(spec, key, float(raw))
        elif key in _WINDOW_KEYS:
            setattr(spec, key, _parse_windows(raw))
        else:
            raise InvalidInput(f"line {lineno}: unknown spec key {key!r}")
    if spec.frames < 1 or spec.width < 8 or spec.height < 8:
        raise InvalidInput("spec needs frames >= 1 and at least an 8x8 frame")
    if spec.object_w < 2 or spec.object_h < 2:
        raise InvalidInput("object must be at least 2x2 pixels")
    return spec


def load_synth_spec(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read spec file {path}: {exc}") from exc
    return parse_synth_spec(text)


def _coarse_texture(rng, h, w, grid, lo=0.0, hi=1.0):
    # random coarse grid upsampled bilinearly: smooth clutter with gradients
    gh, gw = max(2, h // grid + 2), max(2, w // grid + 2)
    coarse = rng.uniform(lo, hi, size=(gh, gw))
    ys = np.linspace(0, gh - 1.0, h)
    xs = np.linspace(0, gw - 1.0, w)
    y0 = np.floor(ys).astype(int)
    x0 = np.floor(xs).astype(int)
    y1 = np.minimum(y0 + 1, gh - 1)
    x1 = np.minimum(x0 + 1, gw - 1)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]
    top = coarse[y0][:, x0] * (1 - fx) + coarse[y0][:, x1] * fx
    bot = coarse[y1][:, x0] * (1 - fx) + coarse[y1][:, x1] * fx
    return top * (1 - fy) + bot * fy


def _stretched(tex, lo, hi):
    span = max(np.ptp(tex), 1e-9)
    return lo + (hi - lo) * (tex - tex.min()) / span


def _occluder_texture(rng, base, h, w):
    # visibly different from both object textures yet correlated with the
    # pre-occlusion appearance, so trackers hold position while occluded
    # instead of jumping to background clutter
    blobs = _coarse_texture(rng, h, w, grid=max(2, min(h, w) // 3))
    mixed = 0.5 + 0.7 * (base - base.mean()) + 0.25 * (blobs - blobs.mean())
    return np.clip(mixed, 0.05, 0.95)


def _paste(frame, tex, cx, cy):
    """Bilinearly place a texture patch centered at sub-pixel (cx, cy)."""
    th, tw = tex.shape
    top = cy - (th - 1) / 2.0
    left = cx - (tw - 1) / 2.0
    h, w = frame.shape
    y_lo = max(0, int(np.ceil(top)))
    y_hi = min(h - 1, int(np.floor(top + th - 1)))
    x_lo = max(0, int(np.ceil(left)))
    x_hi = min(w - 1, int(np.floor(left + tw - 1)))
    if y_hi < y_lo or x_hi < x_lo:
        return
    ty = np.arange(y_lo, y_hi + 1) - top
    tx = np.arange(x_lo, x_hi + 1) - left
    y0 = np.floor(ty).astype(int)
    x0 = np.floor(tx).astype(int)
    fy = (ty - y0)[:, None]
    fx = (tx - x0)[None, :]
    y1 = np.minimum(y0 + 1, th - 1)
    x1 = np.minimum(x0 + 1, tw - 1)
    patch = (tex[y0][:, x0] * (1 - fx) * (1 - fy) + tex[y0][:, x1] * fx * (1 - fy)
             + tex[y1][:, x0] * (1 - fx) * fy + tex[y1][:, x1] * fx * fy)
    frame[y_lo:y_hi + 1, x_lo:x_hi + 1] = patch


def _in_windows(t, windows):
    return any(a <= t < b for a, b in windows)


def render_frames(spec):
    """Yield (uint8 frame, exact center) per frame, deterministically."""
    rng = np.random.default_rng(spec.seed)
    background = _coarse_texture(rng, spec.height, spec.width, grid=24, lo=0.2, hi=0.8)
    # aperiodic object textures: periodic patterns would give the correlation
    # tracker self-similar secondary peaks and make the benchmark unstable
    side = min(spec.object_h, spec.object_w)
    texture_a = _stretched(
        _coarse_texture(rng, spec.object_h, spec.object_w, grid=max(2, side // 6)),
        0.05, 0.95)
    texture_b = 1.0 - _stretched(
        _coarse_texture(rng, spec.object_h, spec.object_w, grid=max(2, side // 3)),
        0.1, 0.9)
    occluded_texture = texture_b if spec.texture_switch else texture_a
    occluder = _occluder_texture(rng, occluded_texture, spec.object_h, spec.object_w)
    for t in range(spec.frames):
        cx, cy = spec.center_at(t)
        frame = background.copy()
        if _in_windows(t, spec.occlusion):
            tex = occluder
        elif _in_windows(t, spec.texture_switch):
            tex = texture_b
        else:
            tex = texture_a
        _paste(frame, tex, cx, cy)
        if spec.noise > 0:
            frame = frame + rng.normal(0.0, spec.noise, size=frame.shape)
        yield (np.clip(frame, 0.0, 1.0) * 255.0).round().astype(np.uint8), (cx, cy)


def groundtruth_boxes(spec):
    """Exact corner-format (1-indexed) ground truth for every frame."""
    boxes = []
    for t in range(spec.frames):
        cx, cy = spec.center_at(t)
        boxes.append((cx - (spec.object_w - 1) / 2.0 + 1.0,
                      cy - (spec.object_h - 1) / 2.0 + 1.0,
                      float(spec.object_w), float(spec.object_h)))
    return boxes


def generate(spec, outdir):
    """Render the sequence to ``outdir`` and return its manifest."""
    os.makedirs(outdir, exist_ok=True)
    frame_paths = []
    for t, (frame, _) in enumerate(render_frames(spec)):
        path = os.path.join(outdir, f"frame_{t + 1:04d}.png")
        Image.fromarray(frame).save(path)
        frame_paths.append(path)
    boxes = groundtruth_boxes(spec)
    write_results(os.path.join(outdir, "groundtruth.txt"), boxes)
    attributes = ["synthetic"]
    attributes += [f"texture_switch:{a}-{b}" for a, b in spec.texture_switch]
    attributes += [f"occlusion:{a}-{b}" for a, b in spec.occlusion]
    with open(os.path.join(outdir, "attributes.txt"), "w", encoding="utf-8") as fh:
        fh.write("\n".join(attributes) + "\n")
    return SequenceManifest(name=spec.name, frames=frame_paths, boxes=boxes,
                            attributes=attributes)
