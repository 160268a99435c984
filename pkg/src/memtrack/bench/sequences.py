"""Sequence ingestion and results persistence.

A sequence is a directory holding the frame images (directly or under
``img/``) plus ``groundtruth.txt`` with one ``x,y,w,h`` line per frame
(corner format, 1-indexed pixels, comma- or tab-separated; an all-NaN line
marks an absent target). A ``.json`` manifest file with ``name``,
``frames``, ``groundtruth``/``boxes`` and optional ``attributes`` keys is
accepted as well.
"""

import json
import math
import os
import re
from dataclasses import dataclass, field

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..errors import (FrameUnavailable, InvalidInput, MalformedGroundTruth,
                      MissingFrames)

_IMAGE_EXTS = (".png", ".jpg", ".jpeg")
_SPLIT = re.compile(r"[,\t]")


@dataclass
class SequenceManifest:
    name: str
    frames: list
    boxes: list                      # (x, y, w, h) floats; NaN marks absent target
    attributes: list = field(default_factory=list)

    def __len__(self):
        return len(self.frames)

    def valid_mask(self):
        return [all(math.isfinite(v) for v in b) for b in self.boxes]


def _parse_gt_line(line, lineno):
    parts = [p.strip() for p in _SPLIT.split(line.strip()) if p.strip() != ""]
    if len(parts) == 1:
        parts = line.split()
    if len(parts) != 4:
        raise MalformedGroundTruth(f"line {lineno}: expected 4 fields, got {len(parts)}")
    try:
        vals = tuple(float(p) for p in parts)
    except ValueError:
        raise MalformedGroundTruth(f"line {lineno}: cannot parse {line!r}") from None
    if all(math.isnan(v) for v in vals):
        return (math.nan,) * 4
    if any(math.isnan(v) for v in vals):
        raise MalformedGroundTruth(f"line {lineno}: partially-NaN box {line!r}")
    if vals[2] <= 0 or vals[3] <= 0:
        raise MalformedGroundTruth(f"line {lineno}: non-positive box size {line!r}")
    return vals


def read_groundtruth(path):
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln for ln in (raw.strip() for raw in fh) if ln]
    return [_parse_gt_line(ln, i + 1) for i, ln in enumerate(lines)]


def _frame_files(directory):
    img_dir = os.path.join(directory, "img")
    scan = img_dir if os.path.isdir(img_dir) else directory
    names = sorted(n for n in os.listdir(scan)
                   if n.lower().endswith(_IMAGE_EXTS))
    return [os.path.join(scan, n) for n in names]


def _validate(manifest):
    if len(manifest.frames) == 0:
        raise MissingFrames(f"sequence {manifest.name!r} has no frames")
    missing = [p for p in manifest.frames if not os.path.isfile(p)]
    if missing:
        raise MissingFrames(f"{len(missing)} frame files missing, first: {missing[0]}")
    if len(manifest.boxes) != len(manifest.frames):
        raise MalformedGroundTruth(
            f"{len(manifest.frames)} frames but {len(manifest.boxes)} ground-truth lines")
    if not all(math.isfinite(v) for v in manifest.boxes[0]):
        raise MalformedGroundTruth("first ground-truth box must be valid")
    return manifest


def load_sequence(path):
    """Load a sequence directory or a JSON manifest file."""
    if os.path.isdir(path):
        gt_path = os.path.join(path, "groundtruth.txt")
        if not os.path.isfile(gt_path):
            raise InvalidInput(f"no groundtruth.txt in {path}")
        attrs = []
        attr_path = os.path.join(path, "attributes.txt")
        if os.path.isfile(attr_path):
            with open(attr_path, "r", encoding="utf-8") as fh:
                attrs = [ln.strip() for ln in fh if ln.strip()]
        manifest = SequenceManifest(name=os.path.basename(os.path.normpath(path)),
                                    frames=_frame_files(path),
                                    boxes=read_groundtruth(gt_path),
                                    attributes=attrs)
        return _validate(manifest)
    if os.path.isfile(path) and path.endswith(".json"):
        base = os.path.dirname(os.path.abspath(path))
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        frames = [os.path.join(base, f) for f in data["frames"]]
        if "boxes" in data:
            boxes = [_parse_gt_line(",".join(str(v) for v in b), i + 1)
                     for i, b in enumerate(data["boxes"])]
        else:
            boxes = read_groundtruth(os.path.join(base, data["groundtruth"]))
        manifest = SequenceManifest(name=data.get("name", os.path.basename(base)),
                                    frames=frames, boxes=boxes,
                                    attributes=list(data.get("attributes", [])))
        return _validate(manifest)
    raise InvalidInput(f"{path} is neither a sequence directory nor a .json manifest")


def load_frame(path):
    """Decode one frame file to a uint8 array (gray or RGB)."""
    try:
        with Image.open(path) as img:
            if img.mode not in ("L", "RGB"):
                img = img.convert("RGB")
            return np.asarray(img)
    except (OSError, UnidentifiedImageError) as exc:
        raise FrameUnavailable(f"cannot read frame {path}: {exc}") from exc


def write_results(path, boxes):
    """One ``x,y,w,h`` line per frame, full float precision (lossless)."""
    with open(path, "w", encoding="utf-8") as fh:
        for box in boxes:
            fh.write(",".join(repr(float(v)) for v in box) + "\n")


def read_results(path):
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln for ln in (raw.strip() for raw in fh) if ln]
    return [_parse_gt_line(ln, i + 1) for i, ln in enumerate(lines)]
