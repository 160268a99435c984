import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from memtrack.bench import synth


@pytest.fixture(scope="session")
def drift_sequence():
    """Small translating-object sequence shared by tracker-level tests."""
    spec = synth.SynthSpec(frames=60, width=320, height=180, object_w=48,
                           object_h=48, start_x=60, start_y=90, vx=2.0,
                           vy=0.5, noise=0.02, seed=3)
    frames = [f for f, _ in synth.render_frames(spec)]
    return spec, frames, synth.groundtruth_boxes(spec)


@pytest.fixture(scope="session")
def cruise_sequence():
    """640x360 sequence with a textured 60x60 object moving 2 px/frame."""
    spec = synth.SynthSpec(frames=100, width=640, height=360, object_w=60,
                           object_h=60, start_x=80, start_y=180, vx=2.0,
                           vy=0.0, noise=0.02, seed=11)
    frames = [f for f, _ in synth.render_frames(spec)]
    return spec, frames, synth.groundtruth_boxes(spec)


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
