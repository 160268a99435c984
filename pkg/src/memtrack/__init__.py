"""memtrack: a CPU real-time correlation-filter tracker that trains on a
queue of remembered object views, a compressed object-suppressed context
region, and reliability-weighted feature channels, plus a one-pass
benchmark harness.
"""

from .config import TrackerConfig, load_config, parse_config
from .imaging import BBox
from .tracker import TrackState, init, step

__all__ = ["BBox", "TrackState", "TrackerConfig", "init", "load_config",
           "parse_config", "step"]

__version__ = "0.1.0"
