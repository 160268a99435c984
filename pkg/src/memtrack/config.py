"""Tracker configuration: defaults, validation, and the flat key=value file
format used by the CLI.
"""

import dataclasses
from dataclasses import dataclass

from .errors import (GammaOutOfRange, InvalidInput, NonpositiveRegularizer,
                     ParameterConstraintViolation)

_INT_KEYS = {"K", "cell", "scale_count"}
_BOOL_KEYS = {"strict_mode"}


@dataclass
class TrackerConfig:
    lambda1: float = 1e-2        # ridge weight
    lambda2: float = 0.15        # memory-view weight; 0 disables memory training
    lambda3: float = 0.5         # context weight; 0 disables context training
    gamma: float = 0.02          # model learning rate
    eta: float = 0.02            # channel-weight learning rate; 0 freezes weights
    nu: float = 0.95             # ladder peak decay per slot, < 1
    mu: float = 1.05             # ladder spread growth per slot, > 1
    phi: float = 0.7             # anchor label peak factor, < 1
    varphi: float = 1.5          # anchor label spread factor, > 1
    tau: float = 0.5             # admission threshold on hash difference
    K: int = 5                   # memory queue capacity
    cell: int = 4                # feature cell size in pixels
    search_scale: float = 2.0    # search side = search_scale * sqrt(w*h)
    context_scale: float = 2.0   # context side = context_scale * search side
    sigma_factor: float = 0.1    # label spread = sigma_factor * sqrt(cells_w*cells_h)
    scale_count: int = 3         # sizes probed per frame; 1 disables scale search
    scale_step: float = 1.02
    strict_mode: bool = False    # raise on excessive imaginary residue

    def validate(self):
        if not self.nu < 1:
            raise ParameterConstraintViolation(f"nu must be < 1, got {self.nu}")
        if not self.mu > 1:
            raise ParameterConstraintViolation(f"mu must be > 1, got {self.mu}")
        if not self.phi < 1:
            raise ParameterConstraintViolation(f"phi must be < 1, got {self.phi}")
        if not self.varphi > 1:
            raise ParameterConstraintViolation(f"varphi must be > 1, got {self.varphi}")
        if self.nu <= 0 or self.phi <= 0:
            raise ParameterConstraintViolation("nu and phi must be positive")
        if not 0.0 <= self.gamma <= 1.0:
            raise GammaOutOfRange(f"gamma must lie in [0, 1], got {self.gamma}")
        if not 0.0 <= self.eta <= 1.0:
            raise ParameterConstraintViolation(f"eta must lie in [0, 1], got {self.eta}")
        if not 0.0 <= self.tau <= 1.0:
            raise ParameterConstraintViolation(f"tau must lie in [0, 1], got {self.tau}")
        if self.K < 1:
            raise ParameterConstraintViolation(f"K must be >= 1, got {self.K}")
        if self.lambda1 <= 0:
            raise NonpositiveRegularizer(f"lambda1 must be positive, got {self.lambda1}")
        if self.lambda2 < 0 or self.lambda3 < 0:
            raise ParameterConstraintViolation("lambda2 and lambda3 must be >= 0")
        if self.cell < 1:
            raise ParameterConstraintViolation(f"cell must be >= 1, got {self.cell}")
        if self.search_scale < 1:
            raise ParameterConstraintViolation(f"search_scale must be >= 1, got {self.search_scale}")
        if not self.context_scale > 1:
            raise ParameterConstraintViolation(f"context_scale must exceed 1, got {self.context_scale}")
        if self.sigma_factor <= 0:
            raise ParameterConstraintViolation(f"sigma_factor must be positive, got {self.sigma_factor}")
        if self.scale_count < 1:
            raise ParameterConstraintViolation(f"scale_count must be >= 1, got {self.scale_count}")
        if not self.scale_step > 1:
            raise ParameterConstraintViolation(f"scale_step must exceed 1, got {self.scale_step}")
        return self

    def replace(self, **kwargs):
        return dataclasses.replace(self, **kwargs)


_VALID_KEYS = {f.name for f in dataclasses.fields(TrackerConfig)}


def _parse_value(key, raw, lineno):
    try:
        if key in _BOOL_KEYS:
            low = raw.lower()
            if low in ("true", "1", "yes", "on"):
                return True
            if low in ("false", "0", "no", "off"):
                return False
            raise ValueError(raw)
        if key in _INT_KEYS:
            return int(raw)
        return float(raw)
    except ValueError:
        raise InvalidInput(f"line {lineno}: cannot parse value {raw!r} for key {key!r}") from None


def parse_config(text, base=None):
    """Parse flat ``key = value`` lines; '#' starts a comment."""
    overrides = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise InvalidInput(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _VALID_KEYS:
            raise InvalidInput(f"line {lineno}: unknown config key {key!r}")
        overrides[key] = _parse_value(key, raw, lineno)
    cfg = (base or TrackerConfig()).replace(**overrides)
    return cfg.validate()


def load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read config file {path}: {exc}") from exc
    return parse_config(text)
