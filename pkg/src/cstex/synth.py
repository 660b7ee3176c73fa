"""Synthetic test patterns: planar waves, crossing patterns, white noise.

Planar waves are the canonical linearly symmetric texture; sums of waves
at n distinct orientations produce n-folded patterns.  All generators
are pure functions of their arguments; the noise generator uses a fixed
splitmix64 mixing function so any implementation reproduces the exact
same field bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InvalidWave

_SM64_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SM64_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_SM64_MUL2 = np.uint64(0x94D049BB133111EB)


@dataclass(frozen=True)
class WaveSpec:
    """One planar cosine wave: amplitude, wavelength in pixels, direction.

    ``theta_deg`` is the wave's propagation direction (normal of the
    stripes) in the image frame, degrees; ``phase`` is in radians.
    """

    wavelength: float
    theta_deg: float = 0.0
    amplitude: float = 1.0
    phase: float = 0.0

    def __post_init__(self):
        if self.wavelength <= 2:
            raise InvalidWave(
                f"wavelength must be > 2 px (Nyquist), got {self.wavelength}"
            )
        if self.amplitude <= 0:
            raise InvalidWave(f"amplitude must be > 0, got {self.amplitude}")


def planar_wave(spec: WaveSpec, width: int, height: int) -> np.ndarray:
    """f(x, y) = A cos((2 pi / wavelength)(x cos th + y sin th) + phase)."""
    theta = math.radians(spec.theta_deg)
    k = 2.0 * math.pi / spec.wavelength
    x = np.arange(width, dtype=np.float64)
    y = np.arange(height, dtype=np.float64)
    xx, yy = np.meshgrid(x, y)
    return spec.amplitude * np.cos(k * (xx * math.cos(theta) + yy * math.sin(theta)) + spec.phase)


def crossed_waves(specs: Iterable[WaveSpec], width: int, height: int) -> np.ndarray:
    """Pointwise sum of planar waves; n distinct orientations give an n-folded pattern."""
    specs = tuple(specs)
    if not specs:
        raise InvalidWave("crossed_waves requires at least one wave")
    out = np.zeros((height, width), dtype=np.float64)
    for spec in specs:
        out += planar_wave(spec, width, height)
    return out


def _splitmix64(x: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer, vectorized over uint64 arrays."""
    x = (x ^ (x >> np.uint64(30))) * _SM64_MUL1
    x = (x ^ (x >> np.uint64(27))) * _SM64_MUL2
    return x ^ (x >> np.uint64(31))


def white_noise(width: int, height: int, seed: int = 0) -> np.ndarray:
    """Deterministic uniform noise in [0, 1), row-major from the seed.

    Pixel k (row-major) takes the value of the (k+1)-th splitmix64 output
    for the given seed: mix(seed + (k+1) * 0x9E3779B97F4A7C15), with the
    top 53 bits mapped to [0, 1).  Arithmetic is modulo 2^64.
    """
    if width < 1 or height < 1:
        raise ValueError(f"size must be >= 1x1, got {width}x{height}")
    n = width * height
    idx = np.arange(1, n + 1, dtype=np.uint64)
    state = np.uint64(seed % (1 << 64)) + idx * _SM64_GAMMA
    bits = _splitmix64(state)
    vals = (bits >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)
    return vals.reshape(height, width)
