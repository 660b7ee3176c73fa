"""Orientation maps rendered as HSV color images.

Hue encodes the doubled orientation angle (0 degrees maps to red),
saturation the pooled energy I_{n,n}, and value the moment magnitude
|I_{2n,0}|.  Vivid pixels therefore mark confident orientation
estimates; magnitude far below its bound desaturates and darkens.
"""

from __future__ import annotations

import numpy as np

from .core import CstFeatureMap, interior, interior_margin


def hsv_to_rgb(h: np.ndarray, s: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Standard hexcone HSV -> RGB for arrays in [0, 1]; returns (..., 3) floats."""
    h6 = (h % 1.0) * 6.0
    sector = np.floor(h6).astype(int) % 6
    f = h6 - np.floor(h6)
    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))

    r = np.choose(sector, [v, q, p, p, t, v])
    g = np.choose(sector, [t, v, v, q, p, p])
    b = np.choose(sector, [p, p, t, v, v, q])
    return np.stack([r, g, b], axis=-1)


def _percentile_scale(field: np.ndarray, margin: int, percentile: float) -> np.ndarray:
    ref = float(np.percentile(interior(field, margin), percentile))
    if ref <= 0:
        return np.zeros_like(field)
    return np.clip(field / ref, 0.0, 1.0)


def render_hsv(m: CstFeatureMap, percentile: float = 99.0) -> np.ndarray:
    """Render a feature map to an 8-bit RGB image (H, W, 3).

    Saturation and value are scaled by the interior percentile (99th by
    default) rather than the maximum, so isolated hot pixels do not crush
    the display; both are then clamped to [0, 1].  A constant input has
    zero magnitude everywhere and renders black.
    """
    margin = interior_margin(m.params)
    hue = (np.angle(m.i2n0) / (2.0 * np.pi)) % 1.0
    sat = _percentile_scale(m.inn, margin, percentile)
    val = _percentile_scale(np.abs(m.i2n0), margin, percentile)
    rgb = hsv_to_rgb(hue, sat, val)
    return np.round(rgb * 255.0).astype(np.uint8)
