"""Field containers, pipeline parameters, and shared validation.

Conventions used throughout the package:

* Fields are 2-D numpy arrays in row-major order with the origin at the
  top-left corner, x increasing rightward (columns) and y increasing
  downward (rows).  Angles are measured in this frame, so a texture
  orientation of +30 degrees tilts toward increasing row indices.
* All internal arithmetic is 64-bit (float64 / complex128).  Export may
  downcast, the pipeline never does.
* Every public operation preserves field dimensions and never emits
  NaN/Inf for finite input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidGamma, InvalidOrder, InvalidSigma, ShapeMismatch

BOUNDARY_POLICIES = ("reflect", "replicate", "zero")


def as_scalar_field(data) -> np.ndarray:
    """Coerce ``data`` to a finite 2-D float64 array.

    Raises ShapeMismatch for non-2-D or empty input and ValueError if any
    value is NaN or infinite.
    """
    arr = np.asarray(data, dtype=np.float64)
    _check_field_shape(arr)
    if not np.all(np.isfinite(arr)):
        raise ValueError("scalar field contains non-finite values")
    return arr


def as_complex_field(data) -> np.ndarray:
    """Coerce ``data`` to a finite 2-D complex128 array."""
    arr = np.asarray(data, dtype=np.complex128)
    _check_field_shape(arr)
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError("complex field contains non-finite values")
    return arr


def _check_field_shape(arr: np.ndarray) -> None:
    if arr.ndim != 2:
        raise ShapeMismatch(f"expected a 2-D field, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeMismatch(f"field dimensions must be >= 1, got {arr.shape}")


@dataclass(frozen=True)
class CstParams:
    """Configuration of the orientation-extraction pipeline.

    sigma1 is the derivation scale (selects the frequency band of the
    complex derivative filter), sigma2 the pooling scale (neighborhood
    size of the orientation average), gamma the exponent applied to
    response magnitudes before pooling.  ``orders`` lists the n-folded
    symmetry orders to compute; n = 1 is plain linear symmetry.
    """

    sigma1: float = 0.6
    sigma2: float = 4.0
    gamma: float = 0.1
    orders: tuple[int, ...] = (1,)
    boundary: str = "reflect"
    truncation_factor: float = 4.0

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(self.orders))

    @property
    def radius1(self) -> int:
        return kernel_radius(self.sigma1, self.truncation_factor)

    @property
    def radius2(self) -> int:
        return kernel_radius(self.sigma2, self.truncation_factor)


def kernel_radius(sigma: float, truncation_factor: float = 4.0) -> int:
    """Truncation radius ceil(truncation_factor * sigma), at least 1.

    For very small sigma the resulting 3-tap profile carries a visible
    discretization error; this is accepted rather than rejected because
    the near-Nyquist regime (sigma around 0.6) is the intended operating
    point for high-frequency texture.
    """
    if sigma <= 0:
        raise InvalidSigma(f"sigma must be > 0, got {sigma}")
    if truncation_factor <= 0:
        raise ValueError(f"truncation_factor must be > 0, got {truncation_factor}")
    return max(1, math.ceil(truncation_factor * sigma))


def validate_params(p: CstParams) -> None:
    """Raise if any CstParams invariant is violated."""
    if p.sigma1 <= 0:
        raise InvalidSigma(f"sigma1 must be > 0, got {p.sigma1}")
    if p.sigma2 <= 0:
        raise InvalidSigma(f"sigma2 must be > 0, got {p.sigma2}")
    if p.gamma < 0:
        raise InvalidGamma(f"gamma must be >= 0, got {p.gamma}")
    if len(p.orders) == 0:
        raise InvalidOrder("orders must be a nonempty set of integers >= 1")
    for n in p.orders:
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise InvalidOrder(f"every order must be an integer >= 1, got {n!r}")
    if len(set(p.orders)) != len(p.orders):
        raise InvalidOrder(f"orders must be unique, got {p.orders}")
    if p.boundary not in BOUNDARY_POLICIES:
        raise ValueError(
            f"boundary must be one of {BOUNDARY_POLICIES}, got {p.boundary!r}"
        )
    if p.truncation_factor <= 0:
        raise ValueError(
            f"truncation_factor must be > 0, got {p.truncation_factor}"
        )


def interior_margin(p: CstParams) -> int:
    """Border width affected by boundary handling: radius1 + radius2.

    Statistical assertions on pipeline outputs should exclude this band.
    """
    return p.radius1 + p.radius2


def interior(arr: np.ndarray, margin: int) -> np.ndarray:
    """View of ``arr`` with ``margin`` pixels stripped from every edge.

    Falls back to the full array when the margin would leave nothing.
    """
    if margin <= 0:
        return arr
    h, w = arr.shape[:2]
    if 2 * margin >= h or 2 * margin >= w:
        return arr
    return arr[margin:h - margin, margin:w - margin]


@dataclass(frozen=True)
class CstFeatureMap:
    """Per-order output bundle: complex moment field and its energy bound.

    ``i2n0`` is the pooled double-angle response (orientation certainty in
    magnitude, 2n-fold orientation in phase); ``inn`` is the pooled
    magnitude field, a pointwise upper bound on ``abs(i2n0)``.
    """

    order: int
    i2n0: np.ndarray
    inn: np.ndarray
    params: CstParams

    def __post_init__(self):
        i2n0 = as_complex_field(self.i2n0)
        inn = as_scalar_field(self.inn)
        if i2n0.shape != inn.shape:
            raise ShapeMismatch(
                f"i2n0 shape {i2n0.shape} != inn shape {inn.shape}"
            )
        if self.order < 1:
            raise InvalidOrder(f"feature map order must be >= 1, got {self.order}")
        if np.any(inn < 0):
            raise ValueError("inn must be nonnegative everywhere")
        eps = 1e-9 * float(inn.max(initial=0.0))
        if np.any(np.abs(i2n0) > inn + eps):
            worst = float(np.max(np.abs(i2n0) - inn))
            raise ValueError(
                f"|i2n0| exceeds inn by {worst:g}, violating the certainty bound"
            )
        object.__setattr__(self, "i2n0", i2n0)
        object.__setattr__(self, "inn", inn)

    @property
    def shape(self) -> tuple[int, int]:
        return self.inn.shape


@dataclass(frozen=True)
class ChannelStack:
    """Ordered multi-channel tensor with one label per channel.

    ``data`` is laid out channel-first (C, H, W); labels are unique and
    drawn from BW, RE(n), IM(n), MAG(n), ANG(n), I11(n).
    """

    labels: tuple[str, ...]
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 3:
            raise ShapeMismatch(f"stack data must be (C, H, W), got {data.shape}")
        if data.shape[0] != len(labels):
            raise ShapeMismatch(
                f"{len(labels)} labels but {data.shape[0]} channels"
            )
        if len(set(labels)) != len(labels):
            raise ValueError(f"channel labels must be unique, got {labels}")
        if not np.all(np.isfinite(data)):
            raise ValueError("channel stack contains non-finite values")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "data", data)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(zip(self.labels, self.data))

    def channel(self, label: str) -> np.ndarray:
        return self.data[self.labels.index(label)]
