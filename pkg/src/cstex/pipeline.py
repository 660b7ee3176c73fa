"""The three-step orientation extraction pipeline.

For symmetry order n and scales (sigma1, sigma2):

1. convolve the image with the n-th complex derivative-of-Gaussian
   kernel at sigma1, giving a complex response r;
2. double the angle of every pixel while raising its magnitude to
   gamma:  r_a = |r|^gamma exp(2i angle(r)),  r_b = |r|^gamma;
3. pool both strands with a Gaussian at sigma2, giving the complex
   moment field I_{2n,0} and its real upper bound I_{n,n}.

Angle doubling makes the representation invariant under rotating the
pattern by pi, so opposite gradients reinforce rather than cancel; the
pooled pair then measures how strongly the neighborhood concentrates on
n evenly spaced orientation axes (its magnitude reaches the bound
exactly for a pure n-folded pattern).  gamma < 1 compresses the contrast
differences between faint and strong texture, gamma = 2 recovers the
classic squaring r^2 and with it the gradient structure tensor.
"""

from __future__ import annotations

import numpy as np

from .convolve import convolve_separable
from .core import CstFeatureMap, CstParams, as_scalar_field, validate_params
from .errors import InvalidGamma, InvalidOrder
from .kernels import SeparableKernel, complex_dog_kernel, gaussian_kernel

# Below this magnitude a response carries no usable angle; treat as zero
# certainty instead of amplifying denormal noise through |r|^gamma.
_ZERO_MAG = 1e-300


def complex_power_step(r, gamma: float) -> tuple[np.ndarray, np.ndarray]:
    """Angle-doubling nonlinearity with magnitude emphasis.

    Returns (r_a, r_b) with r_a = |r|^gamma exp(2i angle(r)) and
    r_b = |r|^gamma.  Pixels with |r| below 1e-300 map to exactly zero in
    both outputs: a vanishing response has undefined angle and zero
    certainty.
    """
    if gamma < 0:
        raise InvalidGamma(f"gamma must be >= 0, got {gamma}")
    r = np.asarray(r, dtype=np.complex128)
    mag = np.abs(r)
    live = mag > _ZERO_MAG

    r_b = np.zeros(r.shape, dtype=np.float64)
    r_b[live] = mag[live] ** gamma

    unit = np.zeros(r.shape, dtype=np.complex128)
    unit[live] = r[live] / mag[live]
    r_a = r_b * unit * unit

    if not (np.all(np.isfinite(r_b)) and np.all(np.isfinite(r_a.real))
            and np.all(np.isfinite(r_a.imag))):
        raise ValueError("power step produced non-finite values")
    return r_a, r_b


def cst_order(f, n: int, p: CstParams) -> CstFeatureMap:
    """Run the three-step pipeline for one symmetry order."""
    validate_params(p)
    if n not in p.orders:
        raise InvalidOrder(f"order {n} is not in params.orders {p.orders}")
    f = as_scalar_field(f)
    deriv = complex_dog_kernel(n, p.sigma1, p.radius1)
    pool = gaussian_kernel(p.sigma2, p.radius2)
    return _run_order(f, n, p, deriv, pool)


def _run_order(f: np.ndarray, n: int, p: CstParams,
               deriv: SeparableKernel, pool: SeparableKernel) -> CstFeatureMap:
    r = convolve_separable(f, deriv, p.boundary)
    r_a, r_b = complex_power_step(r, p.gamma)
    i2n0 = convolve_separable(r_a, pool, p.boundary)
    inn = convolve_separable(r_b, pool, p.boundary)
    return CstFeatureMap(order=n, i2n0=i2n0, inn=inn, params=p)


def cst_extract(f, p: CstParams) -> list[CstFeatureMap]:
    """One CstFeatureMap per order in ``p.orders`` (pooling kernel shared)."""
    validate_params(p)
    f = as_scalar_field(f)
    pool = gaussian_kernel(p.sigma2, p.radius2)
    maps = []
    for n in sorted(p.orders):
        deriv = complex_dog_kernel(n, p.sigma1, p.radius1)
        maps.append(_run_order(f, n, p, deriv, pool))
    return maps
