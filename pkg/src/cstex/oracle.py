"""Brute-force reference computations for validating the pipeline.

Two independent routes to the same quantities:

* ``st_gradient_oracle`` builds the classic real structure tensor from
  gradient outer products, pools its three elements, eigen-decomposes it
  per pixel with LAPACK, and maps the eigensystem to the complex pair
  ((lambda1 - lambda2) exp(2i angle(u1)), lambda1 + lambda2).  At
  gamma = 2 the pipeline computes the same thing through complex
  squaring, so the two must agree to floating-point accuracy.

* ``dft_moment_oracle`` evaluates complex moments of a windowed discrete
  power spectrum directly:  sum over frequency bins of
  (wx + i wy)^p (wx - i wy)^q |F|^2, the spectral definition the spatial
  pipeline is a shortcut for.

Both are intentionally slow and used only by tests and the validation
suite.  The gradient oracle reuses the pipeline's own derivative filter:
that isolates the algebraic identity (complex squaring equals tensor
outer product) from discretization choices, which is what makes the
tight tolerance possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .convolve import convolve_separable
from .core import CstFeatureMap, CstParams, as_scalar_field, validate_params
from .errors import WindowTooLarge
from .kernels import complex_dog_kernel, gaussian_kernel


@dataclass(frozen=True)
class StDecomposition:
    """Pixelwise eigensystem of the pooled 2x2 structure tensor.

    lambda1 >= lambda2 >= 0 everywhere; u1_angle is the dominant
    orientation in radians, reduced to [0, pi).
    """

    lambda1: np.ndarray
    lambda2: np.ndarray
    u1_angle: np.ndarray


def structure_tensor_eig(j11, j12, j22) -> StDecomposition:
    """Eigen-decompose the symmetric tensor [[j11, j12], [j12, j22]] per pixel.

    Uses a dense LAPACK eigensolver on the stacked (H, W, 2, 2) array;
    tiny negative eigenvalues from rounding are clipped to zero.
    """
    j11 = np.asarray(j11, dtype=np.float64)
    j12 = np.asarray(j12, dtype=np.float64)
    j22 = np.asarray(j22, dtype=np.float64)
    tensors = np.empty(j11.shape + (2, 2), dtype=np.float64)
    tensors[..., 0, 0] = j11
    tensors[..., 0, 1] = j12
    tensors[..., 1, 0] = j12
    tensors[..., 1, 1] = j22

    evals, evecs = np.linalg.eigh(tensors)  # ascending eigenvalues
    lambda2 = np.maximum(evals[..., 0], 0.0)
    lambda1 = np.maximum(evals[..., 1], 0.0)
    u1 = evecs[..., :, 1]
    angle = np.arctan2(u1[..., 1], u1[..., 0]) % math.pi
    return StDecomposition(lambda1=lambda1, lambda2=lambda2, u1_angle=angle)


def st_gradient_oracle(f, p: CstParams) -> CstFeatureMap:
    """Order-1 feature map via the real structure tensor route (gamma = 2).

    Gradient from the order-1 complex derivative filter (real part = d/dx,
    imaginary part = d/dy), tensor products pooled at sigma2, per-pixel
    eigen-decomposition, then the double-angle mapping.  Must match
    ``cst_order`` at gamma = 2.
    """
    validate_params(p)
    f = as_scalar_field(f)
    deriv = complex_dog_kernel(1, p.sigma1, p.radius1)
    pool = gaussian_kernel(p.sigma2, p.radius2)

    r = convolve_separable(f, deriv, p.boundary)
    gx = r.real
    gy = r.imag
    j11 = convolve_separable(gx * gx, pool, p.boundary)
    j12 = convolve_separable(gx * gy, pool, p.boundary)
    j22 = convolve_separable(gy * gy, pool, p.boundary)

    dec = structure_tensor_eig(j11, j12, j22)
    i20 = (dec.lambda1 - dec.lambda2) * np.exp(2j * dec.u1_angle)
    i11 = dec.lambda1 + dec.lambda2
    oracle_params = replace(p, gamma=2.0, orders=(1,))
    return CstFeatureMap(order=1, i2n0=i20, inn=i11, params=oracle_params)


def _next_pow2(n: int) -> int:
    return 1 << (n - 1).bit_length()


def dft_moment_oracle(f, center: tuple[int, int], window_sigma: float,
                      p: int, q: int) -> complex:
    """Complex moment of the local power spectrum around ``center``.

    The image is windowed by a Gaussian of scale ``window_sigma`` on a
    patch of radius ceil(4 * window_sigma) around center = (x, y), the
    patch is zero-padded to a power-of-two grid, and the moment

        sum over bins of (wx + i wy)^p (wx - i wy)^q |F(wx, wy)|^2

    is evaluated with w in [-pi, pi) per axis (bin spacing 2 pi / N).
    The DC bin is excluded: it carries no orientation information and
    the spectral definition this mirrors has no DC mass.
    """
    if p < 0 or q < 0:
        raise ValueError(f"moment orders must be >= 0, got p={p}, q={q}")
    if window_sigma <= 0:
        raise ValueError(f"window_sigma must be > 0, got {window_sigma}")
    f = as_scalar_field(f)
    h, w = f.shape
    cx, cy = center
    radius = math.ceil(4.0 * window_sigma)
    if not (radius <= cx < w - radius and radius <= cy < h - radius):
        raise WindowTooLarge(
            f"window radius {radius} around ({cx}, {cy}) exceeds image {w}x{h}"
        )

    t = np.arange(-radius, radius + 1, dtype=np.float64)
    win1d = np.exp(-(t * t) / (2.0 * window_sigma * window_sigma))
    patch = f[cy - radius:cy + radius + 1, cx - radius:cx + radius + 1]
    windowed = patch * np.outer(win1d, win1d)

    size = _next_pow2(2 * radius + 1)
    padded = np.zeros((size, size), dtype=np.float64)
    padded[: windowed.shape[0], : windowed.shape[1]] = windowed

    spectrum = np.fft.fft2(padded)
    power = np.abs(spectrum) ** 2
    power[0, 0] = 0.0  # DC excluded

    omega = 2.0 * math.pi * np.fft.fftfreq(size)
    wy = omega[:, None]
    wx = omega[None, :]
    zp = (wx + 1j * wy) ** p
    zq = (wx - 1j * wy) ** q
    return complex(np.sum(zp * zq * power))
