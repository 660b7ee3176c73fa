"""Same-size 2-D convolution of fields by separable kernels.

Convolution here is true convolution (kernel flipped), matching the
analytic filter definitions: convolving with a sampled derivative kernel
yields the derivative of the smoothed field with the expected sign.  The
separable path runs one pair of 1-D passes per rank-one term and
accumulates terms in their listed order, so results are deterministic
and bit-identical across runs and worker counts.

``convolve_dense`` is an independent direct implementation against the
expanded 2-D kernel, kept deliberately free of the separable machinery
so the two routes cross-check each other.
"""

from __future__ import annotations

import numpy as np
from scipy.ndimage import convolve1d

from .errors import KernelTooLarge, ShapeMismatch
from .kernels import SeparableKernel

# Spec policy -> scipy.ndimage mode.  "reflect" mirrors about the edge
# without repeating the edge sample, which is scipy's "mirror".
_SCIPY_MODES = {
    "reflect": "mirror",
    "replicate": "nearest",
    "zero": "constant",
}

# Spec policy -> numpy.pad mode (np.pad "reflect" does not repeat the edge).
_PAD_MODES = {
    "reflect": "reflect",
    "replicate": "edge",
    "zero": "constant",
}


def _check_input(arr: np.ndarray, radius: int) -> None:
    if arr.ndim != 2:
        raise ShapeMismatch(f"expected a 2-D field, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeMismatch(f"field dimensions must be >= 1, got {arr.shape}")
    if radius >= min(arr.shape):
        raise KernelTooLarge(
            f"kernel radius {radius} must be < min(field dims) {min(arr.shape)}"
        )


def convolve_separable(field, kernel: SeparableKernel, boundary: str = "reflect") -> np.ndarray:
    """Convolve ``field`` with a separable kernel under a boundary policy.

    Output has the input's shape.  The dtype is complex128 when either
    the field or any kernel coefficient is complex, float64 otherwise.
    """
    if boundary not in _SCIPY_MODES:
        raise ValueError(f"unknown boundary policy {boundary!r}")
    mode = _SCIPY_MODES[boundary]

    arr = np.asarray(field)
    if np.iscomplexobj(arr):
        arr = arr.astype(np.complex128, copy=False)
    else:
        arr = arr.astype(np.float64, copy=False)
    _check_input(arr, kernel.radius)

    complex_out = np.iscomplexobj(arr) or kernel.is_complex
    out = np.zeros(arr.shape, dtype=np.complex128 if complex_out else np.float64)
    for coeff, horiz, vert in kernel.terms:
        part = convolve1d(arr, horiz, axis=1, mode=mode, cval=0.0)
        part = convolve1d(part, vert, axis=0, mode=mode, cval=0.0)
        if complex_out:
            out += complex(coeff) * part
        else:
            out += complex(coeff).real * part
    return out


def convolve_dense(field, kernel_2d: np.ndarray, boundary: str = "reflect") -> np.ndarray:
    """Direct same-size convolution with a dense (2r+1, 2r+1) kernel.

    Reference implementation: pads the field per the boundary policy and
    accumulates one shifted slice per kernel tap.  Slow but structurally
    independent of the separable path.
    """
    if boundary not in _PAD_MODES:
        raise ValueError(f"unknown boundary policy {boundary!r}")
    kmat = np.asarray(kernel_2d)
    if kmat.ndim != 2 or kmat.shape[0] != kmat.shape[1] or kmat.shape[0] % 2 != 1:
        raise ShapeMismatch(f"kernel must be odd square, got {kmat.shape}")
    radius = kmat.shape[0] // 2

    arr = np.asarray(field)
    if np.iscomplexobj(arr):
        arr = arr.astype(np.complex128, copy=False)
    else:
        arr = arr.astype(np.float64, copy=False)
    _check_input(arr, radius)

    pad_mode = _PAD_MODES[boundary]
    padded = np.pad(arr, radius, mode=pad_mode)

    h, w = arr.shape
    out_dtype = np.complex128 if (np.iscomplexobj(arr) or np.iscomplexobj(kmat)) else np.float64
    out = np.zeros((h, w), dtype=out_dtype)
    # (f * K)[i, j] = sum_{a,b} K[a, b] f[i - a, j - b] with a, b in -r..r
    for a in range(-radius, radius + 1):
        for b in range(-radius, radius + 1):
            tap = kmat[a + radius, b + radius]
            if tap == 0:
                continue
            out += tap * padded[radius - a:radius - a + h, radius - b:radius - b + w]
    return out
