"""cstex: dense texture-orientation fields via complex structure tensors.

Computes, per pixel and per symmetry order n, the complex moment pair
(I_{2n,0}, I_{n,n}) of the local power spectrum through a three-step
separable filtering pipeline, and ships the oracles, synthetic patterns,
visualization, and export machinery around it.
"""

from .channels import DEFAULT_PRESET, PRESETS, assemble, resolve_labels
from .checks import run_checks
from .circstats import angle_diff_deg, circular_mean_deg, circular_median_deg
from .convolve import convolve_dense, convolve_separable
from .core import (
    ChannelStack,
    CstFeatureMap,
    CstParams,
    as_complex_field,
    as_scalar_field,
    interior,
    interior_margin,
    kernel_radius,
    validate_params,
)
from .errors import (
    CstError,
    DecodeError,
    InvalidGamma,
    InvalidOrder,
    InvalidSigma,
    InvalidWave,
    KernelTooLarge,
    MissingOrder,
    ShapeMismatch,
    UnknownLabel,
    UnsupportedFormat,
    WindowTooLarge,
)
from .io import load_gray, write_pgm, write_png, write_tensor
from .kernels import SeparableKernel, complex_dog_kernel, gaussian_kernel
from .oracle import StDecomposition, dft_moment_oracle, st_gradient_oracle, structure_tensor_eig
from .pipeline import complex_power_step, cst_extract, cst_order
from .synth import WaveSpec, crossed_waves, planar_wave, white_noise
from .viz import hsv_to_rgb, render_hsv

__version__ = "0.1.0"

__all__ = [
    "ChannelStack",
    "CstError",
    "CstFeatureMap",
    "CstParams",
    "DEFAULT_PRESET",
    "DecodeError",
    "InvalidGamma",
    "InvalidOrder",
    "InvalidSigma",
    "InvalidWave",
    "KernelTooLarge",
    "MissingOrder",
    "PRESETS",
    "SeparableKernel",
    "ShapeMismatch",
    "StDecomposition",
    "UnknownLabel",
    "UnsupportedFormat",
    "WaveSpec",
    "WindowTooLarge",
    "angle_diff_deg",
    "as_complex_field",
    "as_scalar_field",
    "assemble",
    "circular_mean_deg",
    "circular_median_deg",
    "complex_dog_kernel",
    "complex_power_step",
    "convolve_dense",
    "convolve_separable",
    "crossed_waves",
    "cst_extract",
    "cst_order",
    "dft_moment_oracle",
    "gaussian_kernel",
    "hsv_to_rgb",
    "interior",
    "interior_margin",
    "kernel_radius",
    "load_gray",
    "planar_wave",
    "render_hsv",
    "resolve_labels",
    "run_checks",
    "st_gradient_oracle",
    "structure_tensor_eig",
    "validate_params",
    "white_noise",
    "write_pgm",
    "write_png",
    "write_tensor",
]
