import math

import numpy as np
import pytest

from cstex import InvalidOrder, InvalidSigma, complex_dog_kernel, gaussian_kernel
from cstex.kernels import gamma_transfer, sample_complex_dog


def test_gaussian_unit_sum():
    k = gaussian_kernel(4.0, 16)
    assert abs(k.expand().real.sum() - 1.0) < 1e-12


def test_gaussian_even_symmetry():
    k = gaussian_kernel(1.5, 6).expand().real
    assert np.abs(k - k[::-1, ::-1]).max() == 0.0


def test_gaussian_center_tap_matches_direct_sampling():
    # Oracle: evaluate the 2-D Gaussian formula on the 33x33 grid and
    # renormalize; frozen value from that computation.
    sigma, radius = 4.0, 16
    t = np.arange(-radius, radius + 1, dtype=float)
    xx, yy = np.meshgrid(t, t)
    direct = np.exp(-(xx**2 + yy**2) / (2 * sigma**2)) / (2 * math.pi * sigma**2)
    expected = direct[radius, radius] / direct.sum()
    assert abs(expected - 0.0099478879752519945) < 1e-15
    center = gaussian_kernel(sigma, radius).expand().real[radius, radius]
    assert abs(center - expected) < 1e-15


def test_gaussian_rejects_bad_args():
    with pytest.raises(InvalidSigma):
        gaussian_kernel(0.0, 4)
    with pytest.raises(ValueError):
        gaussian_kernel(1.0, 0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dog_vanishes_at_origin(n):
    k = complex_dog_kernel(n, 1.0, 4).expand()
    assert k[4, 4] == 0.0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dog_parity(n):
    k = complex_dog_kernel(n, 1.2, 5).expand()
    assert np.abs(k - (-1.0) ** n * k[::-1, ::-1]).max() < 1e-15


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("sigma", [0.6, 1.5, 4.0])
def test_separability_matches_direct_sampling(n, sigma):
    radius = max(1, math.ceil(4.0 * sigma))
    kern = complex_dog_kernel(n, sigma, radius)
    direct = sample_complex_dog(n, sigma, radius)
    assert np.abs(kern.expand() - direct).max() < 1e-12


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("sigma", [0.6, 1.5, 4.0])
def test_zero_dc(n, sigma):
    radius = max(1, math.ceil(4.0 * sigma))
    k = complex_dog_kernel(n, sigma, radius).expand()
    assert abs(k.sum()) < 1e-12


def test_zero_dc_guard_for_order_four():
    # n divisible by 4 leaves a genuine truncation residue; the appended
    # correction term must cancel it without touching the other taps much.
    k = complex_dog_kernel(4, 0.8, 4)
    assert abs(k.expand().sum()) < 1e-12
    assert len(k.terms) == 6  # 5 binomial terms + constant correction


def test_transfer_function_matches_analytic_low_band():
    # Oracle: FFT the sampled kernel on a zero-padded 64x64 grid and
    # compare against i(wx + i wy) exp(-sigma^2 |w|^2 / 2) inside the
    # band |w| < 1/(2 sigma).
    sigma, radius, size = 2.0, 8, 64
    k = complex_dog_kernel(1, sigma, radius).expand()
    pad = np.zeros((size, size), dtype=complex)
    for yy in range(2 * radius + 1):
        for xx in range(2 * radius + 1):
            pad[(yy - radius) % size, (xx - radius) % size] = k[yy, xx]
    dft = np.fft.fft2(pad)

    w = 2 * math.pi * np.fft.fftfreq(size)
    wy, wx = w[:, None], w[None, :]
    analytic = gamma_transfer(1, sigma, wx, wy)
    band = (np.hypot(wx, wy) < 1 / (2 * sigma)) & ((wx != 0) | (wy != 0))
    rel = np.abs(dft - analytic)[band] / np.abs(analytic)[band]
    assert band.sum() > 10
    assert rel.max() < 1e-3

    # response along the wx axis is purely imaginary and odd
    axis = dft[0, 1:size // 2]
    assert np.abs(axis.real).max() < 1e-12 * np.abs(axis.imag).max()
    mirrored = dft[0, -1:-(size // 2):-1]
    assert np.abs(axis + mirrored).max() < 1e-12 * np.abs(axis.imag).max()


def test_bandpass_center_scales_inversely_with_sigma():
    size = 256

    def peak_bin(sigma):
        radius = max(1, math.ceil(4 * sigma))
        k = complex_dog_kernel(1, sigma, radius).expand()
        pad = np.zeros((size, size), dtype=complex)
        for yy in range(2 * radius + 1):
            for xx in range(2 * radius + 1):
                pad[(yy - radius) % size, (xx - radius) % size] = k[yy, xx]
        mag = np.abs(np.fft.fft2(pad)[0, :size // 2])
        return int(np.argmax(mag))

    b1, b2 = peak_bin(1.0), peak_bin(2.0)
    assert abs(b2 - b1 / 2) <= 1.0


def test_dog_rejects_bad_args():
    with pytest.raises(InvalidOrder):
        complex_dog_kernel(0, 1.0, 4)
    with pytest.raises(InvalidSigma):
        complex_dog_kernel(1, -1.0, 4)


def test_tiny_sigma_still_yields_three_taps():
    k = complex_dog_kernel(1, 0.2, 1)
    assert k.expand().shape == (3, 3)


def test_conjugated_kernel_flips_imaginary_part():
    k = complex_dog_kernel(1, 1.0, 4)
    flipped = k.conjugated().expand()
    orig = k.expand()
    assert np.abs(flipped - orig.conj()).max() == 0.0
