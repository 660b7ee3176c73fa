import numpy as np
import pytest

from cstex import (
    KernelTooLarge,
    ShapeMismatch,
    complex_dog_kernel,
    convolve_dense,
    convolve_separable,
    gaussian_kernel,
    white_noise,
)

BOUNDARIES = ("reflect", "replicate", "zero")


def test_constant_image_maps_to_zero():
    f = np.full((32, 32), 3.7)
    for n in (1, 2, 3):
        out = convolve_separable(f, complex_dog_kernel(n, 0.6, 3), "reflect")
        assert np.abs(out).max() < 1e-12


def test_impulse_response_is_the_kernel():
    kern = complex_dog_kernel(1, 1.0, 4)
    f = np.zeros((21, 21))
    f[10, 10] = 1.0
    out = convolve_separable(f, kern, "reflect")
    assert np.abs(out[6:15, 6:15] - kern.expand()).max() < 1e-12
    # all other pixels stay zero
    mask = np.ones_like(f, dtype=bool)
    mask[6:15, 6:15] = False
    assert np.abs(out[mask]).max() == 0.0


@pytest.mark.parametrize("boundary", BOUNDARIES)
def test_separable_matches_dense_reference(boundary):
    f = white_noise(32, 32, 11)
    kern = complex_dog_kernel(1, 0.6, 3)
    sep = convolve_separable(f, kern, boundary)
    dense = convolve_dense(f, kern.expand(), boundary)
    assert np.abs(sep - dense).max() < 1e-10


def test_separable_matches_dense_for_gaussian_and_higher_orders():
    f = white_noise(24, 24, 3)
    for kern in (gaussian_kernel(1.5, 6), complex_dog_kernel(2, 1.0, 4),
                 complex_dog_kernel(3, 0.8, 4)):
        sep = convolve_separable(f, kern, "reflect")
        dense = convolve_dense(f, kern.expand(), "reflect")
        assert np.abs(sep - dense).max() < 1e-10


def test_linearity():
    kern = complex_dog_kernel(1, 0.6, 3)
    f = white_noise(32, 32, 1)
    g = white_noise(32, 32, 2)
    lhs = convolve_separable(2.5 * f - 1.25 * g, kern, "reflect")
    rhs = 2.5 * convolve_separable(f, kern, "reflect") \
        - 1.25 * convolve_separable(g, kern, "reflect")
    assert np.abs(lhs - rhs).max() < 1e-10


def test_shift_covariance_in_the_interior():
    radius = 3
    kern = complex_dog_kernel(1, 0.6, radius)
    f = white_noise(40, 40, 5)
    shifted = np.roll(f, 1, axis=1)
    out = convolve_separable(f, kern, "reflect")
    out_shifted = convolve_separable(shifted, kern, "reflect")
    m = radius + 1
    lhs = out_shifted[m:-m, m + 1:-m]
    rhs = out[m:-m, m:-m - 1]
    assert np.array_equal(lhs, rhs)


def test_boundary_policies_agree_in_the_interior():
    radius = 3
    kern = complex_dog_kernel(1, 0.6, radius)
    f = white_noise(32, 32, 9)
    outs = [convolve_separable(f, kern, b)[radius:-radius, radius:-radius]
            for b in BOUNDARIES]
    assert np.array_equal(outs[0], outs[1])
    assert np.array_equal(outs[0], outs[2])


def test_complex_input_supported():
    f = white_noise(16, 16, 1) + 1j * white_noise(16, 16, 2)
    g = gaussian_kernel(1.0, 4)
    out = convolve_separable(f, g, "reflect")
    ref_r = convolve_separable(f.real, g, "reflect")
    ref_i = convolve_separable(f.imag, g, "reflect")
    assert np.abs(out - (ref_r + 1j * ref_i)).max() < 1e-12


def test_real_gaussian_on_real_field_stays_real():
    out = convolve_separable(white_noise(8, 8, 1), gaussian_kernel(1.0, 3), "reflect")
    assert out.dtype == np.float64


def test_kernel_too_large():
    with pytest.raises(KernelTooLarge):
        convolve_separable(np.zeros((5, 5)), gaussian_kernel(2.0, 5), "reflect")


def test_rejects_non_2d_fields():
    with pytest.raises(ShapeMismatch):
        convolve_separable(np.zeros(16), gaussian_kernel(1.0, 2), "reflect")


def test_unknown_boundary_rejected():
    with pytest.raises(ValueError):
        convolve_separable(np.zeros((8, 8)), gaussian_kernel(1.0, 2), "wrap")


def test_deterministic_across_runs():
    f = white_noise(32, 32, 13)
    kern = complex_dog_kernel(2, 0.6, 3)
    a = convolve_separable(f, kern, "reflect")
    b = convolve_separable(f, kern, "reflect")
    assert np.array_equal(a, b)
