import numpy as np
import pytest

from cstex import (
    ChannelStack,
    CstFeatureMap,
    CstParams,
    InvalidGamma,
    InvalidOrder,
    InvalidSigma,
    ShapeMismatch,
    as_complex_field,
    as_scalar_field,
    interior,
    interior_margin,
    kernel_radius,
    validate_params,
)


def test_default_params_are_valid():
    p = CstParams(sigma1=0.6, sigma2=4.0, gamma=0.1, orders=(1,))
    validate_params(p)  # must not raise


def test_zero_sigma_rejected():
    with pytest.raises(InvalidSigma):
        validate_params(CstParams(sigma1=0.0))
    with pytest.raises(InvalidSigma):
        validate_params(CstParams(sigma2=-1.0))


def test_empty_orders_rejected():
    with pytest.raises(InvalidOrder):
        validate_params(CstParams(orders=()))


def test_bad_orders_rejected():
    with pytest.raises(InvalidOrder):
        validate_params(CstParams(orders=(0,)))
    with pytest.raises(InvalidOrder):
        validate_params(CstParams(orders=(1, 1)))


def test_negative_gamma_rejected():
    with pytest.raises(InvalidGamma):
        validate_params(CstParams(gamma=-0.1))


def test_bad_boundary_rejected():
    with pytest.raises(ValueError):
        validate_params(CstParams(boundary="wrap"))


def test_kernel_radius():
    assert kernel_radius(0.6) == 3    # ceil(2.4)
    assert kernel_radius(4.0) == 16
    assert kernel_radius(0.2) == 1    # clamped to >= 1
    with pytest.raises(InvalidSigma):
        kernel_radius(0.0)


def test_interior_margin_defaults():
    assert interior_margin(CstParams()) == 3 + 16


def test_interior_slicing():
    a = np.arange(100.0).reshape(10, 10)
    inner = interior(a, 2)
    assert inner.shape == (6, 6)
    assert inner[0, 0] == a[2, 2]
    # margin too large: falls back to the full array
    assert interior(a, 5).shape == (10, 10)


def test_field_coercion_rejects_bad_shapes():
    with pytest.raises(ShapeMismatch):
        as_scalar_field(np.zeros(5))
    with pytest.raises(ShapeMismatch):
        as_complex_field(np.zeros((2, 3, 4)))
    with pytest.raises(ValueError):
        as_scalar_field(np.array([[1.0, np.nan]]))
    with pytest.raises(ValueError):
        as_complex_field(np.array([[1.0 + 1j * np.inf]]))


def test_feature_map_enforces_bound():
    inn = np.ones((4, 4))
    good = CstFeatureMap(order=1, i2n0=0.5 * np.ones((4, 4), complex), inn=inn,
                         params=CstParams())
    assert good.shape == (4, 4)
    with pytest.raises(ValueError):
        CstFeatureMap(order=1, i2n0=2.0 * np.ones((4, 4), complex), inn=inn,
                      params=CstParams())
    with pytest.raises(ValueError):
        CstFeatureMap(order=1, i2n0=np.zeros((4, 4), complex),
                      inn=-np.ones((4, 4)), params=CstParams())
    with pytest.raises(ShapeMismatch):
        CstFeatureMap(order=1, i2n0=np.zeros((4, 4), complex),
                      inn=np.zeros((4, 5)), params=CstParams())


def test_channel_stack_validation():
    data = np.zeros((2, 3, 3))
    stack = ChannelStack(labels=("BW", "I11(1)"), data=data)
    assert len(stack) == 2
    assert stack.channel("BW").shape == (3, 3)
    with pytest.raises(ValueError):
        ChannelStack(labels=("BW", "BW"), data=data)
    with pytest.raises(ShapeMismatch):
        ChannelStack(labels=("BW",), data=data)
