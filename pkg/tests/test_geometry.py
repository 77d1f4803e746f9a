import math

import numpy as np
import pytest

from curved_wigner.geometry import (
    Units,
    ads2_metric,
    custom_metric,
    flat_metric,
    identity_map,
    lambda_factor,
    linear_map,
    pull_back_metric,
    sinh_map,
    tan_map,
    volume_element,
)


def test_units():
    u = Units()
    assert u.h == pytest.approx(2 * math.pi)
    assert Units(hbar=2.0).h == pytest.approx(4 * math.pi)
    with pytest.raises(ValueError):
        Units(hbar=0.0)
    with pytest.raises(ValueError):
        Units(planck_length=-1.0)


def test_flat_and_ads2_metrics():
    assert flat_metric()(3.0) == 1.0
    assert np.all(flat_metric()(np.zeros(4)) == 1.0)
    m = ads2_metric(2.0)
    assert m(0.0) == 1.0
    assert m(2.0) == pytest.approx(0.5)
    assert m.params == {"R": 2.0}
    assert volume_element(m, 2.0) == pytest.approx(math.sqrt(0.5))
    assert lambda_factor(m, 2.0) == pytest.approx(0.5**0.25)
    with pytest.raises(ValueError):
        ads2_metric(0.0)


def test_ads2_metric_far_out_is_finite():
    assert ads2_metric(1.0)(1e200) == 0.0


def test_custom_metric():
    m = custom_metric(lambda x: 1 + np.asarray(x) ** 2, "bump", c=1)
    assert m(1.0) == 2.0
    assert m.params == {"c": 1}


def test_maps_and_derivatives():
    y = np.linspace(-1.2, 1.2, 9)
    for d in (identity_map(), linear_map(2.0, 0.5), sinh_map(1.5), tan_map(1.0)):
        num = (d(y + 1e-6) - d(y - 1e-6)) / 2e-6
        np.testing.assert_allclose(d.jacobian(y), num, rtol=1e-7)
    with pytest.raises(ValueError):
        linear_map(-1.0)
    assert tan_map(2.0).domain == pytest.approx((-math.pi, math.pi))


def test_compose():
    c = sinh_map(1.0).compose(linear_map(2.0))
    y = np.array([0.1, 0.7])
    np.testing.assert_allclose(c(y), np.sinh(2 * y))
    np.testing.assert_allclose(c.jacobian(y), 2 * np.cosh(2 * y))


def test_pull_back_preserves_proper_length():
    # proper length int sqrt(g) dx over [0, 1] equals the y-integral over the preimage
    from scipy.integrate import quad

    m = ads2_metric(1.0)
    d = sinh_map(1.0)
    mp_ = pull_back_metric(m, d)
    lx = quad(lambda x: math.sqrt(m(x)), 0.0, 1.0)[0]
    ly = quad(lambda y: math.sqrt(mp_(y)), 0.0, math.asinh(1.0))[0]
    assert ly == pytest.approx(lx, rel=1e-12)
    # AdS2 in the sinh chart is flat
    assert mp_(np.array([0.3, 2.0])) == pytest.approx([1.0, 1.0])
    assert mp_.params["chart"] == d.label
