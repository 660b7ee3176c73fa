"""Self-validation suite: oracle equivalence and pipeline invariants.

Each check is a pure function returning a CheckResult; ``run_checks``
collects them so both the CLI and the test suite can execute the same
battery.  ``flip_kernel_sign`` conjugates the derivative kernel before
the double-angle sweep, a deliberate fault injection that must make that
check fail (it exists to prove the sweep actually constrains the sign
convention).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circstats import angle_diff_deg, circular_median_deg
from .convolve import convolve_dense, convolve_separable
from .core import CstParams, interior, interior_margin
from .kernels import complex_dog_kernel, gaussian_kernel, sample_complex_dog
from .oracle import st_gradient_oracle
from .pipeline import complex_power_step, cst_order
from .synth import WaveSpec, crossed_waves, planar_wave, white_noise


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name=name, passed=bool(passed), detail=detail)


def check_noise_bound(seeds=(1, 2, 3), size=128, orders=(1, 2, 3)) -> CheckResult:
    """|I_{2n,0}| <= I_{n,n} + 1e-9 max(I_{n,n}) pointwise on seeded noise."""
    params = CstParams(orders=tuple(orders))
    worst = -np.inf
    for seed in seeds:
        f = white_noise(size, size, seed)
        for n in params.orders:
            m = cst_order(f, n, params)
            eps = 1e-9 * float(m.inn.max())
            worst = max(worst, float((np.abs(m.i2n0) - m.inn - eps).max()))
    return _result("noise-bound", worst <= 0,
                   f"worst bound excess {worst:.3e} (must be <= 0)")


def check_oracle_gradient_st(size=64) -> CheckResult:
    """Pipeline at gamma=2 vs. eigen-decomposed structure tensor, 3 input classes."""
    params = CstParams(gamma=2.0)
    margin = interior_margin(params)
    inputs = {
        "wave": planar_wave(WaveSpec(wavelength=8.0, theta_deg=30.0), size, size),
        "crossed": crossed_waves(
            [WaveSpec(wavelength=8.0, theta_deg=0.0),
             WaveSpec(wavelength=8.0, theta_deg=90.0)], size, size),
        "noise": white_noise(size, size, 42),
    }
    worst = 0.0
    for f in inputs.values():
        pipe = cst_order(f, 1, params)
        orac = st_gradient_oracle(f, params)
        for a, b in ((pipe.i2n0, orac.i2n0), (pipe.inn, orac.inn)):
            ai, bi = interior(a, margin), interior(b, margin)
            scale = float(np.abs(bi).max())
            worst = max(worst, float(np.abs(ai - bi).max()) / scale)
    return _result("oracle-gradient-st", worst < 1e-6,
                   f"max relative error {worst:.3e} (tol 1e-6)")


def check_double_angle(flip_kernel_sign=False, size=128) -> CheckResult:
    """Interior circular median of angle(I_20) equals 2 theta within 1 degree."""
    params = CstParams()
    pool = gaussian_kernel(params.sigma2, params.radius2)
    deriv = complex_dog_kernel(1, params.sigma1, params.radius1)
    if flip_kernel_sign:
        deriv = deriv.conjugated()
    margin = interior_margin(params)

    worst = 0.0
    for theta in (0.0, 15.0, 30.0, 45.0, 60.0, 90.0, 120.0):
        f = planar_wave(WaveSpec(wavelength=8.0, theta_deg=theta), size, size)
        r = convolve_separable(f, deriv, params.boundary)
        r_a, _ = complex_power_step(r, params.gamma)
        i20 = convolve_separable(r_a, pool, params.boundary)
        angles = np.degrees(np.angle(interior(i20, margin))) % 360.0
        med = circular_median_deg(angles.ravel())
        err = abs(float(angle_diff_deg(med, 2.0 * theta)))
        worst = max(worst, err)
    return _result("double-angle", worst < 1.0,
                   f"worst median angle error {worst:.3f} deg (tol 1 deg)")


def check_folded_selectivity(size=128) -> CheckResult:
    """Crossed 0/90 waves: order 1 stays quiet, order 2 saturates."""
    params = CstParams(orders=(1, 2))
    margin = interior_margin(params)
    f = crossed_waves(
        [WaveSpec(wavelength=8.0, theta_deg=0.0),
         WaveSpec(wavelength=8.0, theta_deg=90.0)], size, size)

    m1 = cst_order(f, 1, params)
    m2 = cst_order(f, 2, params)
    with np.errstate(invalid="ignore"):
        ratio1 = float(np.median(
            np.abs(interior(m1.i2n0, margin)) / interior(m1.inn, margin)))
        ratio2 = float(np.median(
            np.abs(interior(m2.i2n0, margin)) / interior(m2.inn, margin)))
    ok = ratio1 <= 0.2 and ratio2 >= 0.9
    return _result("folded-selectivity", ok,
                   f"median |I20|/I11 {ratio1:.3f} (<= 0.2), "
                   f"|I40|/I22 {ratio2:.3f} (>= 0.9)")


def check_kernel_structure() -> CheckResult:
    """Separability, zero DC, unit Gaussian sum, separable vs dense convolution."""
    problems = []
    for n in (1, 2, 3):
        for sigma in (0.6, 1.5, 4.0):
            radius = max(1, int(np.ceil(4.0 * sigma)))
            kern = complex_dog_kernel(n, sigma, radius)
            direct = sample_complex_dog(n, sigma, radius)
            gap = float(np.abs(kern.expand() - direct).max())
            if gap > 1e-12:
                problems.append(f"separability n={n} sigma={sigma}: {gap:.2e}")
            dc = abs(complex(kern.expand().sum()))
            if dc > 1e-12:
                problems.append(f"dc n={n} sigma={sigma}: {dc:.2e}")
    gsum = float(gaussian_kernel(4.0, 16).expand().real.sum())
    if abs(gsum - 1.0) > 1e-12:
        problems.append(f"gaussian sum {gsum!r}")

    f = white_noise(32, 32, 7)
    kern = complex_dog_kernel(1, 0.6, 3)
    sep = convolve_separable(f, kern, "reflect")
    dense = convolve_dense(f, kern.expand(), "reflect")
    gap = float(np.abs(sep - dense).max())
    if gap > 1e-10:
        problems.append(f"separable vs dense: {gap:.2e}")

    return _result("kernel-structure", not problems,
                   "; ".join(problems) if problems else "all structural bounds met")


def run_checks(quick: bool = False, flip_kernel_sign: bool = False) -> list[CheckResult]:
    """Run the validation battery; ``quick`` runs the noise-bound check only."""
    if quick:
        return [check_noise_bound()]
    return [
        check_kernel_structure(),
        check_noise_bound(),
        check_oracle_gradient_st(),
        check_double_angle(flip_kernel_sign=flip_kernel_sign),
        check_folded_selectivity(),
    ]
