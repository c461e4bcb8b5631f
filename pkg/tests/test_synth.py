import numpy as np
import pytest

from plcsnet.errors import ContractError
from plcsnet.plcs import plcs_pair
from plcsnet.synth import (
    BASES,
    RECOVERY_TARGETS,
    SynthKind,
    SynthSpec,
    base_range,
    generate_pair,
    power_law_gap,
    recovery_table,
    robustness_experiment,
)
from plcsnet.ud import pearson, ud

from oracles import brute_cumulative, tail_slope


@pytest.mark.parametrize("target", RECOVERY_TARGETS)
def test_power_law_gap_recovery(target):
    a, b = generate_pair(SynthSpec(SynthKind.PowerLawGap, gamma_target=target, length=200))
    fit = plcs_pair(a, b)
    assert abs(fit.gamma - target) <= 0.05
    # independent route: brute running sum, exact-rational OLS
    assert fit.gamma == pytest.approx(tail_slope(brute_cumulative(b, a), 10) - 1, abs=1e-8)


def test_gap_running_sum_is_closed_form():
    g, c = 0.5, 2.0
    m = np.cumsum(power_law_gap(g, c, 50))
    j = np.arange(1, 51)
    np.testing.assert_allclose(m, c * j ** 1.5 / 1.5, rtol=1e-12)
    # gaps approach c * i**g
    assert power_law_gap(g, c, 200)[-1] == pytest.approx(c * 200 ** g, rel=2e-3)


@pytest.mark.parametrize("base", BASES)
def test_base_is_immaterial(base):
    for target in (-0.5, 1.0, 2.0):
        a, b = generate_pair(SynthSpec(SynthKind.PowerLawGap, gamma_target=target, base=base))
        assert plcs_pair(a, b).gamma == pytest.approx(target, abs=1e-6)


def test_linear_offset_agreement():
    a, b = generate_pair(SynthSpec(SynthKind.LinearOffset, c=5.0))
    fit = plcs_pair(a, b)
    assert (fit.gamma, fit.beta, ud(a, b, "am")) == (0.0, 0.0, 0.0)


def test_affine_linked():
    a, b = generate_pair(SynthSpec(SynthKind.AffineLinked, affine=(2.0, 3.0), length=20))
    np.testing.assert_array_equal(b, 2 * a + 3)
    assert pearson(a, b) == pytest.approx(1.0)


def test_noisy_linear_reproducible():
    spec = SynthSpec(SynthKind.NoisyLinear, noise_sigma=1.3, seed=42, length=50)
    a1, b1 = generate_pair(spec, trial=3)
    a2, b2 = generate_pair(spec, trial=3)
    assert a1.tobytes() == a2.tobytes() and b1.tobytes() == b2.tobytes()
    assert not np.array_equal(b1, generate_pair(spec, trial=4)[1])
    assert not np.array_equal(b1, generate_pair(SynthSpec(SynthKind.NoisyLinear, noise_sigma=1.3, seed=43, length=50), trial=3)[1])


def test_noisy_linear_zero_sigma_is_offset():
    a, b = generate_pair(SynthSpec(SynthKind.NoisyLinear, noise_sigma=0.0, c=5.0, length=30))
    np.testing.assert_array_equal(b - a, 5.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"kind": "PowerLawGap", "gamma_target": -1.0},
        {"kind": "PowerLawGap", "gamma_target": -2.0},
        {"kind": "LinearOffset", "length": 3},
        {"kind": "LinearOffset", "c": 0.0},
        {"kind": "NoisyLinear", "noise_sigma": -1.0},
        {"kind": "NoisyLinear", "base": "cubic"},
    ],
)
def test_invalid_specs(kwargs):
    with pytest.raises(ContractError):
        SynthSpec(**kwargs)


def test_robustness_zero_noise_row():
    rows = robustness_experiment([0.0, 1.0], trials=10)
    assert rows[0].mean_gamma == 0.0 and rows[0].mean_abs_gamma == 0.0
    assert rows[0].mean_ud == 0.0


def test_robustness_trend_and_moderate_noise():
    base = SynthSpec(SynthKind.NoisyLinear, length=30, seed=0)
    span = base_range(base)
    fractions = [0.0, 0.01, 0.02, 0.05, 0.1, 0.2]
    rows = robustness_experiment([f * span for f in fractions], 100, base)
    uds = [r.mean_ud for r in rows]
    assert all(x < y for x, y in zip(uds, uds[1:]))
    moderate = rows[fractions.index(0.05)]
    assert moderate.mean_abs_gamma < 0.2
    assert moderate.mean_ud > 0.05


def test_robustness_is_reproducible():
    r1 = robustness_experiment([0.0, 0.5, 2.0], 12)
    r2 = robustness_experiment([0.0, 0.5, 2.0], 12)
    assert r1 == r2


@pytest.mark.parametrize("sigmas,trials", [([0.0, 1.0], 9), ([1.0, 0.5], 10), ([-1.0], 10), ([], 10)])
def test_robustness_validation(sigmas, trials):
    with pytest.raises(ContractError):
        robustness_experiment(sigmas, trials)


def test_recovery_table_rows():
    rows = recovery_table()
    assert [r.gamma_target for r in rows] == list(RECOVERY_TARGETS)
    assert all(r.abs_error <= 0.05 and r.tail_points == 10 for r in rows)
