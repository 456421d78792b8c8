"""Sampling determinism, closed-form references, and the three identity checks.

The subset-sum oracle is a literal itertools.combinations enumeration; the
vectorized power-sum path must match it to near machine precision on every
sampled configuration.
"""

import itertools
import math

import numpy as np
import pytest

from gammahodge.poisson_mc import (
    ConfigurationTooLarge,
    LocalFunctional,
    Polynomial,
    QuadratureError,
    ScalarFunction,
    TailBoundError,
    Window,
    _sample_blocks,
    _subset_sums,
    check_laplace,
    check_local_expansion,
    check_mecke,
    gauss_legendre_box,
    integral_of_power,
    report_from_json,
    report_to_json,
    run_check,
    sample_configuration,
)

WINDOW = Window(lengths=(1.0, 2.0))
INDICATOR = ScalarFunction(kind="indicator")
CONST = Polynomial(coeffs=(1.0,))
LINEAR = Polynomial(coeffs=(0.0, 1.0))


def subset_sum_oracle(m, g_vals, phi_vals, total, coeffs):
    acc = 0.0
    for idx in itertools.combinations(range(len(g_vals)), m):
        prod, rest = 1.0, total
        for i in idx:
            prod *= g_vals[i]
            rest -= phi_vals[i]
        acc += prod * (coeffs[0] + coeffs[1] * rest + coeffs[2] * rest * rest)
    return acc


# ---------------------------------------------------------------------------
# windows and sampling

def test_window_validation_and_volume():
    assert WINDOW.volume == 2.0
    assert WINDOW.dim == 2
    with pytest.raises(ValueError):
        Window(lengths=())
    with pytest.raises(ValueError):
        Window(lengths=(1.0, -2.0))
    with pytest.raises(ValueError):
        Window.from_json({"dim": 3, "lengths": [1.0, 2.0]})


def test_sampling_is_deterministic():
    a = sample_configuration(WINDOW, seed=42, index=7)
    b = sample_configuration(WINDOW, seed=42, index=7)
    assert a == b
    assert sample_configuration(WINDOW, seed=43, index=7) != a


def test_single_configuration_matches_batch():
    counts, ids, pts = _sample_blocks(WINDOW, 42, 50)
    for index in (0, 3, 49):
        config = sample_configuration(WINDOW, 42, index)
        assert len(config) == counts[index]
        assert np.array_equal(np.asarray(config.points).reshape(-1, 2), pts[ids == index])


def test_points_stay_inside_the_window():
    counts, _, pts = _sample_blocks(WINDOW, 9, 2000)
    assert pts.shape[1] == 2
    assert np.all(pts >= 0.0)
    assert np.all(pts <= np.array(WINDOW.lengths))


def test_count_moments_in_three_sigma_bands():
    big = Window(lengths=(2.0, 2.0))
    counts, _, _ = _sample_blocks(big, 123, 100_000)
    n = counts.size
    vol = big.volume
    mean = counts.mean()
    assert abs(mean - vol) <= 3 * math.sqrt(vol / n)
    var = counts.var(ddof=1)
    # Var(sample variance) ~ (mu4 - sigma^4)/n with mu4 = lam + 3 lam^2
    mu4 = vol + 3 * vol * vol
    assert abs(var - vol) <= 3 * math.sqrt((mu4 - vol * vol) / n)


# ---------------------------------------------------------------------------
# quadrature

def test_quadrature_constant_and_gaussian():
    val = gauss_legendre_box(lambda p: np.full(len(p), 2.5), (0.0, 0.0), (1.0, 2.0))
    assert val == pytest.approx(5.0, rel=1e-12)
    # 1-d gaussian with known error function value
    g = gauss_legendre_box(
        lambda p: np.exp(-p[:, 0] ** 2), (0.0,), (1.0,)
    )
    assert g == pytest.approx(math.sqrt(math.pi) / 2 * math.erf(1.0), rel=1e-10)


def test_quadrature_rejects_non_smooth_integrand():
    with pytest.raises(QuadratureError):
        gauss_legendre_box(lambda p: (p[:, 0] > 1 / 3).astype(float), (0.0,), (1.0,))


def test_integral_short_circuit_for_box_kind():
    phi = ScalarFunction(kind="box", lo=(0.0, 0.5), hi=(0.8, 1.7), scale=0.7)
    assert integral_of_power(phi, WINDOW, 1) == pytest.approx(0.7 * 0.8 * 1.2, rel=1e-12)
    assert integral_of_power(phi, WINDOW, 2) == pytest.approx(0.49 * 0.96, rel=1e-12)


def test_reference_mismatch_is_an_invariant_violation():
    from gammahodge.poisson_mc import ReferenceMismatchError, _verified

    assert _verified(1.0 + 1e-13, 1.0, "near") == 1.0
    assert _verified(0.5, None, "no closed form") == 0.5
    with pytest.raises(ReferenceMismatchError):
        _verified(1.001, 1.0, "off")


# ---------------------------------------------------------------------------
# check_laplace

def test_laplace_constant_step():
    f = ScalarFunction(kind="indicator", scale=0.3)
    report = check_laplace(f, WINDOW, 20_000, 42)
    assert report.reference == pytest.approx(math.exp(2 * (math.exp(0.3) - 1)), rel=1e-12)
    assert abs(report.estimate - report.reference) <= 4 * report.std_error


def test_laplace_zero_function_is_exact():
    f = ScalarFunction(kind="indicator", scale=0.0)
    report = check_laplace(f, WINDOW, 500, 7)
    assert report.estimate == 1.0
    assert report.reference == 1.0
    assert report.rel_error == 0.0


def test_laplace_negative_step():
    f = ScalarFunction(kind="indicator", scale=-1.0)
    report = check_laplace(f, WINDOW, 20_000, 5)
    assert report.reference == pytest.approx(math.exp(2 * (math.exp(-1.0) - 1)), rel=1e-12)
    assert abs(report.estimate - report.reference) <= 4 * report.std_error


def test_laplace_is_bitwise_deterministic():
    f = ScalarFunction(kind="gaussian", center=(0.5, 1.0), width=(0.4, 0.6), scale=0.8)
    assert check_laplace(f, WINDOW, 5_000, 11) == check_laplace(f, WINDOW, 5_000, 11)


# ---------------------------------------------------------------------------
# check_local_expansion

def test_local_count_indicator_matches_pmf():
    for k in (0, 2, 5):
        report = check_local_expansion(
            LocalFunctional(kind="count_indicator", k=k), WINDOW, 20_000, 42
        )
        pmf = math.exp(-2.0) * 2.0**k / math.factorial(k)
        assert report.reference == pytest.approx(pmf, rel=1e-12)
        assert abs(report.estimate - report.reference) <= 4 * max(report.std_error, 1e-4)


def test_local_constant_functional_telescopes():
    report = check_local_expansion(LocalFunctional(kind="one"), WINDOW, 200, 3)
    assert report.estimate == 1.0
    assert report.reference == 1.0
    assert abs(report.extra_dict()["series_reference"] - 1.0) < 1e-12


def test_local_linear_functional_is_campbell():
    functional = LocalFunctional(kind="poly_of_sum", phi=INDICATOR, h=LINEAR)
    report = check_local_expansion(functional, WINDOW, 50_000, 42)
    assert report.reference == pytest.approx(WINDOW.volume, rel=1e-12)
    assert abs(report.estimate - report.reference) <= 4 * report.std_error


def test_local_quadratic_functional():
    phi = ScalarFunction(kind="box", lo=(0.0, 0.0), hi=(1.0, 1.0), scale=1.0)
    h = Polynomial(coeffs=(0.5, 1.0, 2.0))
    functional = LocalFunctional(kind="poly_of_sum", phi=phi, h=h)
    report = check_local_expansion(functional, WINDOW, 50_000, 42)
    # moments of <phi, gamma>: mean 1, variance 1 for this unit sub-box
    assert report.reference == pytest.approx(0.5 + 1.0 + 2.0 * 2.0, rel=1e-12)
    assert abs(report.estimate - report.reference) <= 4 * report.std_error


def test_local_tail_bound_failure():
    with pytest.raises(TailBoundError):
        check_local_expansion(LocalFunctional(kind="one"), WINDOW, 100, 1, series_terms=1)


# ---------------------------------------------------------------------------
# check_mecke

def test_mecke_order_one_mean_measure():
    report = check_mecke(1, INDICATOR, CONST, None, WINDOW, 20_000, 42)
    assert report.reference == pytest.approx(WINDOW.volume, rel=1e-12)
    assert abs(report.estimate - report.reference) <= 4 * report.std_error


def test_mecke_order_one_factorial_moment():
    report = check_mecke(1, INDICATOR, LINEAR, INDICATOR, WINDOW, 50_000, 42)
    assert report.reference == pytest.approx(WINDOW.volume**2, rel=1e-12)
    assert abs(report.estimate - report.reference) <= 4 * report.std_error


def test_mecke_order_two_pair_count():
    report = check_mecke(2, INDICATOR, CONST, None, WINDOW, 50_000, 42)
    assert report.reference == pytest.approx(WINDOW.volume**2 / 2, rel=1e-12)
    assert abs(report.estimate - report.reference) <= 4 * report.std_error
    extra = report.extra_dict()
    assert abs(report.estimate - extra["rhs_estimate"]) <= 4 * extra["pooled_std_error"]


def test_mecke_order_three_triple_count():
    report = check_mecke(3, INDICATOR, CONST, None, WINDOW, 50_000, 42)
    assert report.reference == pytest.approx(WINDOW.volume**3 / 6, rel=1e-12)
    assert abs(report.estimate - report.reference) <= 4 * report.std_error


def test_mecke_vectorized_sums_match_enumeration():
    g = ScalarFunction(kind="gaussian", center=(0.4, 1.0), width=(0.5, 0.8), scale=1.3)
    phi = ScalarFunction(kind="box", lo=(0.0, 0.5), hi=(0.8, 1.7), scale=0.7)
    h = Polynomial(coeffs=(0.5, -1.0, 0.25))
    coeffs = h.padded()
    n = 300
    _, ids, pts = _sample_blocks(WINDOW, 11, n)
    g_vals, phi_vals = g.evaluate(pts), phi.evaluate(pts)
    totals = np.bincount(ids, weights=phi_vals, minlength=n)
    for m in (1, 2, 3):
        fast = _subset_sums(m, g_vals, phi_vals, totals, ids, n, coeffs)
        for s in range(n):
            slow = subset_sum_oracle(
                m, g_vals[ids == s], phi_vals[ids == s], totals[s], coeffs
            )
            assert fast[s] == pytest.approx(slow, rel=1e-9, abs=1e-9)


def test_mecke_reduces_to_campbell_for_constant_h():
    # same functional through the two identities, independent seeds
    mecke = check_mecke(1, INDICATOR, CONST, None, WINDOW, 30_000, 21)
    local = check_local_expansion(
        LocalFunctional(kind="poly_of_sum", phi=INDICATOR, h=LINEAR), WINDOW, 30_000, 22
    )
    pooled = math.hypot(mecke.std_error, local.std_error)
    assert abs(mecke.estimate - local.estimate) <= 3 * pooled


def test_mecke_validation():
    with pytest.raises(ValueError):
        check_mecke(4, INDICATOR, CONST, None, WINDOW, 100, 1)
    with pytest.raises(ValueError):
        check_mecke(1, INDICATOR, LINEAR, None, WINDOW, 100, 1)
    with pytest.raises(ValueError):
        check_mecke(1, INDICATOR, Polynomial(coeffs=(0, 0, 0, 1.0)), INDICATOR, WINDOW, 100, 1)


def test_mecke_aborts_on_huge_configurations():
    huge = Window(lengths=(30.0, 30.0, 3.0))
    with pytest.raises(ConfigurationTooLarge):
        check_mecke(1, INDICATOR, CONST, None, huge, 100, 1)


# ---------------------------------------------------------------------------
# dispatch and JSON

def test_run_check_dispatch_and_shorthand():
    spec = {
        "check": "mecke",
        "m": 2,
        "window": {"dim": 2, "lengths": [1.0, 2.0]},
        "samples": 2000,
        "seed": 42,
        "f": {"g": "indicator", "h": "const"},
    }
    report = run_check(spec)
    assert report.check == "mecke"
    assert report.samples == 2000
    assert report == run_check(spec)


def test_run_check_validation():
    with pytest.raises(ValueError):
        run_check({"check": "nope", "window": {"lengths": [1.0]}, "samples": 10, "seed": 1})
    with pytest.raises(ValueError):
        run_check({"check": "laplace", "samples": 10, "seed": 1})


def test_report_json_round_trip():
    report = check_mecke(2, INDICATOR, CONST, None, WINDOW, 2_000, 42)
    doc = report_to_json(report)
    assert doc["samples"] == "2000"
    assert doc["seed"] == "42"
    assert report_from_json(doc) == report


def test_rel_error_floor_avoids_blowup():
    # zero-mean functional: reference 0, rel_error uses the documented floor
    functional = LocalFunctional(kind="poly_of_sum", phi=INDICATOR, h=Polynomial(coeffs=(0.0,)))
    report = check_local_expansion(functional, WINDOW, 200, 5)
    assert report.reference == 0.0
    assert report.rel_error == 0.0
