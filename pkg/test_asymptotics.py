import math

import mpmath
import pytest

from recipsum.models.asymptotics import FitReport, FittedConstant
from recipsum.services.asymptotics import (
    compare_formulas,
    decompose,
    default_tolerance,
    delta,
    error_envelope,
    error_table,
    fit_B,
    fit_C,
    formula4,
    formula5,
    formula8,
    formula12,
    growth_ratio,
    prime_remainder,
    recip_li_integral,
    remainder_tail_allowance,
    retained_count,
    spread_ratio,
)
from recipsum.services.li import li
from recipsum.utils.errors import DomainError

GRID = [10 ** e for e in range(4, 9)]


def test_delta_at_e_to_the_e():
    assert delta(math.exp(math.e)) == pytest.approx(math.exp(0.6), rel=1e-12)


def test_delta_increases():
    assert delta(1e6) < delta(1e7) < delta(1e12)


def test_delta_against_high_precision():
    with mpmath.workdps(40):
        L = mpmath.log(mpmath.mpf(10) ** 12)
        expected = float(L ** mpmath.mpf("0.6") * mpmath.log(L) ** mpmath.mpf("-0.2"))
    assert delta(1e12) == pytest.approx(expected, rel=1e-12)


def test_delta_domain():
    with pytest.raises(DomainError):
        delta(math.e)
    with pytest.raises(DomainError):
        delta(2.0)


def test_error_envelope():
    env = error_envelope(1e6, c_env=2.0)
    assert env.delta == delta(1e6)
    assert env.envelope == pytest.approx(1e6 * math.exp(-2.0 * delta(1e6)))
    with pytest.raises(DomainError):
        error_envelope(1e6, c_env=0.0)


def test_historical_formulas():
    x = 1e6
    L = math.log(x)
    assert formula4(x) == pytest.approx(0.5 * L * L)
    assert formula5(x) == pytest.approx(0.5 * L * L - L - math.log(L))


def test_formula8_by_substitution(k_table):
    x = math.exp(math.e)
    e = math.e
    expected = 0.5 * e * e - e - 1.0 + 3.0 / e
    assert formula8(x, 2, 0.0, k_table).value == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("x", [3.0, 10.0, 1e4, 1e8, 1e12])
def test_formula8_added_terms(x, k_table):
    L = math.log(x)
    for m in range(2, 8):
        step = formula8(x, m + 1, 1.5, k_table).value - formula8(x, m, 1.5, k_table).value
        assert step == pytest.approx(k_table.k(m + 1) / (m * L ** m), rel=1e-9, abs=1e-12)


def test_formula8_orders_two_and_five(k_table):
    x = 1e8
    L = math.log(x)
    added = sum(k_table.k(r) / ((r - 1) * L ** (r - 1)) for r in range(3, 6))
    diff = formula8(x, 5, 0.7, k_table).value - formula8(x, 2, 0.7, k_table).value
    assert diff == pytest.approx(added, rel=1e-10)


def test_formula8_domain(k_table):
    with pytest.raises(DomainError):
        formula8(1e6, 1, 0.0, k_table)
    with pytest.raises(DomainError):
        formula8(2.0, 3, 0.0, k_table)
    with pytest.raises(DomainError):
        formula8(1e6, k_table.m + 1, 0.0, k_table)


def test_retained_count():
    assert retained_count(3) == 3
    assert retained_count(5) == 3
    assert retained_count(8) == 4


def test_fit_report_spread_is_max_minus_min(oracle, k_table):
    report = fit_C([10 ** 4, 10 ** 5, 10 ** 6], 2, k_table, oracle)
    estimates = [e for _, e in report.samples]
    assert len(report.samples) == 3
    assert report.retained == 3
    assert report.spread == max(estimates) - min(estimates)
    assert report.central_value == estimates[-1]
    assert report.x_max == 10 ** 6
    assert report.stabilized == (report.spread <= report.tolerance)


def test_default_tolerance_at_first_retained_point(oracle, k_table):
    report = fit_C(GRID, 3, k_table, oracle)
    first = GRID[-report.retained]
    assert report.tolerance == default_tolerance(first, 3)
    assert report.tolerance == pytest.approx(50 / math.log(first) ** 3 + math.log(first) / math.sqrt(first))
    assert remainder_tail_allowance(1e6) == pytest.approx(math.log(1e6) / 1000)


def test_default_grid_fits_stabilize(oracle, k_table):
    for grid in (GRID, GRID[1:]):
        assert fit_C(grid, 3, k_table, oracle).stabilized
        assert fit_B(grid, oracle).stabilized


def test_fit_estimate_definition(oracle, k_table):
    report = fit_C(GRID, 3, k_table, oracle)
    for x, estimate in report.samples:
        assert estimate == oracle(x) - formula8(x, 3, 0.0, k_table).value


def test_fit_uses_caller_tolerance(oracle, k_table):
    assert not fit_C(GRID, 3, k_table, oracle, tolerance=1e-12).stabilized
    assert fit_C(GRID, 3, k_table, oracle, tolerance=10.0).stabilized


def test_fitted_C_does_not_depend_on_m(oracle, k_table):
    c3 = fit_C(GRID, 3, k_table, oracle).central_value
    c5 = fit_C(GRID, 5, k_table, oracle).central_value
    assert abs(c3 - c5) <= 50 / math.log(GRID[-1]) ** 3


def test_fit_grid_preconditions(oracle, k_table):
    with pytest.raises(DomainError):
        fit_C([10 ** 4, 10 ** 5], 2, k_table, oracle)
    with pytest.raises(DomainError):
        fit_C([500, 10 ** 4, 10 ** 5], 2, k_table, oracle)
    with pytest.raises(DomainError):
        fit_C([10 ** 5, 10 ** 4, 10 ** 6], 2, k_table, oracle)
    with pytest.raises(DomainError):
        fit_C(GRID, 1, k_table, oracle)
    with pytest.raises(DomainError):
        fit_B([10 ** 6], oracle)


def test_fit_report_rejects_inconsistent_spread():
    with pytest.raises(ValueError):
        FitReport(constant_name=FittedConstant.C, m=2, samples=[(1, 1.0), (2, 2.0), (3, 4.0)],
                  retained=3, central_value=4.0, spread=1.0, tolerance=5.0, stabilized=True)


def test_formula12_near_three():
    expected = math.log(3.0) * math.log(li(3.0).value)
    assert formula12(3.0 + 1e-9, 0.0) == pytest.approx(expected, abs=1e-8)
    with pytest.raises(DomainError):
        formula12(3.0, 0.0)


def test_formula12_integral_term_grows():
    def integral_term(x):
        return math.log(x) * math.log(li(x).value) - formula12(x, 0.0)

    assert 0.0 < integral_term(1e3) < integral_term(1e6)


def test_formula12_is_the_integral_of_one_over_li():
    # ∫_3^x dt/li t = log x·log li x - ∫_3^x log(li t)/t dt - log 3·log li 3
    x = 1e6
    offset = math.log(3.0) * math.log(li(3.0).value)
    assert formula12(x, 0.0) - offset == pytest.approx(recip_li_integral(x).value, rel=1e-10)


def test_fitted_B_converges_monotonically(oracle):
    report = fit_B(GRID, oracle)
    estimates = [e for _, e in report.samples]
    steps = [b - a for a, b in zip(estimates, estimates[1:])]
    # the prime-remainder tail is positive and shrinks
    assert all(step > 0 for step in steps)
    assert all(later < earlier for earlier, later in zip(steps, steps[1:]))
    assert steps[-1] <= 0.1


def test_error_table_single_point(oracle, k_table):
    rows = error_table([10 ** 5], 3, 4.0, k_table, oracle)
    assert len(rows) == 1
    row = rows[0]
    assert row.diff == row.exact - row.approx
    assert row.scaled_diff == pytest.approx(row.diff * math.log(1e5) ** 3)


def test_scaled_error_does_not_grow(oracle, k_table):
    C = fit_C(GRID, 3, k_table, oracle).central_value
    rows = error_table(GRID, 3, C, k_table, oracle)
    assert [row.x for row in rows] == GRID
    assert rows[-1].diff == pytest.approx(0.0, abs=1e-12)
    assert growth_ratio([row.scaled_diff for row in rows]) <= 10


def test_order_two_error_shrinks(oracle, k_table):
    C = fit_C(GRID, 2, k_table, oracle).central_value
    rows = error_table(GRID, 2, C, k_table, oracle)
    diffs = [abs(row.diff) for row in rows[:-1]]
    assert diffs[-1] < diffs[0]
    scaled = [abs(row.scaled_diff) for row in rows]
    assert max(scaled[1:]) <= 10 * scaled[0]


def test_historical_formulas_recovered(oracle):
    eq5 = [oracle(x) - formula5(x) for x in GRID]
    assert max(eq5) - min(eq5) <= 2.0
    eq4 = [(oracle(x) - formula4(x)) / math.log(x) for x in GRID]
    assert max(abs(v) for v in eq4) <= 3.0


def test_growth_and_spread_ratios():
    assert growth_ratio([1.0, 2.0, 0.0]) == 2.0
    assert growth_ratio([0.0, 5.0]) == 0.0
    assert growth_ratio([-4.0, 1.0]) == 0.25
    assert spread_ratio([1.0, -4.0, 2.0]) == 4.0
    assert spread_ratio([0.0, 1.0]) == math.inf


def test_prime_remainder(oracle):
    row = prime_remainder(10 ** 6, oracle)
    assert row.pi == 78498
    assert row.remainder == row.pi - row.li
    assert -200 < row.remainder < 0
    assert row.ratio == abs(row.remainder) / row.envelope
    for x in GRID:
        assert prime_remainder(x, oracle).ratio < 1.0


def test_compare_formulas(oracle, k_table):
    rows = compare_formulas([10 ** 4, 10 ** 6], 4.0, 2.0, k_table, oracle)
    assert [row.x for row in rows] == [10 ** 4, 10 ** 6]
    assert rows[1].exact == oracle(10 ** 6)
    assert rows[1].formula4 == formula4(1e6)
    assert rows[1].formula8 == formula8(10 ** 6, 4, 4.0, k_table).value
    assert rows[1].formula12 == formula12(10 ** 6, 2.0)


def test_decompose(oracle):
    low = decompose(10 ** 4, oracle)
    high = decompose(10 ** 5, oracle)
    assert low.exact == oracle(10 ** 4)
    assert low.recip_li_sum + low.c1_estimate == pytest.approx(low.exact, rel=1e-15)
    assert low.recip_li_integral + low.c0_estimate == pytest.approx(low.recip_li_sum, rel=1e-15)
    # Σ 1/li n - ∫ dt/li t settles like log x / x
    assert abs(high.c0_estimate - low.c0_estimate) <= 10 * math.log(1e4) / 1e4
    # the C_1 tail is a sum of positive terms beyond x
    assert high.c1_estimate > low.c1_estimate


def test_decompose_euler_maclaurin_branch(oracle):
    direct = decompose(10 ** 5, oracle)
    mixed = decompose(10 ** 5, oracle, direct_cutoff=10 ** 3)
    assert mixed.recip_li_sum == pytest.approx(direct.recip_li_sum, abs=1e-9)
