import math

import numpy as np
import pytest
from scipy import special

from recipsum.models.summation import AuxSumKind, AuxSumTag
from recipsum.services.summation import (
    aux_o_term,
    aux_sum,
    euler_maclaurin,
    euler_maclaurin_sum,
    partial_sum,
    psi,
)
from recipsum.utils.errors import DomainError, NumericalError


def _ones(t):
    return np.ones_like(t)


def _zeros(t):
    return np.zeros_like(t)


INTEGRANDS = {
    "1/t": (lambda t: 1.0 / t, lambda t: -1.0 / t ** 2),
    "log t/t": (lambda t: np.log(t) / t, lambda t: (1.0 - np.log(t)) / t ** 2),
    "1/(t log t)": (lambda t: 1.0 / (t * np.log(t)), lambda t: -(np.log(t) + 1.0) / (t * np.log(t)) ** 2),
    "1/(t log^2 t)": (lambda t: 1.0 / (t * np.log(t) ** 2), lambda t: -(np.log(t) + 2.0) / (t ** 2 * np.log(t) ** 3)),
}


@pytest.mark.parametrize("x,expected", [(0.5, 0.0), (1.0, -0.5), (3.25, -0.25), (-0.25, 0.25)])
def test_psi_values(x, expected):
    assert psi(x) == expected


def test_psi_is_periodic_and_bounded():
    rng = np.random.default_rng(12345)
    for x in rng.uniform(-100.0, 100.0, size=10 ** 4):
        assert abs(psi(x + 1.0) - psi(x)) <= 1e-12
        assert -0.5 <= psi(x) < 0.5


def test_euler_maclaurin_counts_integers():
    assert euler_maclaurin_sum(_ones, _zeros, 0.5, 5.5) == pytest.approx(5.0, abs=1e-13)


def test_euler_maclaurin_arithmetic_sum():
    assert euler_maclaurin_sum(lambda t: t, _ones, 0.5, 4.5) == pytest.approx(10.0, abs=1e-12)


def test_euler_maclaurin_integer_endpoints_include_the_upper_one():
    # Σ_{2<n<=5} n = 3 + 4 + 5
    assert euler_maclaurin_sum(lambda t: t, _ones, 2.0, 5.0) == pytest.approx(12.0, abs=1e-12)


@pytest.mark.parametrize("name", sorted(INTEGRANDS))
def test_euler_maclaurin_matches_direct_summation(name):
    f, f_deriv = INTEGRANDS[name]
    n = np.arange(3, 10 ** 4 + 1, dtype=float)
    direct = math.fsum(f(n))
    result = euler_maclaurin(f, f_deriv, 2.5, 10 ** 4 + 0.5)
    assert result.value == pytest.approx(direct, abs=1e-9)
    assert result.abs_err_estimate < 1e-9


def test_euler_maclaurin_harmonic_tail_beyond_the_panel_cap():
    f, f_deriv = INTEGRANDS["1/t"]
    X, Y = 1e8, 1e9 + 0.5
    result = euler_maclaurin(f, f_deriv, X, Y, max_panels=1000)
    # Σ_{X<n<=Y} 1/n = H(10^9) - H(10^8)
    expected = special.digamma(1e9 + 1) - special.digamma(1e8 + 1)
    assert result.value == pytest.approx(expected, abs=1e-11)


def test_euler_maclaurin_cap_too_small_raises():
    f, f_deriv = INTEGRANDS["1/t"]
    with pytest.raises(NumericalError) as info:
        euler_maclaurin(f, f_deriv, 2.5, 1e5 + 0.5, max_panels=1000)
    assert "tail_bound" in info.value.diagnostics


def test_euler_maclaurin_rejects_empty_range():
    with pytest.raises(DomainError):
        euler_maclaurin_sum(_ones, _zeros, 5.0, 5.0)


def test_partial_sum_direct_and_euler_maclaurin_agree():
    f, f_deriv = INTEGRANDS["log t/t"]
    direct = partial_sum(f, f_deriv, 3, 10 ** 6)
    mixed = partial_sum(f, f_deriv, 3, 10 ** 6, direct_cutoff=10 ** 4)
    assert direct.method == "direct"
    assert mixed.method == "direct+euler-maclaurin"
    assert mixed.value == pytest.approx(direct.value, abs=1e-10)


def test_partial_sum_empty_range():
    assert partial_sum(_ones, _zeros, 3, 2.5).value == 0.0


def test_kind_parsing():
    assert AuxSumKind.parse("recip_n_log_r:2") == AuxSumKind(tag=AuxSumTag.RECIP_N_LOG_R, r=2)
    assert AuxSumKind.parse("LOG_OVER_N").tag == AuxSumTag.LOG_OVER_N
    assert AuxSumKind.parse("recip_n_log_r:3").label == "recip_n_log_r:3"
    with pytest.raises(ValueError):
        AuxSumKind.parse("recip_n_log_r")
    with pytest.raises(ValueError):
        AuxSumKind(tag=AuxSumTag.RECIP_N, r=2)
    with pytest.raises(ValueError):
        AuxSumKind.parse("recip_n_log_r:1")


def test_aux_sum_single_term(k_table):
    result = aux_sum(AuxSumKind(tag=AuxSumTag.RECIP_N), 3, k_table)
    assert result.value == pytest.approx(1.0 / 3.0, rel=1e-15)
    assert result.main_term == pytest.approx(math.log(3.0))
    assert result.constant_estimate == pytest.approx(1.0 / 3.0 - math.log(3.0))


@pytest.mark.parametrize("text", ["log_over_n", "recip_n", "recip_n_log", "recip_n_log_r:2", "recip_n_log_r:3"])
def test_aux_constants_settle_within_the_o_term(text, k_table):
    kind = AuxSumKind.parse(text)
    x = 10 ** 4
    low = aux_sum(kind, x, k_table)
    high = aux_sum(kind, 10 * x, k_table)
    assert abs(low.constant_estimate - high.constant_estimate) <= aux_o_term(kind, x, k_table)
    assert low.value - low.main_term == low.constant_estimate


def test_aux_sum_log_over_n_stabilizes(k_table):
    kind = AuxSumKind(tag=AuxSumTag.LOG_OVER_N)
    low = aux_sum(kind, 10 ** 6, k_table, direct_cutoff=10 ** 5)
    high = aux_sum(kind, 10 ** 7, k_table, direct_cutoff=10 ** 5)
    assert abs(low.constant_estimate - high.constant_estimate) <= 10 * math.log(1e7) / 1e7


def test_aux_sum_second_log_power_stabilizes(k_table):
    kind = AuxSumKind.parse("recip_n_log_r:2")
    low = aux_sum(kind, 10 ** 6, k_table)
    high = aux_sum(kind, 10 ** 8, k_table, direct_cutoff=10 ** 6)
    assert abs(low.constant_estimate - high.constant_estimate) <= 1e-6
    assert low.constant_estimate == pytest.approx(low.value + 3.0 / math.log(1e6))


def test_aux_sum_domain(k_table):
    with pytest.raises(DomainError):
        aux_sum(AuxSumKind(tag=AuxSumTag.RECIP_N), 2.5, k_table)
    with pytest.raises(DomainError):
        aux_sum(AuxSumKind.parse("recip_n_log_r:20"), 1e3, k_table)
