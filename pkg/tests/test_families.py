from math import comb, sqrt

import pytest

from pattern_turan.families import (
    choose_ell,
    irrational_pattern,
    is_prime,
    r,
    root_poly,
    solve_g_root,
    valid_pair,
    verify_irrational_certificate,
)
from pattern_turan.lagrangian import eval_g
from pattern_turan.pattern import density_one_check, example_pattern


def test_primes():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize("k, ell", [(3, 2), (4, 3), (5, 2), (6, 5), (7, 2), (8, 5), (10, 7)])
def test_choose_ell(k, ell):
    assert choose_ell(k) == ell and valid_pair(k, ell)


def test_choose_ell_rejects_small_k():
    with pytest.raises(ValueError):
        choose_ell(2)


def test_invalid_pairs():
    assert not valid_pair(6, 3)   # divides k
    assert not valid_pair(6, 2)   # even k needs ell > k/2
    assert not valid_pair(5, 4)   # not prime


def test_k3_is_the_example():
    assert irrational_pattern(3) == example_pattern()


def test_root_k3():
    x = solve_g_root(3, 2)
    assert x == pytest.approx((sqrt(3) - 1) / 2, abs=1e-12)
    assert abs(root_poly(3, 2, x)) < 1e-10
    assert 3 * r(3, 2, x) == pytest.approx(2 * sqrt(3) - 3, abs=1e-12)


@pytest.mark.parametrize("k", [3, 4, 5, 6, 7, 8])
def test_root_in_unit_interval(k):
    ell = choose_ell(k)
    x = solve_g_root(k, ell)
    assert 0 < x < 1 and abs(root_poly(k, ell, x)) < 1e-10
    # closed form agrees with g at the root
    p = irrational_pattern(k)
    assert eval_g(p, [x, 1 - x]) == pytest.approx(comb(k, ell) * r(k, ell, x), abs=1e-12)


def test_r_endpoints():
    assert r(3, 2, 0.0) == 0.0 and r(3, 2, 1.0) == 0.0


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_certificate_passes(k):
    cert = verify_irrational_certificate(k)
    assert cert.passed
    assert abs(cert.lambda_closed_form - cert.lambda_numeric) <= 1e-6
    assert 0 < cert.lambda_numeric < 1
    assert not density_one_check(irrational_pattern(k))


def test_certificate_k4_value():
    cert = verify_irrational_certificate(4)
    assert cert.ell == 3
    assert cert.root == pytest.approx(0.25307658654, abs=1e-10)
    assert cert.lambda_numeric == pytest.approx(0.4235701721, abs=1e-8)
