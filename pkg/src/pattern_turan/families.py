"""Two-part patterns with irrational Lagrangian, one for each k >= 3.

For a prime l < k not dividing k, the pattern (2, {<1^(k-l), 2^l>}, {1})
has Lagrangian C(k, l) * r(x1) with

    r(x) = (1 - x)^l x^(k-l) / (1 - x^k)

and x1 the unique root in (0, 1) of l * (x^(k-1) + ... + 1) - k.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb, isqrt

from .lagrangian import LagrangianConfig, maximize_lagrangian, stationarity_certificate
from .pattern import Pattern, density_one_check


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


def choose_ell(k: int) -> int:
    """2 for odd k, otherwise the smallest prime strictly between k/2 and k."""
    if k < 3:
        raise ValueError("k must be at least 3")
    if k % 2:
        return 2
    for ell in range(k // 2 + 1, k):
        if is_prime(ell):
            return ell
    raise AssertionError(f"no prime in ({k / 2}, {k})")  # Bertrand's postulate


def valid_pair(k: int, ell: int) -> bool:
    if not (is_prime(ell) and ell < k and k % ell):
        return False
    return k % 2 == 1 or 2 * ell > k


def irrational_pattern(k: int, ell: int | None = None) -> Pattern:
    ell = choose_ell(k) if ell is None else ell
    return Pattern(k, 2, [(k - ell, ell)], {0})


def root_poly(k: int, ell: int, x: float) -> float:
    """ell * (x^(k-1) + ... + x + 1) - k."""
    return ell * sum(x**i for i in range(k)) - k


def _root_poly_derivative(k, ell, x):
    return ell * sum(i * x ** (i - 1) for i in range(1, k))


def solve_g_root(k: int, ell: int, tol: float = 1e-12) -> float:
    """Root in (0, 1) by bisection, then three Newton steps.

    The polynomial has positive coefficients except the constant, so it is
    increasing on (0, 1), negative at 0 and positive at 1.
    """
    lo, hi = 0.0, 1.0
    assert root_poly(k, ell, lo) < 0 < root_poly(k, ell, hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if root_poly(k, ell, mid) < 0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(3):
        x -= root_poly(k, ell, x) / _root_poly_derivative(k, ell, x)
    return x


def r(k: int, ell: int, x: float) -> float:
    """(1 - x)^ell x^(k-ell) / (1 - x^k); extended by its limits at 0 and 1."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return (1 - x) ** ell * x ** (k - ell) / (1 - x**k)


@dataclass
class IrrationalCertificate:
    k: int
    ell: int
    pattern: str
    root: float
    lambda_closed_form: float
    lambda_numeric: float
    poly_residual: float
    stationarity_residual: float
    maximizer: list
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def verify_irrational_certificate(k: int, tol: float = 1e-6, cfg: LagrangianConfig | None = None,
                                  stationarity_tol: float = 1e-6) -> IrrationalCertificate:
    """Compare the closed form C(k, l) * r(root) with the numerical optimum."""
    ell = choose_ell(k)
    p = irrational_pattern(k, ell)
    root = solve_g_root(k, ell)
    closed = comb(k, ell) * r(k, ell, root)
    res = maximize_lagrangian(p, cfg)
    # stationarity is certified at the closed-form optimum with the numeric value
    cert = stationarity_certificate(p, [root, 1 - root], res.value)
    passed = (
        abs(closed - res.value) <= tol
        and cert.max_residual <= stationarity_tol
        and res.stationarity_residual <= stationarity_tol
        and not density_one_check(p)
    )
    return IrrationalCertificate(
        k=k,
        ell=ell,
        pattern=str(p),
        root=root,
        lambda_closed_form=closed,
        lambda_numeric=res.value,
        poly_residual=abs(root_poly(k, ell, root)),
        stationarity_residual=max(cert.max_residual, res.stationarity_residual),
        maximizer=res.maximizer,
        passed=passed,
    )
