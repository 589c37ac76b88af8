"""Coefficient tables for the 24th and 48th eta powers, and Hecke operators.

tau(d) is the coefficient of q^d in the 24th eta power (tau(1) = 1,
tau(2) = -24, tau(3) = 252).  a_coeff(d) is the coefficient of q^d in the
48th power (a_coeff(2) = 1, a_coeff(3) = -48); since the 48th power is the
square of the 24th, a_coeff(d) is also the convolution
sum_{i+j=d} tau(i) tau(j), which the tests exploit as a second route.

hecke_apply implements the weight-12 Hecke operator on a truncated
expansion: (T_k f)_n = sum_{e | gcd(n,k)} e^11 * f_{n k / e^2}.  That the
24th eta power is an eigenvector with eigenvalue tau(k) is a checked fact
(tests and the hecke-check CLI command), never assumed by the code here.
"""

from __future__ import annotations

import math

from .qseries import QSeries, eta_power

_MIN_TABLE = 640

_tau_cache: list[int] = []
_a_cache: list[int] = []


def tau_table(bound: int) -> list[int]:
    """List T with T[d] = tau(d) for 1 <= d <= bound (T[0] = 0)."""
    if not isinstance(bound, int) or bound < 1:
        raise ValueError("bound must be a positive integer")
    global _tau_cache
    if bound >= len(_tau_cache):
        size = max(bound + 1, 2 * len(_tau_cache), _MIN_TABLE)
        _tau_cache = list(eta_power(24, size).coeffs)
    return _tau_cache[:bound + 1]


def a_coeff_table(bound: int) -> list[int]:
    """List A with A[d] = a_coeff(d) for 2 <= d <= bound (A[0] = A[1] = 0)."""
    if not isinstance(bound, int) or bound < 2:
        raise ValueError("bound must be an integer >= 2")
    global _a_cache
    if bound >= len(_a_cache):
        size = max(bound + 1, 2 * len(_a_cache), _MIN_TABLE)
        _a_cache = list(eta_power(48, size).coeffs)
    return _a_cache[:bound + 1]


def tau(d: int) -> int:
    """Coefficient of q^d in the 24th eta power; d must be >= 1."""
    if not isinstance(d, int) or d < 1:
        raise ValueError("tau is indexed by integers >= 1, got %r" % (d,))
    return tau_table(d)[d]


def a_coeff(d: int) -> int:
    """Coefficient of q^d in the 48th eta power; d must be >= 2."""
    if not isinstance(d, int) or d < 2:
        raise ValueError("a_coeff is indexed by integers >= 2, got %r" % (d,))
    return a_coeff_table(d)[d]


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n >= 1."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("need a positive integer, got %r" % (n,))
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def hecke_apply(k: int, f: QSeries) -> QSeries:
    """Weight-12 Hecke operator T_k on a truncated expansion.

    The result is exact out to precision floor(f.prec / k); asking for an
    index k so large that fewer than two coefficients survive is an error.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError("Hecke index must be a positive integer, got %r" % (k,))
    out_prec = f.prec // k
    if out_prec < 2:
        raise ValueError(
            "T_%d on a precision-%d series keeps only %d coefficients; need >= 2"
            % (k, f.prec, out_prec)
        )
    out = []
    for n in range(out_prec):
        total = 0
        for e in divisors(math.gcd(n, k) if n else k):
            total += e ** 11 * f.coeffs[n * k // (e * e)]
        out.append(total)
    return QSeries(out)


def hecke_eigenvalue_check(k: int, prec: int = 1200) -> bool:
    """True iff T_k fixes the 24th eta power up to the factor tau(k) at `prec`."""
    f = eta_power(24, prec)
    lhs = hecke_apply(k, f)
    lam = tau(k)
    return lhs == QSeries([lam * c for c in f.coeffs[:lhs.prec]])


def tau_table_from_primes(prime_tau: dict[int, int], bound: int) -> list[int]:
    """Rebuild tau(1..bound) from its values at primes.

    Composites come from multiplicativity on coprime parts and prime powers
    from tau(p^(r+1)) = tau(p) tau(p^r) - p^11 tau(p^(r-1)).  Nothing here
    touches the product expansion, so agreement with tau_table is a real
    cross-check and is what acceptance criterion 1 runs.
    """
    if not isinstance(bound, int) or bound < 1:
        raise ValueError("bound must be a positive integer")
    spf = _smallest_prime_factors(bound)
    t = [0] * (bound + 1)
    t[1] = 1
    for n in range(2, bound + 1):
        p = spf[n]
        m = n
        r = 0
        while m % p == 0:
            m //= p
            r += 1
        if m > 1:
            t[n] = t[m] * t[n // m]
        elif r == 1:
            if p not in prime_tau:
                raise ValueError("missing prime value tau(%d)" % p)
            t[n] = prime_tau[p]
        else:
            t[n] = prime_tau[p] * t[p ** (r - 1)] - p ** 11 * t[p ** (r - 2)]
    return t


def _smallest_prime_factors(bound: int) -> list[int]:
    spf = list(range(bound + 1))
    i = 2
    while i * i <= bound:
        if spf[i] == i:
            for j in range(i * i, bound + 1, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    return spf


def primes_up_to(bound: int) -> list[int]:
    """Primes <= bound, by sieve."""
    if bound < 2:
        return []
    spf = _smallest_prime_factors(bound)
    return [n for n in range(2, bound + 1) if spf[n] == n]


def scan_nonvanishing(table, max_index: int, first: int = 1) -> list[int]:
    """Indices in [first, max_index] whose table entry is zero.

    An empty result certifies non-vanishing over the whole range.  The table
    is any integer sequence indexed so that table[d] is the value at d.
    """
    if max_index >= len(table):
        raise ValueError(
            "table holds indices < %d, cannot scan to %d" % (len(table), max_index)
        )
    if first < 0:
        raise ValueError("first must be >= 0")
    return [d for d in range(first, max_index + 1) if table[d] == 0]
