"""Index-k sublattices of Z^2: Hermite normal forms and their class split.

Every index-k sublattice has a unique triangular basis [[a, b], [0, d]] with
a*d = k and 0 <= b < a; counting them gives sigma_1(k), the divisor sum.
Grouping by elementary divisors (e1, e2), e1 | e2, e1*e2 = k, partitions the
normal forms into the double cosets of integer matrices of determinant k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .modular import divisors


@dataclass(frozen=True, order=True)
class HNFMatrix:
    """Upper-triangular sublattice basis [[a, b], [0, d]]."""

    a: int
    b: int
    d: int

    def __post_init__(self):
        if self.a < 1 or self.d < 1:
            raise ValueError("diagonal entries must be positive")
        if not 0 <= self.b < self.a:
            raise ValueError("need 0 <= b < a, got b=%d a=%d" % (self.b, self.a))

    @property
    def det(self) -> int:
        return self.a * self.d


@dataclass(frozen=True, order=True)
class SNFClass:
    """Elementary-divisor pair (e1, e2) with e1 | e2."""

    e1: int
    e2: int

    def __post_init__(self):
        if self.e1 < 1 or self.e2 < 1:
            raise ValueError("elementary divisors must be positive")
        if self.e2 % self.e1:
            raise ValueError("need e1 | e2, got (%d, %d)" % (self.e1, self.e2))

    @property
    def det(self) -> int:
        return self.e1 * self.e2


def sigma1(k: int) -> int:
    """Sum of the positive divisors of k."""
    return sum(divisors(k))


def sublattices(k: int) -> list[HNFMatrix]:
    """All index-k sublattices in Hermite normal form, sorted.

    There are sigma_1(k) of them: a ranges over divisors of k, d = k // a,
    and b over 0..a-1.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError("index must be a positive integer, got %r" % (k,))
    out = []
    for a in divisors(k):
        d = k // a
        for b in range(a):
            out.append(HNFMatrix(a, b, d))
    return sorted(out)


def smith_class(m: HNFMatrix) -> SNFClass:
    """Elementary divisors of a normal form: e1 = gcd of the entries."""
    e1 = math.gcd(math.gcd(m.a, m.b), m.d)
    return SNFClass(e1, m.det // e1)


def double_cosets(k: int) -> list[SNFClass]:
    """All elementary-divisor classes of determinant k, sorted.

    (e1, e2) with e1 | e2 and e1 e2 = k correspond to e1 running over the
    divisors whose square divides k.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError("determinant must be a positive integer, got %r" % (k,))
    return sorted(SNFClass(e, k // e) for e in divisors(k) if k % (e * e) == 0)
