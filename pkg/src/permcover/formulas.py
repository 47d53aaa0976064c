"""Closed-form covering-radius values and bounds, as exact integer functions.

Every square-root expression here is the root of an integer, so each
floor/ceil is evaluated through `math.isqrt` or an equivalent integer
predicate; no floating point is involved except in `lmin_cyclic_lower`,
whose bound genuinely contains a logarithm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .groups import FactorProfile


class BoundaryPrecisionError(ArithmeticError):
    """A float-based ceiling sat too close to an integer to be trusted."""


@dataclass(frozen=True)
class BoundsInterval:
    lower: int
    upper: int
    exact: int | None = None

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower},{self.upper}]")
        if self.exact is not None and not (self.lower <= self.exact <= self.upper):
            raise ValueError(f"exact value {self.exact} outside [{self.lower},{self.upper}]")

    def contains(self, value: int) -> bool:
        return self.lower <= value <= self.upper


def floor_half_sqrt_succ(x: int) -> int:
    """floor((sqrt(x)+1)/2) for integer x >= 0, exactly."""
    return (math.isqrt(x) + 1) // 2


def least_k_quadratic(target: int) -> int:
    """Least k >= 1 with k^2 + k >= target; equals ceil((sqrt(4t+1)-1)/2) for t >= 1."""
    if target < 1:
        return 1 if target > 0 else 0
    k = (math.isqrt(4 * target + 1) - 1) // 2
    while k * k + k < target:
        k += 1
    while k > 1 and (k - 1) * (k - 1) + (k - 1) >= target:
        k -= 1
    return k


def _largest_k_below_double(q: int) -> int:
    """Largest k >= 1 with k(k-1) < 2q."""
    k = (math.isqrt(8 * q + 1) + 1) // 2
    while k * (k - 1) >= 2 * q:
        k -= 1
    while (k + 1) * k < 2 * q:
        k += 1
    return k


def r_cyclic(n: int) -> int:
    """Covering radius of the natural transitive cyclic group on [1..n]."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return n - floor_half_sqrt_succ(4 * n + 1)


def lmax_cyclic(n: int) -> int:
    """Maximum covering radius over all relabelings of the cyclic group."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return n - least_k_quadratic(n)


def r_pq(p: int, q: int) -> int:
    """Covering radius of the natural two-block rotation group on [1..p+q].

    Equals p plus the least t >= 0 with (q-t)(q-t-1)/2 < q; the irrational
    closed form floor((sqrt(q+1/8)-sqrt(2)/2)^2-1/8) reduces to this.
    """
    if p < q:
        raise ValueError(f"need p >= q, got p={p}, q={q}")
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    return p + q - _largest_k_below_double(q)


def lmax_pq(p: int, q: int) -> int:
    """Maximum covering radius over relabelings of the two-block group."""
    if p < q:
        raise ValueError(f"need p >= q, got p={p}, q={q}")
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if q <= 2:
        return p
    return p + q - least_k_quadratic(q)


def r_product(profile: FactorProfile | Sequence[int]) -> int:
    """Covering radius of a product of k >= 2 block rotation groups.

    The k=1 case is deliberately rejected: the product formula with a single
    factor disagrees with the cyclic closed form and is not defined here.
    """
    if not isinstance(profile, FactorProfile):
        profile = FactorProfile(tuple(profile))
    if profile.k < 2:
        raise ValueError("product radius needs at least two factors")
    pk = profile.parts[-1]
    return profile.n - _largest_k_below_double(pk)


def lmax_product(profile: FactorProfile | Sequence[int]) -> int:
    """Maximum relabeled covering radius of a product of k >= 2 factors."""
    if not isinstance(profile, FactorProfile):
        profile = FactorProfile(tuple(profile))
    if profile.k < 2:
        raise ValueError("product L_max needs at least two factors")
    pk = profile.parts[-1]
    if pk < 3:
        return profile.n - pk
    return profile.n - least_k_quadratic(pk)


def dn_bounds(n: int) -> BoundsInterval:
    """Sandwich for the dihedral covering radius, of width at most one.

    The upper bound coincides with r_cyclic(n); when n = m(m-1) the value is
    known exactly (n - m) and the interval collapses.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    upper = r_cyclic(n)
    m = (1 + math.isqrt(4 * n + 1)) // 2
    for cand in (m - 1, m, m + 1):
        if cand > 0 and cand * (cand - 1) == n:
            return BoundsInterval(lower=n - cand, upper=upper, exact=n - cand)
    return BoundsInterval(lower=upper - 1, upper=upper)


def dn_weak_lower(n: int) -> int:
    """The constructive dihedral lower bound n - ceil((sqrt(4n+13)+1)/2).

    Kept separately from dn_bounds: the dihedral witness builder targets
    exactly this radius.  Ceiling evaluated as the least k with k^2-k >= n+3.
    """
    if n < 10:
        raise ValueError(f"weak dihedral bound needs n >= 10, got {n}")
    # least j with j^2 - j >= n+3 is one more than the least k with k^2+k >= n+3
    j = least_k_quadratic(n + 3) + 1
    return n - j


def lmin_cyclic_lower(n: int, *, clamp: bool = True) -> int:
    """Lower bound n - ceil(sqrt(2n ln n + 2n)) on the minimum relabeled
    cyclic radius, clamped at zero.

    The only float-based formula in this module.  The ceiling is accepted only
    if it is stable under a one-ulp perturbation of the square root, otherwise
    BoundaryPrecisionError is raised.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    x = 2.0 * n * math.log(n) + 2.0 * n
    s = math.sqrt(x)
    lo = math.ceil(math.nextafter(s, -math.inf))
    hi = math.ceil(math.nextafter(s, math.inf))
    if lo != hi:
        raise BoundaryPrecisionError(
            f"ceil(sqrt(2n ln n + 2n)) unstable at n={n}: {lo} vs {hi}"
        )
    value = n - hi
    if clamp and value < 0:
        return 0
    return value
