"""Hirzebruch-Jung chains for the cyclic quotient singularities ``u^n = x*y^r``.

Over a point where ``r`` lines of one class meet, the cover acquires
singularities resolved by a chain of ``t = (n-1)/r`` rational curves with
self-intersections ``-2, ..., -2, -(r+1)`` (the negative continued fraction
of ``n/(n-r)``). Double points give ``u^n = x*y`` and a chain of ``n-1``
(-2)-curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact_arith import is_prime, signature_of_symmetric_matrix
from .net_geometry import MultiplicityProfile

__all__ = [
    "CongruenceError",
    "HJChain",
    "InadmissiblePrimeError",
    "NCFExpansion",
    "SearchCapExceeded",
    "SingularityCensus",
    "admissible_prime",
    "chain_signature",
    "delta_q_squared",
    "hj_chain",
    "is_admissible",
    "ncf",
    "singularity_census",
]

SEARCH_CAP = 10**6


class CongruenceError(ValueError):
    """``n`` is not congruent to 1 modulo ``r``."""


class InadmissiblePrimeError(ValueError):
    pass


class SearchCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class NCFExpansion:
    coefficients: tuple[int, ...]

    def value(self) -> Fraction:
        """Evaluate ``b1 - 1/(b2 - 1/(...))``."""
        acc = Fraction(self.coefficients[-1])
        for b in reversed(self.coefficients[:-1]):
            acc = b - 1 / acc
        return acc


def ncf(numerator: int, denominator: int) -> NCFExpansion:
    """Negative continued fraction with every coefficient >= 2.

    >>> ncf(7, 4).coefficients
    (2, 4)
    """
    if denominator < 1 or numerator <= denominator:
        raise ValueError(f"need numerator > denominator >= 1, got {numerator}/{denominator}")
    if gcd(numerator, denominator) != 1:
        raise ValueError(f"{numerator} and {denominator} are not coprime")
    out = []
    a, b = numerator, denominator
    while b:
        q = -(-a // b)
        out.append(q)
        a, b = b, q * b - a
    return NCFExpansion(tuple(out))


def _check_congruence(n: int, r: int) -> None:
    if r < 1:
        raise ValueError("r must be >= 1")
    if n <= r or (n - 1) % r:
        raise CongruenceError(f"n={n} is not 1 mod r={r}")


@dataclass(frozen=True)
class HJChain:
    n: int
    r: int
    t: int
    self_intersections: tuple[int, ...]
    alphas: tuple[Fraction, ...]
    delta_q_sq: Fraction

    def matrix(self) -> list[list[int]]:
        """Intersection matrix of the chain: tridiagonal with ones off the diagonal."""
        t = self.t
        return [
            [self.self_intersections[i] if i == j else (1 if abs(i - j) == 1 else 0) for j in range(t)]
            for i in range(t)
        ]


def _alphas(n: int, r: int, t: int) -> tuple[Fraction, ...]:
    if r == 1:
        return (Fraction(0),) * t
    return tuple(Fraction(i * (1 - r), n) for i in range(1, t + 1))


def _delta_from_differences(alphas, r: int) -> Fraction:
    # -2 a_1(a_1 - a_2) - ... - 2 a_{t-1}(a_{t-1} - a_t) - (r+1) a_t^2
    total = -(r + 1) * alphas[-1] ** 2
    for a, b in zip(alphas, alphas[1:]):
        total -= 2 * a * (a - b)
    return total


def _quadratic_form(matrix, v) -> Fraction:
    return sum(v[i] * matrix[i][j] * v[j] for i in range(len(v)) for j in range(len(v)))


def hj_chain(n: int, r: int) -> HJChain:
    if not is_prime(n):
        raise ValueError(f"n={n} is not prime")
    _check_congruence(n, r)
    t = (n - 1) // r
    selfint = (-2,) * (t - 1) + (-(r + 1),)
    expansion = ncf(n, n - r).coefficients
    if tuple(-b for b in expansion) != selfint:
        raise AssertionError(f"ncf({n}/{n - r}) = {expansion} does not match [2 x {t - 1}, {r + 1}]")
    alphas = _alphas(n, r, t)
    chain = HJChain(n, r, t, selfint, alphas, Fraction(0))
    delta = Fraction(0) if r == 1 else _delta_from_differences(alphas, r)
    assert delta == _quadratic_form(chain.matrix(), alphas)
    return HJChain(n, r, t, selfint, alphas, delta)


def chain_signature(chain: HJChain) -> int:
    inertia = signature_of_symmetric_matrix(chain.matrix())
    if inertia != (0, 0, chain.t):
        raise AssertionError(f"chain matrix for (n={chain.n}, r={chain.r}) is not negative definite: {inertia}")
    return inertia.signature


def delta_q_squared(n: int, r: int) -> Fraction:
    """Self-intersection of the discrepancy divisor on one resolution chain."""
    return hj_chain(n, r).delta_q_sq


def is_admissible(profile: MultiplicityProfile, n: int) -> bool:
    return is_prime(n) and all((n - 1) % r == 0 and n > r for r in profile.higher())


def require_admissible(profile: MultiplicityProfile, n: int) -> None:
    if not is_admissible(profile, n):
        raise InadmissiblePrimeError(
            f"n={n} must be a prime with n = 1 mod r for r in {sorted(profile.higher())}"
        )


def admissible_prime(profile: MultiplicityProfile, minimum: int = 2) -> int:
    """Smallest admissible prime ``>= minimum``."""
    if minimum < 2:
        raise ValueError("minimum must be >= 2")
    n = minimum
    while n <= SEARCH_CAP:
        if is_admissible(profile, n):
            return n
        n += 1
    raise SearchCapExceeded(f"no admissible prime found below {SEARCH_CAP}")


@dataclass(frozen=True)
class SingularityCensus:
    n: int
    by_r: dict[int, int]  # r >= 3 -> number of u^n = x*y^r singularities
    doubles: int          # u^n = x*y singularities over double points
    total: int

    def to_json(self) -> dict:
        return {"n": self.n, "by_r": {str(r): c for r, c in self.by_r.items()}, "doubles": self.doubles, "total": self.total}


def singularity_census(profile: MultiplicityProfile, n: int) -> SingularityCensus:
    require_admissible(profile, n)
    scale = n ** (profile.m - 2)
    by_r = {r: scale * r * c for r, c in profile.higher().items()}
    doubles = scale * profile.t2
    total = sum(by_r.values()) + doubles
    if total != scale * (profile.f1 - profile.t2):
        raise AssertionError("singularity count disagrees with n^(m-2) (f1 - t2)")
    return SingularityCensus(n, by_r, doubles, total)
