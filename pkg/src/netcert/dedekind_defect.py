"""Dedekind sums and the signature defects of the chains ``u^n = x*y^r``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact_arith import format_fraction
from .hj_chains import CongruenceError

__all__ = [
    "CotangentCheck",
    "DefectRecord",
    "ReciprocityCheck",
    "cot_sum_identity",
    "dedekind_sum",
    "reciprocity_check",
    "signature_defect",
]

COT_TOLERANCE = 1e-9


def _sawtooth(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_sum(h: int, k: int) -> Fraction:
    """``s(h, k) = sum_{i=1}^{k-1} ((i/k)) ((h i/k))``, exactly."""
    if k < 1:
        raise ValueError("k must be positive")
    if gcd(h, k) != 1:
        raise ValueError(f"gcd({h}, {k}) != 1")
    return sum((_sawtooth(Fraction(i, k)) * _sawtooth(Fraction(h * i, k)) for i in range(1, k)), Fraction(0))


@dataclass(frozen=True)
class ReciprocityCheck:
    h: int
    k: int
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def reciprocity_check(h: int, k: int) -> ReciprocityCheck:
    """``s(h,k) + s(k,h)`` against ``-1/4 + (h/k + k/h + 1/(hk))/12``."""
    if h < 1 or k < 1:
        raise ValueError("h and k must be positive")
    lhs = dedekind_sum(h, k) + dedekind_sum(k, h)
    rhs = Fraction(-1, 4) + (Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)) / 12
    return ReciprocityCheck(h, k, lhs, rhs)


@dataclass(frozen=True)
class CotangentCheck:
    r: int
    exact: Fraction      # 4 r s(1, r)
    closed_form: Fraction  # (r-1)(r-2)/3
    numeric: float       # sum of cot^2(pi j / r) in floating point

    @property
    def passed(self) -> bool:
        return self.exact == self.closed_form and abs(self.numeric - float(self.closed_form)) <= COT_TOLERANCE


def cot_sum_identity(r: int) -> CotangentCheck:
    if r < 2:
        raise ValueError("r must be >= 2")
    exact = 4 * r * dedekind_sum(1, r)
    closed = Fraction((r - 1) * (r - 2), 3)
    numeric = math.fsum(1 / math.tan(math.pi * j / r) ** 2 for j in range(1, r))
    return CotangentCheck(r, exact, closed, numeric)


@dataclass(frozen=True)
class DefectRecord:
    n: int
    r: int
    dedekind: Fraction
    defect: Fraction
    contribution: Fraction
    asymptote: Fraction

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "dedekind": format_fraction(self.dedekind),
            "defect": format_fraction(self.defect),
            "contribution": format_fraction(self.contribution),
            "asymptote": format_fraction(self.asymptote),
        }


def defect_closed_form(n: int, r: int) -> Fraction:
    return Fraction(n * n - n * ((r - 1) * (r - 2) + 3 * r) + r * r + 1, 3 * r)


def signature_defect(n: int, r: int) -> DefectRecord:
    """Defect of one singularity over a point of multiplicity ``r`` (``r = 1`` for double points).

    The defect is ``4n s(r, n)``; it must agree with the closed form, and the
    singularity contributes ``-(n-1)/r + defect/n`` to the signature.
    """
    if n < 2 or r < 1:
        raise ValueError("need n >= 2 and r >= 1")
    if r >= 2 and (n - 1) % r:
        raise CongruenceError(f"n={n} is not 1 mod r={r}")
    s = dedekind_sum(r, n)
    defect = 4 * n * s
    closed = defect_closed_form(n, r)
    if defect != closed:
        raise AssertionError(f"defect paths disagree for (n={n}, r={r}): 4n s(r,n) = {defect}, closed form {closed}")
    contribution = Fraction(-(n - 1), r) + defect / n
    return DefectRecord(n, r, s, defect, contribution, Fraction(-2 * n, 3 * r))
