"""Intersection numbers on the plane blown up at the ``d^2`` base points of a net.

Divisor classes are integer combinations of the pulled-back line class ``L``,
the exceptional curves ``E_1 .. E_{d^2}`` and, after the second blow-up at
the multiple points, the curves ``F_p``. The basis is orthogonal with
``L^2 = 1`` and ``E_i^2 = F_p^2 = -1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .net_geometry import MultiplicityProfile, require_consistent

__all__ = [
    "BasisMismatchError",
    "DivisorClass",
    "SurfaceInvariants",
    "canonical_class",
    "chern_numbers",
    "euler_chars",
    "fiber_class",
    "intersect",
    "strict_transform",
]


class BasisMismatchError(ValueError):
    pass


def _sparse(coeffs: Mapping[int, int]) -> dict[int, int]:
    return {int(k): int(v) for k, v in coeffs.items() if v}


@dataclass(frozen=True)
class DivisorClass:
    """Sparse class ``L_coeff*L + sum E[i]*E_i + sum F[p]*F_p``.

    ``E`` is indexed by ``1..d^2``; ``F`` by ``1..num_f`` where ``num_f`` is
    the number of multiple points blown up (0 on ``S`` itself).
    """

    d: int
    coeff_L: int = 0
    coeff_E: Mapping[int, int] = field(default_factory=dict)
    coeff_F: Mapping[int, int] = field(default_factory=dict)
    num_f: int = 0

    def __post_init__(self):
        e, f = _sparse(self.coeff_E), _sparse(self.coeff_F)
        if any(not 1 <= i <= self.d**2 for i in e):
            raise BasisMismatchError(f"E index out of range 1..{self.d ** 2}")
        if any(not 1 <= i <= self.num_f for i in f):
            raise BasisMismatchError(f"F index out of range 1..{self.num_f}")
        object.__setattr__(self, "coeff_E", e)
        object.__setattr__(self, "coeff_F", f)

    def _check(self, other: DivisorClass) -> None:
        if (self.d, self.num_f) != (other.d, other.num_f):
            raise BasisMismatchError(
                f"classes live on different surfaces: (d={self.d}, #F={self.num_f}) "
                f"vs (d={other.d}, #F={other.num_f})"
            )

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        e = dict(self.coeff_E)
        for i, c in other.coeff_E.items():
            e[i] = e.get(i, 0) + c
        f = dict(self.coeff_F)
        for i, c in other.coeff_F.items():
            f[i] = f.get(i, 0) + c
        return DivisorClass(self.d, self.coeff_L + other.coeff_L, e, f, self.num_f)

    def __rmul__(self, k: int) -> DivisorClass:
        return DivisorClass(
            self.d,
            k * self.coeff_L,
            {i: k * c for i, c in self.coeff_E.items()},
            {i: k * c for i, c in self.coeff_F.items()},
            self.num_f,
        )

    def __neg__(self) -> DivisorClass:
        return -1 * self

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return self + (-other)

    def __mul__(self, other: DivisorClass) -> int:
        return intersect(self, other)

    @classmethod
    def line(cls, d: int, num_f: int = 0) -> DivisorClass:
        return cls(d, 1, num_f=num_f)

    @classmethod
    def exceptional(cls, d: int, i: int, num_f: int = 0) -> DivisorClass:
        return cls(d, 0, {i: 1}, num_f=num_f)


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    a._check(b)
    total = a.coeff_L * b.coeff_L
    total -= sum(c * b.coeff_E.get(i, 0) for i, c in a.coeff_E.items())
    total -= sum(c * b.coeff_F.get(i, 0) for i, c in a.coeff_F.items())
    return total


def canonical_class(d: int) -> DivisorClass:
    """``-3L + sum E_i`` on the plane blown up at ``d^2`` points."""
    if d < 3:
        raise ValueError("d must be >= 3")
    return DivisorClass(d, -3, {i: 1 for i in range(1, d * d + 1)})


def fiber_class(d: int) -> DivisorClass:
    """Total transform of a degree-d member of the pencil: ``dL - sum E_i``."""
    return DivisorClass(d, d, {i: -1 for i in range(1, d * d + 1)})


def strict_transform(d: int, base_point_indices: Iterable[int]) -> DivisorClass:
    """Strict transform of a line through the given blown-up points."""
    return DivisorClass(d, 1, {i: -1 for i in base_point_indices})


def chern_numbers(d: int) -> tuple[int, int]:
    """``(c1^2, c2)`` of the blown-up plane, with ``c1^2 = K^2`` computed in the lattice."""
    k = canonical_class(d)
    return intersect(k, k), 3 + d * d


@dataclass(frozen=True)
class SurfaceInvariants:
    c1_sq: int
    c2: int
    e_S: int
    e_Shat: int
    e_W: int
    e_What: int
    e_Shat_minus_What: int
    sigma_S: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def euler_chars(profile: MultiplicityProfile) -> SurfaceInvariants:
    """Euler characteristics of the surfaces and fiber arrangements, from ``t_r`` alone."""
    require_consistent(profile)
    m, d = profile.m, profile.d
    f0, f1, t2 = profile.f0, profile.f1, profile.t2
    c1_sq, c2 = chern_numbers(d)
    e_S = c2
    e_Shat = e_S + f0 - t2
    e_W = 2 * m * d - sum(c * (r - 1) for r, c in profile.t.items())
    assert e_W == 2 * m * d - f1 + f0
    e_What = e_W + f0 - t2
    diff = e_Shat - e_What
    assert diff == 3 + d * d - 2 * m * d + f1 - f0
    sigma_S = 1 - d * d
    assert 3 * sigma_S == c1_sq - 2 * c2
    return SurfaceInvariants(c1_sq, c2, e_S, e_Shat, e_W, e_What, diff, sigma_S)
