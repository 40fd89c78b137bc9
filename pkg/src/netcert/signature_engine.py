"""Two independent evaluations of the signature of the branched cover ``Y``.

Both are leading coefficients of ``n^(m-1)``:

* the Chern route, ``(K_Y^2 - 2 e(Y)) / 3`` with the leading terms of
  ``e(Y)`` and ``K_Y^2``;
* the fibration route, ``-a - (2/3) f0`` where ``-a`` is the signature of the
  complement of neighborhoods of the ``m`` special fibers.

The comparison between them is reported, never enforced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .divisor_lattice import euler_chars
from .exact_arith import format_fraction, signature_of_symmetric_matrix
from .hj_chains import delta_q_squared, require_admissible
from .net_geometry import MultiplicityProfile, profile_to_json, require_consistent

__all__ = [
    "SignatureReport",
    "consistency_report",
    "delta_squared_total",
    "euler_leading",
    "fiber_neighborhood_signature",
    "ky2_exact",
    "ky2_leading",
    "sigma_chern_route",
    "sigma_complement",
    "sigma_fibration_route",
]


def euler_leading(profile: MultiplicityProfile) -> int:
    """Coefficient of ``n^(m-1)`` in ``e(Y)``: ``3 + d^2 - 2md + f1``."""
    require_consistent(profile)
    m, d = profile.m, profile.d
    value = 3 + d * d - 2 * m * d + profile.f1
    # resolving the chains adds f0 to e(S^ - W^)
    assert value == euler_chars(profile).e_Shat_minus_What + profile.f0
    return value


def ky2_leading(profile: MultiplicityProfile) -> int:
    """Coefficient of ``n^(m-1)`` in ``K_Y^2``."""
    require_consistent(profile)
    m, d = profile.m, profile.d
    return m * d * d - 5 * m * d - d * d + 9 + 3 * profile.f1 - 4 * profile.f0


def sigma_chern_route(profile: MultiplicityProfile) -> Fraction:
    m, d = profile.m, profile.d
    value = Fraction((m - 3) * d * d - m * d + 3 + profile.f1 - 4 * profile.f0, 3)
    if value != Fraction(ky2_leading(profile) - 2 * euler_leading(profile), 3):
        raise AssertionError("closed form disagrees with (K^2 - 2e)/3")
    return value


def fiber_neighborhood_signature(d: int) -> int:
    """Signature of the intersection form of the ``d`` lines of one special fiber.

    Each line has self-intersection ``1 - d`` and distinct lines meet once.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    matrix = [[1 - d if i == j else 1 for j in range(d)] for i in range(d)]
    sig = signature_of_symmetric_matrix(matrix).signature
    assert sig == 1 - d
    return sig


def sigma_complement(m: int, d: int) -> int:
    """Signature of the fibration over the sphere minus ``m`` discs: ``(1-d)(1-m+d)``."""
    if m < 3 or d < 3:
        raise ValueError("need m >= 3 and d >= 3")
    sigma_s = 1 - d * d
    value = sigma_s - m * fiber_neighborhood_signature(d)
    if value != (1 - d) * (1 - m + d):
        raise AssertionError("additivity value disagrees with the factored form")
    return value


def sigma_fibration_route(profile: MultiplicityProfile) -> tuple[Fraction, bool]:
    """``-a - (2/3) f0`` and whether ``d > m - 1`` (the hypothesis under which it is derived)."""
    require_consistent(profile)
    m, d = profile.m, profile.d
    s = sigma_complement(m, d)
    applicable = d > m - 1
    if applicable and s > -1:
        raise AssertionError(f"complement signature {s} should be negative for d > m - 1")
    return Fraction(s) - Fraction(2 * profile.f0, 3), applicable


def delta_squared_total(profile: MultiplicityProfile, n: int) -> Fraction:
    """Sum of the discrepancy self-intersections over all chains above points with ``r >= 3``."""
    require_admissible(profile, n)
    scale = n ** (profile.m - 2)
    total = sum((scale * r * c * delta_q_squared(n, r) for r, c in profile.higher().items()), Fraction(0))
    bound = scale * sum(r * c * (r + 3) for r, c in profile.higher().items())
    assert abs(total) <= bound
    return total


def ky2_bracket(profile: MultiplicityProfile, n: int) -> Fraction:
    m, d = profile.m, profile.d
    q = Fraction(n - 1, n)
    value = (-3 + m * d * q) ** 2 - (1 - m * q) ** 2 * d * d
    value -= sum((c * (1 + q * (1 - r)) ** 2 for r, c in profile.higher().items()), Fraction(0))
    return value


def ky2_exact(profile: MultiplicityProfile, n: int) -> Fraction:
    """``K_Y^2`` at a finite admissible prime ``n``, including the discrepancy term."""
    require_consistent(profile)
    require_admissible(profile, n)
    return n ** (profile.m - 1) * ky2_bracket(profile, n) + delta_squared_total(profile, n)


@dataclass
class SignatureReport:
    profile: MultiplicityProfile
    e_leading: int
    ky2_leading: int
    chern_coeff: Fraction
    sigma_t_hat: int
    a: int
    fibration_value: Fraction
    fibration_applicable: bool
    genus: int
    match: bool
    flags: list[str] = field(default_factory=list)
    n: int | None = None
    ky2_exact: Fraction | None = None
    delta_sq: Fraction | None = None

    def to_json(self) -> dict:
        out = {
            "profile": profile_to_json(self.profile),
            "e_leading": self.e_leading,
            "ky2_leading": self.ky2_leading,
            "chern_coeff": format_fraction(self.chern_coeff),
            "sigma_t_hat": self.sigma_t_hat,
            "a": self.a,
            "fibration_value": format_fraction(self.fibration_value),
            "fibration_applicable": self.fibration_applicable,
            "genus": self.genus,
            "match": self.match,
            "flags": list(self.flags),
        }
        if self.n is not None:
            out["n"] = self.n
            out["ky2_exact"] = format_fraction(self.ky2_exact)
            out["delta_sq"] = format_fraction(self.delta_sq)
        return out


def consistency_report(profile: MultiplicityProfile, n: int | None = None) -> SignatureReport:
    """Evaluate both routes; ``n`` optionally adds the exact ``K_Y^2`` at that prime."""
    require_consistent(profile)
    m, d = profile.m, profile.d
    chern = sigma_chern_route(profile)
    fib, applicable = sigma_fibration_route(profile)
    s = sigma_complement(m, d)
    flags = []
    if not applicable:
        flags.append("out-of-hypothesis: d <= m - 1")
    if chern != fib:
        flags.append(f"routes-disagree: chern {chern} vs fibration {fib}")
    report = SignatureReport(
        profile=profile,
        e_leading=euler_leading(profile),
        ky2_leading=ky2_leading(profile),
        chern_coeff=chern,
        sigma_t_hat=s,
        a=-s,
        fibration_value=fib,
        fibration_applicable=applicable,
        genus=(d - 1) * (d - 2) // 2,
        match=chern == fib,
        flags=flags,
    )
    if n is not None:
        report.n = n
        report.ky2_exact = ky2_exact(profile, n)
        report.delta_sq = delta_squared_total(profile, n)
    return report
