import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings

from netcert.hj_chains import InadmissiblePrimeError
from netcert.net_geometry import InconsistentProfileError, MultiplicityProfile, multiplicity_profile
from netcert.signature_engine import (
    consistency_report,
    delta_squared_total,
    euler_leading,
    fiber_neighborhood_signature,
    ky2_exact,
    ky2_leading,
    sigma_chern_route,
    sigma_complement,
    sigma_fibration_route,
)

from .conftest import DELETED_HESSE_PROFILE, FERMAT3_PROFILE, HESSE_PROFILE, consistent_profiles


@pytest.mark.parametrize(
    "profile, expected",
    [(HESSE_PROFILE, (12, 0, -8)), (FERMAT3_PROFILE, (3, -3, -3)), (DELETED_HESSE_PROFILE, (12, 0, -8))],
)
def test_chern_route_fixtures(profile, expected):
    assert (euler_leading(profile), ky2_leading(profile), sigma_chern_route(profile)) == expected


def test_fixture_profiles_come_from_geometry(hesse, deleted_hesse, fermat3):
    assert multiplicity_profile(hesse) == HESSE_PROFILE
    assert multiplicity_profile(deleted_hesse) == DELETED_HESSE_PROFILE
    assert multiplicity_profile(fermat3) == FERMAT3_PROFILE


@settings(max_examples=200, deadline=None)
@given(consistent_profiles())
def test_chern_route_is_polynomial_identity(profile):
    m, d = profile.m, profile.d
    value = sigma_chern_route(profile)
    assert value == Fraction(ky2_leading(profile) - 2 * euler_leading(profile), 3)
    assert value == Fraction((m - 3) * d * d - m * d + 3 + profile.f1 - 4 * profile.f0, 3)


@pytest.mark.parametrize("d", range(2, 13))
def test_fiber_neighborhood_signature(d):
    assert fiber_neighborhood_signature(d) == 1 - d


def test_sigma_complement_grid():
    for m in range(3, 13):
        for d in range(3, 13):
            assert sigma_complement(m, d) == (1 - d) * (1 - m + d)
    assert (sigma_complement(4, 4), sigma_complement(3, 3), sigma_complement(4, 3)) == (-3, -2, 0)


@pytest.mark.parametrize(
    "profile, value, applicable",
    [(HESSE_PROFILE, -8, False), (DELETED_HESSE_PROFILE, -8, True), (FERMAT3_PROFILE, -4, True)],
)
def test_fibration_route_fixtures(profile, value, applicable):
    assert sigma_fibration_route(profile) == (value, applicable)


def test_reports():
    hesse = consistency_report(HESSE_PROFILE)
    assert hesse.match and hesse.flags == ["out-of-hypothesis: d <= m - 1"] and hesse.a == 0
    deleted = consistency_report(DELETED_HESSE_PROFILE)
    assert deleted.match and deleted.flags == []
    fermat = consistency_report(FERMAT3_PROFILE)
    assert not fermat.match
    assert fermat.flags == ["routes-disagree: chern -3 vs fibration -4"]
    assert fermat.genus == 1


def test_report_json():
    obj = json.loads(json.dumps(consistency_report(FERMAT3_PROFILE, 7).to_json()))
    assert obj["chern_coeff"] == "-3/1" and obj["fibration_value"] == "-4/1"
    assert obj["ky2_exact"] == "-147/1" and obj["delta_sq"] == "-72/1"
    assert obj["profile"] == {"m": 3, "d": 3, "t": {"3": 3}}


@pytest.mark.parametrize(
    "profile, n, ky2, delta",
    [
        (HESSE_PROFILE, 7, 0, 0),
        (DELETED_HESSE_PROFILE, 5, 0, 0),
        (FERMAT3_PROFILE, 7, -147, -72),
        (FERMAT3_PROFILE, 13, -507, -144),
    ],
)
def test_ky2_exact_examples(profile, n, ky2, delta):
    assert ky2_exact(profile, n) == ky2
    assert delta_squared_total(profile, n) == delta


def _admissible(profile, count):
    rs = list(profile.higher())
    return [p for p in sympy.primerange(2, 2000) if all((p - 1) % r == 0 for r in rs)][:count]


@pytest.mark.parametrize("profile", [HESSE_PROFILE, DELETED_HESSE_PROFILE, FERMAT3_PROFILE], ids=str)
def test_ky2_exact_converges_to_leading(profile):
    c = 40
    for n in _admissible(profile, 4):
        ratio = ky2_exact(profile, n) / Fraction(n ** (profile.m - 1))
        assert abs(ratio - ky2_leading(profile)) <= Fraction(c, n)


@pytest.mark.parametrize("profile", [HESSE_PROFILE, DELETED_HESSE_PROFILE], ids=str)
def test_double_point_profiles_have_no_discrepancy(profile):
    for n in _admissible(profile, 4):
        assert delta_squared_total(profile, n) == 0


def test_mixed_profile():
    profile = MultiplicityProfile(5, 4, {3: 1, 4: 1, 2: 21})
    # per-chain value -t(r-1)^2/n with t = 12/r at n = 13, weighted by r * t_r
    per_chain = {r: Fraction(-(12 // r) * (r - 1) ** 2, 13) for r in (3, 4)}
    assert per_chain == {3: Fraction(-16, 13), 4: Fraction(-27, 13)}
    assert delta_squared_total(profile, 13) == 13**3 * (3 * per_chain[3] + 4 * per_chain[4])
    with pytest.raises(InadmissiblePrimeError):
        delta_squared_total(profile, 7)


def test_inconsistent_rejected():
    with pytest.raises(InconsistentProfileError):
        consistency_report(MultiplicityProfile(4, 4, {2: 10}))
