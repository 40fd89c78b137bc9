import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from netcert.exact_arith import FieldDescriptor, UnsupportedFieldError
from netcert.net_geometry import (
    MultiplicityProfile,
    NetError,
    NetRealization,
    NotLatinError,
    NotOrthogonalError,
    ProjLine,
    ProjPoint,
    delete_class,
    fermat_net,
    forms_rank,
    from_latin_squares,
    hesse_net,
    line_intersection,
    multiplicity_profile,
    net_from_json,
    net_to_json,
    pencil_rank,
    profile_from_json,
    profile_identities,
    profile_to_json,
    smallest_root_prime,
    validate_net,
)

from .conftest import DELETED_HESSE_PROFILE, FERMAT3_PROFILE, HESSE_PROFILE, consistent_profiles

Q = FieldDescriptor.rational()
C3 = FieldDescriptor.cyclotomic(3)


def line(field, *vals):
    return ProjLine.from_values(field, vals)


def point(field, *vals):
    return ProjPoint([field(v) for v in vals])


def test_intersections():
    assert line_intersection(line(Q, 1, 0, 0), line(Q, 0, 1, 0)) == point(Q, 0, 0, 1)
    assert line_intersection(line(Q, 1, -1, 0), line(Q, 0, 1, -1)) == point(Q, 1, 1, 1)
    w = C3.gen()
    l2 = ProjLine([C3.one(), -w, C3.zero()])
    assert line_intersection(line(C3, 1, -1, 0), l2) == point(C3, 0, 0, 1)
    with pytest.raises(NetError):
        line_intersection(line(Q, 1, 2, 3), line(Q, 2, 4, 6))


def test_normalization_makes_equality_projective():
    assert line(Q, 2, 4, 6) == line(Q, 1, 2, 3)
    assert point(Q, 0, 3, -3) == point(Q, 0, 1, -1)
    assert hash(point(Q, 0, 3, -3)) == hash(point(Q, 0, 1, -1))


def test_hesse_net(hesse):
    report = validate_net(hesse)
    assert report.valid and report.num_base_points == 9
    assert multiplicity_profile(hesse) == HESSE_PROFILE
    assert pencil_rank(hesse) == 2


def test_hesse_base_points_are_common_zeros_of_triangles(hesse):
    # every base point lies on exactly one line of each of the four triangles
    for x in hesse.base_points:
        assert [sum(l.contains(x) for l in cls) for cls in hesse.classes] == [1, 1, 1, 1]


def test_hesse_over_prime_field():
    net = hesse_net(FieldDescriptor.prime(13))
    assert validate_net(net).valid
    assert multiplicity_profile(net) == HESSE_PROFILE
    with pytest.raises(UnsupportedFieldError):
        hesse_net(FieldDescriptor.prime(5))


def test_fermat3(fermat3):
    assert validate_net(fermat3).valid
    w = C3.gen()
    expected = {ProjPoint([w**a, C3.one(), w**b]) for a in range(3) for b in range(3)}
    assert set(fermat3.base_points) == expected
    prof = multiplicity_profile(fermat3)
    assert prof == FERMAT3_PROFILE and prof.f0 == 3 and prof.f1 == 9


def test_fermat_prime_and_errors():
    net = fermat_net(3, FieldDescriptor.prime(7))
    assert validate_net(net).valid
    assert net.classes[0][1] == line(FieldDescriptor.prime(7), 1, -2, 0)
    with pytest.raises(UnsupportedFieldError):
        fermat_net(5, FieldDescriptor.prime(7))
    with pytest.raises(NetError):
        fermat_net(2, FieldDescriptor.prime(7))


@pytest.mark.parametrize("d", range(3, 9))
def test_fermat_profiles_agree_across_fields(d):
    cyc = fermat_net(d, FieldDescriptor.cyclotomic(d))
    fp = fermat_net(d, FieldDescriptor.prime(smallest_root_prime(d, d + 2)))
    for net in (cyc, fp):
        report = validate_net(net)
        assert report.valid and report.num_base_points == d * d
        for x in net.base_points:
            assert sum(l.contains(x) for l in net.lines) == 3
    assert multiplicity_profile(cyc) == multiplicity_profile(fp) == MultiplicityProfile(3, d, {d: 3})


def test_perturbed_fermat_is_invalid(fermat3):
    classes = [list(c) for c in fermat3.classes]
    classes[0][0] = line(C3, 1, 5, 7)
    bad = NetRealization(3, 3, classes, C3)
    report = validate_net(bad)
    assert not report.valid
    assert any(v["axiom"] == "unique-line-per-class" for v in report.violations)


def test_duplicate_lines_rejected():
    l = line(Q, 1, 0, 0)
    with pytest.raises(NetError):
        NetRealization(3, 3, [[l, line(Q, 0, 1, 0), line(Q, 0, 0, 1)], [l, line(Q, 1, 1, 0), line(Q, 1, 2, 0)],
                              [line(Q, 1, 3, 0), line(Q, 1, 4, 0), line(Q, 1, 5, 0)]], Q)


def test_delete_class(hesse, fermat3):
    dh = delete_class(hesse, 0)
    assert validate_net(dh).valid
    assert set(dh.base_points) == set(hesse.base_points)
    assert multiplicity_profile(dh) == DELETED_HESSE_PROFILE
    d2 = delete_class(hesse, 2)
    assert validate_net(d2).valid and d2.m == 3
    with pytest.raises(NetError):
        delete_class(fermat3, 0)
    with pytest.raises(IndexError):
        delete_class(hesse, 4)


def test_deleted_hesse_recomputes_base_points(hesse):
    # the cached base points handed down by delete_class match a fresh computation
    dh = delete_class(hesse, 1)
    fresh = NetRealization(dh.m, dh.d, dh.classes, dh.field)
    assert set(fresh.base_points) == set(dh.base_points)


def _complex_forms_rank(groups):
    # floating-point oracle: expand products numerically and take an SVD rank
    def expand(lines):
        poly = {(0, 0, 0): 1 + 0j}
        for a in lines:
            nxt = {}
            for mono, c in poly.items():
                for axis in range(3):
                    key = list(mono)
                    key[axis] += 1
                    nxt[tuple(key)] = nxt.get(tuple(key), 0) + c * a[axis]
            poly = nxt
        return poly

    polys = [expand(g) for g in groups]
    monos = sorted(set().union(*polys))
    mat = np.array([[p.get(m, 0) for m in monos] for p in polys])
    s = np.linalg.svd(mat, compute_uv=False)
    return int((s > 1e-9 * s[0]).sum())


def test_pencil_rank_against_complex_oracle():
    w = np.exp(2j * np.pi / 3)
    triangle = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    groups = [[(1, w**a, w**b) for a in range(3) for b in range(3) if (a + b) % 3 == c] for c in range(3)]
    assert _complex_forms_rank([triangle, *groups]) == 2
    assert pencil_rank(hesse_net(C3)) == 2


@pytest.mark.parametrize("d", range(3, 7))
def test_fermat_pencil_rank(d):
    net = fermat_net(d, FieldDescriptor.cyclotomic(d))
    assert pencil_rank(net) == 2
    for i in range(3):
        sub = [c for j, c in enumerate(net.classes) if j != i]
        assert forms_rank(sub) == 2


def test_random_products_have_full_rank():
    rng = random.Random(3)
    groups = [[line(Q, *(Fraction(rng.randint(-9, 9)) for _ in range(3))) for _ in range(3)] for _ in range(3)]
    assert forms_rank(groups) == 3


def test_latin_squares():
    cyclic = [[(i + j) % 3 for j in range(3)] for i in range(3)]
    other = [[(2 * i + j) % 3 for j in range(3)] for i in range(3)]
    net3 = from_latin_squares([cyclic])
    assert (net3.m, net3.d) == (3, 3)
    net4 = from_latin_squares([cyclic, other])
    assert (net4.m, net4.d) == (4, 3)
    assert all(len(block) == 3 for cls in net4.incidence for block in cls)
    with pytest.raises(NotOrthogonalError, match="0 and 1"):
        from_latin_squares([cyclic, cyclic])
    with pytest.raises(NotLatinError):
        from_latin_squares([[[0, 0, 1], [1, 2, 0], [2, 1, 2]]])


def test_profile_identities_examples():
    check = profile_identities(HESSE_PROFILE)
    assert check.passed and check.pairs_lhs == check.pairs_rhs == 12
    check = profile_identities(FERMAT3_PROFILE)
    assert check.passed and check.pairs_lhs == 9
    bad = profile_identities(MultiplicityProfile(4, 4, {2: 10}))
    assert not bad.passed and (bad.pairs_lhs, bad.pairs_rhs) == (24, 10)


@settings(max_examples=200, deadline=None)
@given(consistent_profiles())
def test_square_sum_identity_on_random_profiles(profile):
    check = profile_identities(profile)
    assert check.passed
    assert sum(r * r * c for r, c in profile.t.items()) == profile.m * profile.d * (profile.d - 1) + profile.f1


@pytest.mark.parametrize(
    "field",
    [FieldDescriptor.cyclotomic(3), FieldDescriptor.prime(13), FieldDescriptor.rational()],
    ids=str,
)
def test_net_json_roundtrip(field):
    if field.kind == "rational":
        net = NetRealization(
            3, 3,
            [[line(Q, 1, Fraction(-k, 2), 0) for k in range(3)],
             [line(Q, 0, 1, -k) for k in range(3)],
             [line(Q, 1, 1, k) for k in range(3)]],
            Q,
        )
    else:
        net = hesse_net(field)
    obj = json.loads(json.dumps(net_to_json(net)))
    assert net_from_json(obj) == net


def test_net_json_format():
    obj = net_to_json(fermat_net(3, FieldDescriptor.prime(7)))
    assert obj["field"] == {"kind": "prime", "p": 7}
    assert obj["classes"][0][1] == [1, 5, 0]
    obj = net_to_json(hesse_net(C3))
    assert obj["field"] == {"kind": "cyclotomic", "k": 3}
    assert obj["classes"][0][0] == [["1/1", "0/1"], ["0/1", "0/1"], ["0/1", "0/1"]]


def test_profile_json_roundtrip():
    obj = profile_to_json(HESSE_PROFILE)
    assert obj == {"m": 4, "d": 3, "t": {"2": 12}}
    assert profile_from_json(json.loads(json.dumps(obj))) == HESSE_PROFILE
