"""Projective lines and points over exact fields, nets, and their combinatorics.

A net here is ``m`` classes of ``d`` lines in the projective plane such that
lines from different classes always meet in a common set ``X`` of ``d**2``
base points, with every base point on exactly one line of each class.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .exact_arith import (
    FieldDescriptor,
    FieldElement,
    is_prime,
    matrix_rank,
    primitive_root_of_unity,
)

__all__ = [
    "CombinatorialNet",
    "InconsistentProfileError",
    "MultiplicityProfile",
    "NetError",
    "NetRealization",
    "NotLatinError",
    "NotOrthogonalError",
    "ProfileCheck",
    "ProjLine",
    "ProjPoint",
    "ValidationReport",
    "class_forms",
    "delete_class",
    "fermat_net",
    "forms_rank",
    "from_latin_squares",
    "hesse_net",
    "line_intersection",
    "load_net",
    "load_profile",
    "multiplicity_profile",
    "net_from_json",
    "net_to_json",
    "pencil_rank",
    "profile_from_json",
    "profile_identities",
    "profile_to_json",
    "smallest_root_prime",
    "validate_net",
]


class NetError(ValueError):
    pass


class InconsistentProfileError(ValueError):
    pass


class NotLatinError(ValueError):
    pass


class NotOrthogonalError(ValueError):
    pass


def _normalized(coords: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
    coords = tuple(coords)
    if len(coords) != 3:
        raise ValueError("projective triples have exactly three coordinates")
    lead = next((c for c in coords if c), None)
    if lead is None:
        raise ValueError("all-zero projective triple")
    inv = lead.inverse()
    return tuple(c * inv for c in coords)


def _fmt(c: FieldElement) -> str:
    v = c.to_json()
    return "(" + ", ".join(v) + ")" if isinstance(v, list) else str(v)


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[FieldElement, ...]

    def __init__(self, coords: Sequence[FieldElement]):
        object.__setattr__(self, "coords", _normalized(coords))

    @property
    def field(self) -> FieldDescriptor:
        return self.coords[0].field

    def __repr__(self):
        return "[" + " : ".join(_fmt(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class ProjLine:
    """The line ``a*x + b*y + c*z = 0``, scaled so its first nonzero coefficient is 1."""

    coeffs: tuple[FieldElement, ...]

    def __init__(self, coeffs: Sequence[FieldElement]):
        object.__setattr__(self, "coeffs", _normalized(coeffs))

    @classmethod
    def from_values(cls, field: FieldDescriptor, values) -> ProjLine:
        return cls([field(v) for v in values])

    @property
    def field(self) -> FieldDescriptor:
        return self.coeffs[0].field

    def contains(self, point: ProjPoint) -> bool:
        a, p = self.coeffs, point.coords
        return not (a[0] * p[0] + a[1] * p[1] + a[2] * p[2])

    def __repr__(self):
        return "Line(" + ", ".join(_fmt(c) for c in self.coeffs) + ")"


def line_intersection(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    c = _cross(l1.coeffs, l2.coeffs)
    if not any(c):
        raise NetError("identical lines have no unique intersection")
    return ProjPoint(c)


@dataclass(frozen=True)
class NetRealization:
    """``m`` classes of ``d`` lines over an exact field.

    Construction only rejects degenerate input (``d < 3``, ``m < 3``, repeated
    lines, mixed fields); the net axioms themselves are checked by
    :func:`validate_net`.
    """

    m: int
    d: int
    classes: tuple[tuple[ProjLine, ...], ...]
    field: FieldDescriptor

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(tuple(c) for c in self.classes))
        if self.d < 3:
            raise NetError(f"nets need d >= 3, got d={self.d}")
        if self.m < 3:
            raise NetError(f"nets need m >= 3, got m={self.m}")
        lines = [l for cls in self.classes for l in cls]
        if any(l.field != self.field for l in lines):
            raise NetError("all lines must be defined over the net's field")
        if len(set(lines)) != len(lines):
            raise NetError("duplicate lines in net")

    @property
    def lines(self) -> list[ProjLine]:
        return [l for cls in self.classes for l in cls]

    @cached_property
    def base_points(self) -> tuple[ProjPoint, ...]:
        """All intersections of lines from different classes, in first-seen order."""
        seen: dict[ProjPoint, None] = {}
        for i, j in itertools.combinations(range(len(self.classes)), 2):
            for a in self.classes[i]:
                for b in self.classes[j]:
                    seen.setdefault(line_intersection(a, b), None)
        return tuple(seen)


@dataclass
class ValidationReport:
    valid: bool
    m: int
    d: int
    num_base_points: int
    violations: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "m": self.m,
            "d": self.d,
            "num_base_points": self.num_base_points,
            "violations": self.violations,
        }


def validate_net(net: NetRealization) -> ValidationReport:
    """Check the net axioms, collecting every violation with a witness."""
    violations: list[dict] = []
    if len(net.classes) != net.m:
        violations.append({"axiom": "class-count", "expected": net.m, "found": len(net.classes)})
    for i, cls in enumerate(net.classes):
        if len(cls) != net.d:
            violations.append({"axiom": "class-size", "class": i, "expected": net.d, "found": len(cls)})

    X = net.base_points
    for x in X:
        for i, cls in enumerate(net.classes):
            through = [j for j, l in enumerate(cls) if l.contains(x)]
            if len(through) != 1:
                violations.append(
                    {"axiom": "unique-line-per-class", "point": repr(x), "class": i, "lines": through}
                )
    if len(X) != net.d**2:
        violations.append({"axiom": "base-point-count", "expected": net.d**2, "found": len(X)})
    for i, cls in enumerate(net.classes):
        for j, l in enumerate(cls):
            k = sum(1 for x in X if l.contains(x))
            if k != net.d:
                violations.append({"axiom": "points-per-line", "class": i, "line": j, "expected": net.d, "found": k})
    return ValidationReport(not violations, net.m, net.d, len(X), violations)


def smallest_root_prime(k: int, minimum: int = 2) -> int:
    """Smallest prime ``p >= minimum`` with ``p = 1 (mod k)``."""
    p = max(minimum, 2)
    while not (is_prime(p) and (p - 1) % k == 0):
        p += 1
    return p


def fermat_net(d: int, field: FieldDescriptor) -> NetRealization:
    """The (3, d)-net cut out by ``x^d - y^d``, ``y^d - z^d`` and ``x^d - z^d``."""
    if d < 3:
        raise NetError(f"nets need d >= 3, got d={d}")
    zeta = primitive_root_of_unity(field, d)
    one, zero = field.one(), field.zero()
    powers = [zeta**i for i in range(d)]
    classes = (
        [ProjLine([one, -z, zero]) for z in powers],
        [ProjLine([zero, one, -z]) for z in powers],
        [ProjLine([one, zero, -z]) for z in powers],
    )
    return NetRealization(3, d, classes, field)


def hesse_net(field: FieldDescriptor) -> NetRealization:
    """The (4, 3)-net: the coordinate triangle plus ``x + w^a y + w^b z`` grouped by ``a + b mod 3``."""
    w = primitive_root_of_unity(field, 3)
    one, zero = field.one(), field.zero()
    triangle = [ProjLine([one, zero, zero]), ProjLine([zero, one, zero]), ProjLine([zero, zero, one])]
    groups: list[list[ProjLine]] = [[], [], []]
    for a in range(3):
        for b in range(3):
            groups[(a + b) % 3].append(ProjLine([one, w**a, w**b]))
    return NetRealization(4, 3, [triangle, *groups], field)


def delete_class(net: NetRealization, i: int) -> NetRealization:
    if net.m <= 3:
        raise NetError("cannot delete a class from a net with m = 3")
    if not 0 <= i < len(net.classes):
        raise IndexError(f"class index {i} out of range for m={net.m}")
    classes = net.classes[:i] + net.classes[i + 1 :]
    out = NetRealization(net.m - 1, net.d, classes, net.field)
    # the surviving classes still meet pairwise in the same base points
    out.__dict__["base_points"] = net.base_points
    return out


# ---------------------------------------------------------------------------
# multiplicity profiles


@dataclass(frozen=True)
class MultiplicityProfile:
    """Counts ``t[r]`` of points lying on exactly ``r >= 2`` lines of one class."""

    m: int
    d: int
    t: Mapping[int, int]

    def __post_init__(self):
        t = {int(r): int(c) for r, c in dict(self.t).items() if int(c) != 0}
        if any(r < 2 for r in t):
            raise ValueError("multiplicities start at r = 2")
        if any(c < 0 for c in t.values()):
            raise ValueError("counts must be nonnegative")
        object.__setattr__(self, "t", dict(sorted(t.items())))

    def __hash__(self):
        return hash((self.m, self.d, tuple(self.t.items())))

    @property
    def f0(self) -> int:
        return sum(self.t.values())

    @property
    def f1(self) -> int:
        return sum(r * c for r, c in self.t.items())

    @property
    def t2(self) -> int:
        return self.t.get(2, 0)

    def higher(self) -> dict[int, int]:
        """The counts for ``r >= 3``."""
        return {r: c for r, c in self.t.items() if r >= 3}


def multiplicity_profile(net: NetRealization) -> MultiplicityProfile:
    X = set(net.base_points)
    t: dict[int, int] = defaultdict(int)
    seen: dict[ProjPoint, int] = {}
    for ci, cls in enumerate(net.classes):
        through: dict[ProjPoint, set[int]] = defaultdict(set)
        for (a, la), (b, lb) in itertools.combinations(enumerate(cls), 2):
            p = line_intersection(la, lb)
            through[p].update((a, b))
        for p, idx in through.items():
            if p in X:
                raise NetError(f"two lines of class {ci} meet at base point {p!r}")
            if p in seen:
                raise NetError(f"point {p!r} is a multiple point of classes {seen[p]} and {ci}")
            others = [
                (cj, j) for cj, other in enumerate(net.classes) if cj != ci
                for j, l in enumerate(other) if l.contains(p)
            ]
            if others:
                raise NetError(f"multiple point {p!r} of class {ci} lies on lines {others} of other classes")
            seen[p] = ci
            t[len(idx)] += 1
    return MultiplicityProfile(net.m, net.d, dict(t))


@dataclass(frozen=True)
class ProfileCheck:
    passed: bool
    pairs_lhs: int
    pairs_rhs: int
    squares_lhs: int
    squares_rhs: int

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "pair_count": {"m*C(d,2)": self.pairs_lhs, "sum t_r*C(r,2)": self.pairs_rhs},
            "square_sum": {"sum r^2 t_r": self.squares_lhs, "md(d-1)+f1": self.squares_rhs},
        }


def profile_identities(profile: MultiplicityProfile) -> ProfileCheck:
    m, d = profile.m, profile.d
    pairs_lhs = m * d * (d - 1) // 2
    pairs_rhs = sum(c * r * (r - 1) // 2 for r, c in profile.t.items())
    squares_lhs = sum(r * r * c for r, c in profile.t.items())
    squares_rhs = m * d * (d - 1) + profile.f1
    ok = pairs_lhs == pairs_rhs and squares_lhs == squares_rhs
    return ProfileCheck(ok, pairs_lhs, pairs_rhs, squares_lhs, squares_rhs)


def require_consistent(profile: MultiplicityProfile) -> None:
    check = profile_identities(profile)
    if not check.passed:
        raise InconsistentProfileError(
            f"profile fails pair count: m*C(d,2)={check.pairs_lhs} vs sum t_r*C(r,2)={check.pairs_rhs}"
        )


# ---------------------------------------------------------------------------
# pencils


def _monomials(d: int) -> list[tuple[int, int, int]]:
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


def class_forms(lines: Sequence[ProjLine]) -> dict[tuple[int, int, int], FieldElement]:
    """Expand the product of the linear forms into a homogeneous form (monomial -> coefficient)."""
    field = lines[0].field
    form = {(0, 0, 0): field.one()}
    for line in lines:
        nxt: dict[tuple[int, int, int], FieldElement] = {}
        for mono, c in form.items():
            for axis, a in enumerate(line.coeffs):
                if not a:
                    continue
                key = list(mono)
                key[axis] += 1
                key = tuple(key)
                nxt[key] = nxt.get(key, field.zero()) + c * a
        form = {k: v for k, v in nxt.items() if v}
    return form


def forms_rank(groups: Sequence[Sequence[ProjLine]]) -> int:
    """Rank of the coefficient matrix of the products of each group of lines."""
    d = len(groups[0])
    if any(len(g) != d for g in groups):
        raise ValueError("all products must have the same degree")
    field = groups[0][0].field
    monos = _monomials(d)
    rows = []
    for g in groups:
        form = class_forms(g)
        rows.append([form.get(mono, field.zero()) for mono in monos])
    return matrix_rank(rows)


def pencil_rank(net: NetRealization) -> int:
    """2 certifies that all class products lie in a single pencil."""
    return forms_rank(net.classes)


# ---------------------------------------------------------------------------
# combinatorial nets


@dataclass(frozen=True)
class CombinatorialNet:
    """Abstract net on point indices ``1..d^2``; each class is a partition into ``d`` blocks."""

    m: int
    d: int
    incidence: tuple[tuple[frozenset[int], ...], ...]

    def check(self) -> None:
        for i, j in itertools.combinations(range(self.m), 2):
            for a in self.incidence[i]:
                for b in self.incidence[j]:
                    if len(a & b) != 1:
                        raise NetError(f"blocks of classes {i} and {j} meet in {len(a & b)} points")


def _check_latin(square: Sequence[Sequence[int]], d: int, index: int) -> None:
    symbols = set(range(d))
    if len(square) != d or any(len(row) != d for row in square):
        raise NotLatinError(f"square {index} is not {d}x{d}")
    for row in square:
        if set(row) != symbols:
            raise NotLatinError(f"square {index} has a row that is not a permutation of 0..{d - 1}")
    for col in zip(*square):
        if set(col) != symbols:
            raise NotLatinError(f"square {index} has a column that is not a permutation of 0..{d - 1}")


def from_latin_squares(squares: Sequence[Sequence[Sequence[int]]]) -> CombinatorialNet:
    """Rows, columns and the level sets of each square, on cells numbered ``i*d + j + 1``."""
    if not squares:
        raise ValueError("need at least one Latin square")
    d = len(squares[0])
    if d < 3:
        raise NetError(f"nets need d >= 3, got d={d}")
    for k, sq in enumerate(squares):
        _check_latin(sq, d, k)
    for a, b in itertools.combinations(range(len(squares)), 2):
        pairs = {(squares[a][i][j], squares[b][i][j]) for i in range(d) for j in range(d)}
        if len(pairs) != d * d:
            raise NotOrthogonalError(f"squares {a} and {b} are not orthogonal")

    def cell(i, j):
        return i * d + j + 1

    rows = tuple(frozenset(cell(i, j) for j in range(d)) for i in range(d))
    cols = tuple(frozenset(cell(i, j) for i in range(d)) for j in range(d))
    classes = [rows, cols]
    for sq in squares:
        classes.append(
            tuple(frozenset(cell(i, j) for i in range(d) for j in range(d) if sq[i][j] == s) for s in range(d))
        )
    net = CombinatorialNet(len(classes), d, tuple(classes))
    net.check()
    return net


# ---------------------------------------------------------------------------
# JSON formats


def net_to_json(net: NetRealization) -> dict:
    return {
        "m": net.m,
        "d": net.d,
        "field": net.field.to_json(),
        "classes": [[[c.to_json() for c in line.coeffs] for line in cls] for cls in net.classes],
    }


def net_from_json(obj: dict) -> NetRealization:
    field = FieldDescriptor.from_json(obj["field"])
    classes = [[ProjLine.from_values(field, coeffs) for coeffs in cls] for cls in obj["classes"]]
    return NetRealization(int(obj["m"]), int(obj["d"]), classes, field)


def profile_to_json(profile: MultiplicityProfile) -> dict:
    return {"m": profile.m, "d": profile.d, "t": {str(r): c for r, c in profile.t.items()}}


def profile_from_json(obj: dict) -> MultiplicityProfile:
    return MultiplicityProfile(int(obj["m"]), int(obj["d"]), {int(r): int(c) for r, c in obj["t"].items()})


def load_net(path) -> NetRealization:
    with open(path) as f:
        return net_from_json(json.load(f))


def load_profile(path) -> MultiplicityProfile:
    with open(path) as f:
        return profile_from_json(json.load(f))
