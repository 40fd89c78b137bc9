"""Exact field arithmetic and exact inertia of symmetric rational matrices.

Three kinds of fields are supported: the rationals, prime fields ``F_p`` and
cyclotomic fields ``Q(zeta_k)`` stored as coefficient vectors modulo the
k-th cyclotomic polynomial. Rational numbers are :class:`fractions.Fraction`
throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "FieldDescriptor",
    "FieldElement",
    "FieldMismatchError",
    "Inertia",
    "SymmetricMatrix",
    "UnsupportedFieldError",
    "cyclotomic_polynomial",
    "is_prime",
    "matrix_rank",
    "parse_fraction",
    "format_fraction",
    "primitive_root_of_unity",
    "signature_of_symmetric_matrix",
]


class UnsupportedFieldError(ValueError):
    """The requested field cannot host the construction (e.g. no k-th root of unity)."""


class FieldMismatchError(TypeError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def parse_fraction(text) -> Fraction:
    """Parse ``"num/den"``, ``"num"`` or an int into a Fraction."""
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise TypeError(f"cannot parse rational from {text!r}")


def format_fraction(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# polynomials (lists of coefficients, lowest degree first)


def _trim(poly: list) -> list:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Division with remainder; exact over Q, and over Z when ``b`` is monic."""
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = _trim(list(a))
    lead = b[-1]
    if len(rem) < len(b):
        return [], rem
    quot = [0] * (len(rem) - len(b) + 1)
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        c = rem[-1] / lead if lead != 1 else rem[-1]
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] -= c * y
        _trim(rem)
    return _trim(quot), rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(k: int) -> tuple[int, ...]:
    """Integer coefficients of the k-th cyclotomic polynomial, lowest degree first.

    Obtained by exact division of ``x^k - 1`` by the cyclotomic polynomials of
    the proper divisors of ``k``.

    >>> cyclotomic_polynomial(3)
    (1, 1, 1)
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    num = [-1] + [0] * (k - 1) + [1]
    for d in range(1, k):
        if k % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return tuple(int(c) for c in num)


def _poly_inverse_mod(a: Sequence[Fraction], modulus: Sequence[int]) -> list[Fraction]:
    # extended Euclid over Q[x]; modulus is irreducible so gcd is a constant
    r0, r1 = [Fraction(c) for c in modulus], _trim([Fraction(c) for c in a])
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        qs = _poly_mul(q, s1)
        s_new = [Fraction(0)] * max(len(s0), len(qs))
        for i, c in enumerate(s0):
            s_new[i] += c
        for i, c in enumerate(qs):
            s_new[i] -= c
        s0, s1 = s1, _trim(s_new)
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class FieldDescriptor:
    """Which field an element lives in: ``rational``, ``prime`` (p) or ``cyclotomic`` (k)."""

    kind: str
    p: int | None = None
    k: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None or self.k is not None:
                raise ValueError("rational field takes no parameters")
        elif self.kind == "prime":
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"prime field needs a prime modulus, got {self.p!r}")
        elif self.kind == "cyclotomic":
            if self.k is None or self.k < 1:
                raise ValueError(f"cyclotomic conductor must be >= 1, got {self.k!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> FieldDescriptor:
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> FieldDescriptor:
        return cls("prime", p=p)

    @classmethod
    def cyclotomic(cls, k: int) -> FieldDescriptor:
        return cls("cyclotomic", k=k)

    @property
    def degree(self) -> int:
        """Degree over the prime field."""
        if self.kind == "cyclotomic":
            return len(cyclotomic_polynomial(self.k)) - 1
        return 1

    def __call__(self, value) -> FieldElement:
        return FieldElement(self, value)

    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def gen(self) -> FieldElement:
        """The residue of x in Q[x]/(Phi_k)."""
        if self.kind != "cyclotomic":
            raise UnsupportedFieldError("only cyclotomic fields have a generator")
        return FieldElement(self, [0, 1])

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "prime":
            out["p"] = self.p
        elif self.kind == "cyclotomic":
            out["k"] = self.k
        return out

    @classmethod
    def from_json(cls, obj: dict) -> FieldDescriptor:
        kind = obj["kind"]
        if kind == "rational":
            return cls.rational()
        if kind == "prime":
            return cls.prime(int(obj["p"]))
        if kind == "cyclotomic":
            return cls.cyclotomic(int(obj["k"]))
        raise ValueError(f"unknown field kind {kind!r}")

    def __str__(self):
        if self.kind == "prime":
            return f"GF({self.p})"
        if self.kind == "cyclotomic":
            return f"Q(zeta_{self.k})"
        return "Q"


class FieldElement:
    """An immutable exact element of a :class:`FieldDescriptor`.

    ``value`` is a Fraction (rational), an int in ``range(p)`` (prime), or a
    tuple of ``degree`` Fractions reduced modulo the cyclotomic polynomial.
    Plain ints and Fractions are coerced in arithmetic.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: FieldDescriptor, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", self._normalize(field, value))

    @staticmethod
    def _normalize(field: FieldDescriptor, value):
        if isinstance(value, FieldElement):
            if value.field != field:
                raise FieldMismatchError(f"{value.field} element used in {field}")
            return value.value
        if field.kind == "rational":
            return parse_fraction(value)
        if field.kind == "prime":
            if isinstance(value, (Fraction, str)):
                q = parse_fraction(value)
                return q.numerator * pow(q.denominator, -1, field.p) % field.p
            return int(value) % field.p
        # cyclotomic
        phi = cyclotomic_polynomial(field.k)
        if isinstance(value, (int, Fraction, str)):
            coeffs = [parse_fraction(value)]
        else:
            coeffs = [parse_fraction(c) for c in value]
        if len(coeffs) >= len(phi):
            _, coeffs = _poly_divmod(coeffs, phi)
        deg = len(phi) - 1
        coeffs = list(coeffs) + [Fraction(0)] * (deg - len(coeffs))
        return tuple(Fraction(c) for c in coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FieldElement(self.field, other)
        return None

    def _new(self, value) -> FieldElement:
        return FieldElement(self.field, value)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.field.kind == "cyclotomic":
            return self._new([a + b for a, b in zip(self.value, other.value)])
        return self._new(self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        if self.field.kind == "cyclotomic":
            return self._new([-a for a in self.value])
        return self._new(-self.value)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.field.kind == "cyclotomic":
            return self._new(_poly_mul(self.value, other.value))
        return self._new(self.value * other.value)

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if not self:
            raise ZeroDivisionError("inverse of zero")
        kind = self.field.kind
        if kind == "rational":
            return self._new(1 / self.value)
        if kind == "prime":
            return self._new(pow(self.value, -1, self.field.p))
        return self._new(_poly_inverse_mod(self.value, cyclotomic_polynomial(self.field.k)))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        if self.field.kind == "cyclotomic":
            return any(self.value)
        return self.value != 0

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except FieldMismatchError:
            return False
        if other is None:
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash((self.field, self.value))

    def to_json(self):
        """Wire form: "num/den" (rational), int residue (prime), list of "num/den" (cyclotomic)."""
        kind = self.field.kind
        if kind == "rational":
            return format_fraction(self.value)
        if kind == "prime":
            return self.value
        return [format_fraction(c) for c in self.value]

    def __repr__(self):
        if self.field.kind == "cyclotomic":
            terms = []
            for i, c in enumerate(self.value):
                if c:
                    terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
            return f"<{' + '.join(terms) or '0'} in {self.field}>"
        return f"<{self.value} in {self.field}>"


def primitive_root_of_unity(field: FieldDescriptor, k: int) -> FieldElement:
    """An element of exact multiplicative order ``k`` in ``field``.

    Prime fields return the smallest residue of order ``k``; cyclotomic fields
    ``Q(zeta_k')`` with ``k | k'`` return ``x^(k'/k)``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if field.kind == "cyclotomic":
        if field.k % k:
            raise UnsupportedFieldError(f"{field} has no primitive {k}-th root of unity")
        z = field.gen() ** (field.k // k)
    elif field.kind == "prime":
        p = field.p
        if (p - 1) % k:
            raise UnsupportedFieldError(f"GF({p}) has no primitive {k}-th root of unity ({p} != 1 mod {k})")
        z = None
        for g in range(1, p):
            if _order_mod(g, p) == k:
                z = field(g)
                break
        assert z is not None
    else:
        if k > 2:
            raise UnsupportedFieldError(f"Q has no primitive {k}-th root of unity")
        z = field(1 if k == 1 else -1)
    assert z ** k == 1 and all(z ** j != 1 for j in range(1, k))
    return z


def _order_mod(g: int, p: int) -> int:
    x, e = g % p, 1
    while x != 1:
        x = x * g % p
        e += 1
    return e


def matrix_rank(rows: Sequence[Sequence]) -> int:
    """Exact rank by Gaussian elimination; entries must support field arithmetic."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        for i in range(rank + 1, len(m)):
            if m[i][col]:
                f = m[i][col] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


# ---------------------------------------------------------------------------
# symmetric matrices


class Inertia(NamedTuple):
    positive: int
    zero: int
    negative: int

    @property
    def signature(self) -> int:
        return self.positive - self.negative


@dataclass(frozen=True)
class SymmetricMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(Fraction(x) for x in row) for row in entries)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix order must be positive")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("matrix must be square")
            for j in range(i):
                if row[j] != rows[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i}, {j})")
        object.__setattr__(self, "entries", rows)

    @property
    def order(self) -> int:
        return len(self.entries)

    def congruent(self, a: Sequence[Sequence]) -> SymmetricMatrix:
        """Return A^T M A."""
        n = self.order
        a = [[Fraction(x) for x in row] for row in a]
        ma = [[sum(self.entries[i][k] * a[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        return SymmetricMatrix(
            [[sum(a[k][i] * ma[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        )


def signature_of_symmetric_matrix(matrix) -> Inertia:
    """Inertia ``(n+, n0, n-)`` via exact symmetric congruence diagonalization.

    Nonzero diagonal pivots are eliminated one at a time. When the remaining
    block has zero diagonal but a nonzero off-diagonal entry ``a_ij``, the
    hyperbolic 2x2 block on ``{i, j}`` is split off, contributing (+1, -1).
    """
    if not isinstance(matrix, SymmetricMatrix):
        matrix = SymmetricMatrix(matrix)
    a = [list(row) for row in matrix.entries]
    pos = neg = 0
    while a:
        n = len(a)
        k = next((i for i in range(n) if a[i][i] != 0), None)
        if k is not None:
            piv = a[k][k]
            if piv > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in range(n) if i != k]
            # rows with a zero in the pivot column are unchanged, which keeps banded input cheap
            a = [
                [a[i][j] - a[i][k] * a[k][j] / piv for j in rest] if a[i][k] else [a[i][j] for j in rest]
                for i in rest
            ]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
        if pair is None:
            break
        i, j = pair
        c = a[i][j]
        pos += 1
        neg += 1
        rest = [x for x in range(n) if x not in pair]
        # Schur complement of [[0, c], [c, 0]], whose inverse is [[0, 1/c], [1/c, 0]]
        a = [[a[x][y] - (a[x][i] * a[j][y] + a[x][j] * a[i][y]) / c for y in rest] for x in rest]
    zero = matrix.order - pos - neg
    return Inertia(pos, zero, neg)
