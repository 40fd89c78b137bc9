"""Existence and nonexistence certificates for (m, d)-nets.

Each certificate carries an ordered chain of reasons. A ``computed`` reason
records the library call that produced its value, so the whole chain can be
replayed with :func:`replay`; a ``cited`` reason stands for a classical result
that is not re-verified here (uniqueness of the (4, 3)-net).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .exact_arith import FieldDescriptor
from .net_geometry import (
    NetRealization,
    fermat_net,
    hesse_net,
    pencil_rank,
    smallest_root_prime,
    validate_net,
)
from .signature_engine import sigma_complement

__all__ = [
    "Certificate",
    "DomainError",
    "Reason",
    "VERDICTS",
    "build_witness",
    "classify",
    "classify_grid",
    "main_inequality",
    "out_of_domain",
    "replay",
]

VERDICTS = ("exists", "exists-unique", "nonexistent", "out-of-domain")

HESSE_UNIQUENESS = (
    "every (4,3)-net is projectively equivalent to the Hesse configuration (classical result, cited)"
)
FIVE_THREE_FROM_UNIQUENESS = (
    "a (5,3)-net cannot exist: this follows from uniqueness of the (4,3)-net up to projective equivalence (cited)"
)


class DomainError(ValueError):
    pass


def main_inequality(m: int, d: int) -> tuple[int, str]:
    """Value of ``((m-3)d - 3)(d - 1)`` and the verdict it forces.

    Equating the two signature evaluations with ``a >= 1`` and ``f1 - 2 f0 >= 0``
    would require this value to be negative, so a positive value rules the net out.
    """
    if m < 4 or d < m:
        raise DomainError(f"the inequality applies only for m >= 4 and d >= m, got ({m}, {d})")
    value = ((m - 3) * d - 3) * (d - 1)
    assert value == (m - 3) * d * d - m * d + 3
    return value, ("nonexistent" if value > 0 else "undecided")


@dataclass
class Reason:
    kind: str  # "computed" | "cited"
    statement: str
    value: Any = None
    call: dict | None = None  # {"op": name, "args": [...]} for computed reasons

    def to_json(self) -> dict:
        out = {"kind": self.kind, "statement": self.statement, "value": self.value}
        if self.call is not None:
            out["call"] = self.call
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Reason:
        return cls(obj["kind"], obj["statement"], obj.get("value"), obj.get("call"))


@dataclass
class Certificate:
    m: int
    d: int
    verdict: str
    reasons: list[Reason] = field(default_factory=list)
    witness: dict | None = None

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "d": self.d,
            "verdict": self.verdict,
            "reasons": [r.to_json() for r in self.reasons],
            "witness": self.witness,
        }

    @classmethod
    def from_json(cls, obj: dict) -> Certificate:
        return cls(
            int(obj["m"]),
            int(obj["d"]),
            obj["verdict"],
            [Reason.from_json(r) for r in obj.get("reasons", [])],
            obj.get("witness"),
        )


# ---------------------------------------------------------------------------
# replayable operations: every computed reason names one of these


def build_witness(construction: str, d: int, field: dict) -> NetRealization:
    fd = FieldDescriptor.from_json(field)
    if construction == "fermat":
        return fermat_net(d, fd)
    if construction == "hesse":
        if d != 3:
            raise ValueError("the Hesse configuration has d = 3")
        return hesse_net(fd)
    raise ValueError(f"unknown construction {construction!r}")


def _op_validate(construction, d, field):
    report = validate_net(build_witness(construction, d, field))
    return {"valid": report.valid, "base_points": report.num_base_points}


def _op_pencil_rank(construction, d, field):
    return pencil_rank(build_witness(construction, d, field))


def _op_main_inequality(m, d):
    return main_inequality(m, d)[0]


def _op_delete_class(m, d):
    # removing one class of an (m, d)-net leaves an (m-1, d)-net on the same base points
    if m < 4:
        raise DomainError("cannot delete below m = 3")
    return [m - 1, d]


def _op_in_domain(m, d):
    return m >= 3 and d >= 3


OPS = {
    "in_domain": _op_in_domain,
    "validate_net": _op_validate,
    "pencil_rank": _op_pencil_rank,
    "main_inequality": _op_main_inequality,
    "sigma_complement": sigma_complement,
    "delete_class": _op_delete_class,
}


def _computed(statement: str, op: str, *args) -> Reason:
    return Reason("computed", statement, OPS[op](*args), {"op": op, "args": list(args)})


def replay(cert: Certificate) -> list[tuple[Reason, Any, bool]]:
    """Re-execute every computed reason; returns ``(reason, recomputed, agrees)`` triples."""
    out = []
    for reason in cert.reasons:
        if reason.kind != "computed":
            continue
        value = OPS[reason.call["op"]](*reason.call["args"])
        out.append((reason, value, value == reason.value))
    return out


# ---------------------------------------------------------------------------


def _witness_field(d: int, cyclotomic: bool) -> dict:
    if cyclotomic:
        return FieldDescriptor.cyclotomic(d).to_json()
    return FieldDescriptor.prime(smallest_root_prime(d, d + 2)).to_json()


def _existence_reasons(construction: str, d: int, field: dict, m: int) -> list[Reason]:
    reasons = [
        _computed(f"the {construction} arrangement satisfies the ({m},{d})-net axioms over "
                  f"{FieldDescriptor.from_json(field)}",
                  "validate_net", construction, d, field),
        _computed("the class products span a pencil (rank 2)", "pencil_rank", construction, d, field),
    ]
    if not reasons[0].value["valid"] or reasons[1].value != 2:
        raise AssertionError(f"witness for ({m},{d}) failed validation")
    return reasons


def _nonexistence_m4(d: int) -> list[Reason]:
    s = _computed(f"signature of the fibration complement for (4,{d}) is negative, so a >= 1",
                  "sigma_complement", 4, d)
    assert s.value <= -1
    ineq = _computed(
        f"matching signature routes forces ((m-3)d-3)(d-1) < 0, but it is positive at (4,{d})",
        "main_inequality", 4, d,
    )
    assert ineq.value > 0
    return [s, ineq]


def classify(m: int, d: int, cyclotomic: bool = False) -> Certificate:
    """Decide existence of an (m, d)-net, with a replayable chain of reasons."""
    if m < 3 or d < 3:
        raise DomainError(f"nets need m >= 3 and d >= 3, got ({m}, {d})")

    if m == 3:
        fld = _witness_field(d, cyclotomic)
        reasons = _existence_reasons("fermat", d, fld, 3)
        return Certificate(m, d, "exists", reasons, {"construction": "fermat", "m": 3, "d": d, "field": fld})

    if (m, d) == (4, 3):
        fld = FieldDescriptor.cyclotomic(3).to_json()
        reasons = _existence_reasons("hesse", 3, fld, 4)
        reasons.append(Reason("cited", HESSE_UNIQUENESS))
        return Certificate(m, d, "exists-unique", reasons, {"construction": "hesse", "m": 4, "d": 3, "field": fld})

    reasons: list[Reason] = []
    target = 5 if d == 3 else 4
    cur = m
    while cur > target:
        reasons.append(_computed(f"deleting a class of a ({cur},{d})-net leaves a ({cur - 1},{d})-net",
                                 "delete_class", cur, d))
        cur -= 1
    if d == 3:
        reasons.append(Reason("cited", FIVE_THREE_FROM_UNIQUENESS))
    else:
        reasons.extend(_nonexistence_m4(d))
    return Certificate(m, d, "nonexistent", reasons)


def out_of_domain(m: int, d: int) -> Certificate:
    """Certificate for parameters outside ``m >= 3, d >= 3``."""
    reason = _computed(f"({m},{d}) lies outside the domain m >= 3, d >= 3", "in_domain", m, d)
    return Certificate(m, d, "out-of-domain", [reason])


def classify_grid(m_max: int, d_max: int, cyclotomic: bool = False) -> list[Certificate]:
    """Certificates for every ``3 <= m <= m_max``, ``3 <= d <= d_max``, sorted by (m, d)."""
    return [classify(m, d, cyclotomic) for m in range(3, m_max + 1) for d in range(3, d_max + 1)]
