"""JSON encodings of the public value types.

Half-integers travel as numerators (twice the value), so every payload is
pure-integer JSON.  Symbolic coefficients serialize as an integer when they
are one, otherwise as a product string like "2*m(Pi)*dxi" per monomial,
joined with " + ".
"""

from __future__ import annotations

import json
from fractions import Fraction

from .segments import (
    CuspidalLabel,
    GrothElement,
    IrreducibleLabel,
    KIND_FORMAL,
    Multisegment,
    OpaqueFactor,
    Segment,
)
from .modl import SupercuspidalData, FieldData
from .symbolic import SymExpr, integer


def twist_num(x: Fraction) -> int:
    n = 2 * Fraction(x)
    if n.denominator != 1:
        raise ValueError(f"{x} is not a half-integer")
    return int(n)


def twist_val(numerator: int) -> Fraction:
    return Fraction(numerator, 2)


# -- multisegments ----------------------------------------------------------


def multisegment_to_json(ms: Multisegment) -> list:
    return [[seg.cuspidal.id, twist_num(seg.start), seg.length] for seg in ms.segments]


def multisegment_from_json(data: list, cuspidals: dict[str, CuspidalLabel]) -> Multisegment:
    segs = []
    for cusp_id, start_num, length in data:
        cusp = cuspidals.get(cusp_id) or CuspidalLabel(cusp_id)
        segs.append(Segment(cusp, twist_val(start_num), length))
    return Multisegment(segs)


# -- symbolic coefficients --------------------------------------------------


def sym_to_json(c: SymExpr):
    if c.is_integer():
        return c.as_integer()
    parts = []
    for mono, coeff in c.items():
        factors = [f"{name}^{p}" if p > 1 else name for name, p in mono]
        head = [] if coeff == 1 and factors else [str(coeff)]
        parts.append("*".join(head + factors))
    return " + ".join(parts)


def sym_from_json(data) -> SymExpr:
    if isinstance(data, int):
        return integer(data)
    total = integer(0)
    for part in str(data).split("+"):
        acc = integer(1)
        for factor in part.strip().split("*"):
            factor = factor.strip()
            if not factor:
                continue
            name, _, power = factor.partition("^")
            try:
                acc = acc * integer(int(name))
            except ValueError:
                acc = acc * SymExpr.atom(name, int(power) if power else 1)
        total = total + acc
    return total


# -- Grothendieck elements --------------------------------------------------


def _label_to_json(label: IrreducibleLabel) -> dict:
    factors = []
    for f in label.factors:
        if isinstance(f, OpaqueFactor):
            factors.append({"opaque": f.name, "rank": f.rank})
        else:
            factors.append({"segments": multisegment_to_json(f)})
    return {"factors": factors, "kind": label.kind}


def _label_from_json(data: dict, cuspidals: dict[str, CuspidalLabel]) -> IrreducibleLabel:
    factors = []
    for f in data["factors"]:
        if "opaque" in f:
            factors.append(OpaqueFactor(f["opaque"], f.get("rank", 0)))
        else:
            factors.append(multisegment_from_json(f["segments"], cuspidals))
    return IrreducibleLabel(factors, data.get("kind", KIND_FORMAL))


def groth_to_json(x: GrothElement) -> list:
    out = []
    for (label, tw), coeff in x.sorted_terms():
        out.append(
            {
                "label": _label_to_json(label),
                "xi_twist_numerator": twist_num(tw),
                "coeff": sym_to_json(coeff),
            }
        )
    return out


def groth_from_json(data: list, cuspidals: dict[str, CuspidalLabel] | None = None) -> GrothElement:
    cuspidals = cuspidals or {}
    terms = {}
    for item in data:
        label = _label_from_json(item["label"], cuspidals)
        tw = twist_val(item["xi_twist_numerator"])
        key = (label, tw)
        coeff = sym_from_json(item["coeff"])
        terms[key] = terms.get(key, integer(0)) + coeff
    return GrothElement(terms)


# -- mod-l data --------------------------------------------------------------


def supercuspidal_to_json(sc: SupercuspidalData) -> dict:
    return {
        "id": sc.label.id,
        "g": sc.label.g,
        "q": sc.field.q,
        "l": sc.field.l,
        "epsilon": sc.epsilon,
    }


def supercuspidal_from_json(data: dict) -> SupercuspidalData:
    return SupercuspidalData(
        CuspidalLabel(data["id"], g=data["g"]),
        FieldData(q=data["q"], l=data["l"]),
        epsilon=data["epsilon"],
    )


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
