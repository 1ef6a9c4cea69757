"""Mod-l invariants of cuspidal lines, cuspidal towers, and reduction rules.

The unit of data is a supercuspidal line over a residue field of size q with
a banality prime l: the line size epsilon divides the order e_l(q) of q mod
l, the jump parameter m is epsilon when epsilon > 1 and l otherwise, and the
generalized Steinberg of width s stays cuspidal exactly for s in
{1, m, m l, m l^2, ...}.  Tower levels index those cuspidals; matched strata
pair the levels inside a fixed GL_d.

Reduction mod l of labels is kept minimal: a Speh of a cuspidal reduces
irreducibly, a division-algebra representation spreads into a twist-symmetric
string, and a generalized Steinberg keeps exactly one nondegenerate
constituent with an opaque remainder.  For cross-level comparisons each
label over a tower cuspidal collapses to a fingerprint over the base
supercuspidal: footprint on the base line, with twists folded by the line
period.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .segments import (
    CuspidalLabel,
    GrothElement,
    IrreducibleLabel,
    Multisegment,
    OpaqueFactor,
    ensure_half,
)
from .symbolic import integer


# ---------------------------------------------------------------------------
# fields and lines
# ---------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, n + 1):
        if _is_prime(p) and n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
    return False


@dataclass(frozen=True)
class FieldData:
    q: int
    l: int

    def __post_init__(self):
        if not _is_prime_power(self.q):
            raise ValueError(f"q={self.q} is not a prime power")
        if not _is_prime(self.l):
            raise ValueError(f"l={self.l} is not prime")
        if self.q % self.l == 0:
            raise ValueError("l must not divide q")


def e_l(field: FieldData) -> int:
    """Multiplicative order of q in F_l^x."""
    q, l = field.q % field.l, field.l
    k, acc = 1, q % l
    while acc != 1:
        acc = (acc * q) % l
        k += 1
        if k > l:  # cannot happen for valid input
            raise RuntimeError("order computation ran away")
    return k


def is_banal(field: FieldData, d: int) -> bool:
    return e_l(field) > d


@dataclass(frozen=True)
class SupercuspidalData:
    """A mod-l supercuspidal line: its label, field data and line size."""

    label: CuspidalLabel
    field: FieldData
    epsilon: int

    def __post_init__(self):
        if self.epsilon < 1:
            raise ValueError("epsilon must be positive")
        if e_l(self.field) % self.epsilon != 0:
            raise ValueError(
                f"epsilon={self.epsilon} must divide e_l(q)={e_l(self.field)}"
            )

    @property
    def g(self) -> int:
        return self.label.g


def canonical_epsilon(field: FieldData, g: int) -> int:
    """Line size of a supercuspidal of GL_g: the order of q^g mod l."""
    e = e_l(field)
    return e // gcd(e, g)


def supercuspidal(id: str, g: int, field: FieldData) -> SupercuspidalData:
    """Supercuspidal data with the canonical line size for its rank."""
    return SupercuspidalData(CuspidalLabel(id, g=g), field, canonical_epsilon(field, g))


def m_of(sc: SupercuspidalData) -> int:
    """The cuspidal-width jump: epsilon when the line is nontrivial, else l."""
    return sc.epsilon if sc.epsilon > 1 else sc.field.l


def is_cuspidal_st(sc: SupercuspidalData, s: int) -> bool:
    """True when the width-s generalized Steinberg of the line stays cuspidal."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if s == 1:
        return True
    m = m_of(sc)
    if s % m:
        return False
    s //= m
    l = sc.field.l
    while s % l == 0:
        s //= l
    return s == 1


@dataclass(frozen=True)
class TowerLevel:
    """Level u >= -1 of the cuspidal tower over a supercuspidal line."""

    base: SupercuspidalData
    u: int

    def __post_init__(self):
        if self.u < -1:
            raise ValueError("u must be >= -1")


def tower_rank(t: TowerLevel) -> int:
    """g_u = g_{-1} for the base level, else g_{-1} * m * l^u."""
    if t.u == -1:
        return t.base.g
    return t.base.g * m_of(t.base) * t.base.field.l**t.u


def tower_cuspidal(t: TowerLevel, id: str | None = None, e_pi: int = 1) -> CuspidalLabel:
    """A lift label of the level-u tower cuspidal (opaque id, correct rank)."""
    name = id if id is not None else f"{t.base.label.id}[u={t.u}]"
    return CuspidalLabel(name, g=tower_rank(t), e_pi=e_pi)


def cuspidal_lifts(t: TowerLevel, count: int) -> list[CuspidalLabel]:
    """Opaque lift labels sharing one mod-l target (the count is the model)."""
    return [tower_cuspidal(t, id=f"{t.base.label.id}[u={t.u}]#{j}") for j in range(count)]


def chgt_cuspi_factor(u: int, u_prime: int, sc: SupercuspidalData) -> int:
    """Multiplicity of the level-u sheaf class inside the level-u' one.

    l^(u'-u) for u >= 0; the base level u = -1 picks up the extra m factor.
    """
    if u_prime < u:
        raise ValueError("u' must be >= u")
    l = sc.field.l
    if u >= 0:
        return l ** (u_prime - u)
    if u_prime == -1:
        return 1
    return m_of(sc) * l**u_prime


def matched_strata(u: int, u_prime: int, d: int, sc: SupercuspidalData) -> list[tuple[int, int]]:
    """All (r, r') with r g_u = r' g_{u'} <= d."""
    g_u = tower_rank(TowerLevel(sc, u))
    g_up = tower_rank(TowerLevel(sc, u_prime))
    step = g_u * g_up // gcd(g_u, g_up)
    out = []
    h = step
    while h <= d:
        out.append((h // g_u, h // g_up))
        h += step
    return out


# ---------------------------------------------------------------------------
# reduction rules
# ---------------------------------------------------------------------------


def modl_label(sc: SupercuspidalData | CuspidalLabel) -> CuspidalLabel:
    base = sc.label if isinstance(sc, SupercuspidalData) else sc
    return CuspidalLabel(f"rl({base.id})", g=base.g, e_pi=base.e_pi)


def rl_speh(label: IrreducibleLabel, target: CuspidalLabel) -> GrothElement:
    """Reduction of Speh_s(pi): a single irreducible term.

    The label must be a Speh of a cuspidal, i.e. one ladder of singleton
    segments; the output replaces the cuspidal line by the mod-l target.
    """
    segs = label.multisegments()
    if len(label.factors) != 1 or not segs:
        raise ValueError("rl_speh expects a single-multisegment label")
    ms = segs[0]
    if any(seg.length != 1 for seg in ms.segments) or not ms.is_ladder():
        raise ValueError("rl_speh expects a Speh of a cuspidal (singleton ladder)")
    reduced = Multisegment(
        type(seg)(target, seg.start, seg.length) for seg in ms.segments
    )
    return GrothElement.of(IrreducibleLabel((reduced,), label.kind))


def rl_division_rep(m_tau: int, iota: str) -> GrothElement:
    """Reduction of a division-algebra representation: a symmetric twist string.

    m_tau terms iota{k}, k = -(m_tau-1)/2, ..., (m_tau-1)/2 in integer steps.
    """
    if m_tau < 1:
        raise ValueError("m_tau must be >= 1")
    out: dict = {}
    factor = OpaqueFactor(iota, rank=0)
    for j in range(m_tau):
        k = Fraction(-(m_tau - 1), 2) + j
        out[(IrreducibleLabel((factor,)), k)] = integer(1)
    return GrothElement(out)


def rl_steinberg_constituents(sc: SupercuspidalData, s: int) -> GrothElement:
    """Reduction of a width-s Steinberg over a lift of the line.

    Exposes only the pinned facts: the unique nondegenerate constituent (the
    mod-l generalized Steinberg, multiplicity one) plus one opaque remainder
    term standing for all other constituents.
    """
    from .segments import make_steinberg

    if s < 1:
        raise ValueError("s must be >= 1")
    nondeg = make_steinberg(modl_label(sc), s)
    out = GrothElement.of(nondeg)
    if s > 1:
        remainder = IrreducibleLabel(
            (OpaqueFactor(f"rl-rem(St_{s}({sc.label.id}))", rank=s * sc.g),)
        )
        out = out + GrothElement.of(remainder)
    return out


# ---------------------------------------------------------------------------
# collapse to the base line
# ---------------------------------------------------------------------------


LiftMap = dict[str, TowerLevel]  # cuspidal id -> tower level it lifts


def collapse_segment_key(seg, level: TowerLevel):
    """Fingerprint of a segment over a tower cuspidal on the base line.

    Footprint: the segment of length k at twist a over the level-u cuspidal
    covers k * (g_u / g_{-1}) base units starting at base offset a scaled by
    the same stretch; twists fold modulo the base line period epsilon.
    """
    stretch = tower_rank(level) // level.base.g
    eps = level.base.epsilon
    start = ensure_half(seg.start) * stretch
    folded = start - eps * (start / eps).__floor__()
    return (
        level.base.label.id,
        level.u,
        seg.length * stretch,
        folded,
    )


def collapse_label_key(label: IrreducibleLabel, lifts: LiftMap):
    """Canonical mod-l class key of a label under the configured lift relation."""
    parts = []
    for factor in label.factors:
        if isinstance(factor, OpaqueFactor):
            parts.append(("opaque", factor.name, factor.rank))
            continue
        for seg in factor.segments:
            level = lifts.get(seg.cuspidal.id)
            if level is None:
                parts.append(("raw", seg.cuspidal.id, seg.length, seg.start))
            else:
                parts.append(("base",) + collapse_segment_key(seg, level))
    return tuple(sorted(parts))


def rl_reduce(x: GrothElement, lifts: LiftMap) -> dict:
    """Coefficient table of the mod-l collapse of a Grothendieck element.

    Keys are (collapsed label key, Xi twist); values are symbolic
    coefficients.  Two elements have the same reduction exactly when the
    tables agree.
    """
    out: dict = {}
    for (label, tw), coeff in x.terms.items():
        key = (collapse_label_key(label, lifts), tw)
        out[key] = out.get(key, integer(0)) + coeff
    return {k: v for k, v in out.items() if not v.is_zero()}
