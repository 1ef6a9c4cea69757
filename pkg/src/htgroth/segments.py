"""Zelevinsky segments, multisegments, ladders and formal Grothendieck elements.

All twist arithmetic happens in (1/2)Z via ``fractions.Fraction``; nothing in
the package ever touches floating point.  A segment ``[a, a+len-1]`` on the
line of a cuspidal ``pi`` stands for the set {pi{a}, pi{a+1}, ...}; an
irreducible representation is labelled by a multiset of multisegments
(its factors) plus a coarse kind tag.  Grothendieck elements are finite
formal sums of (label, Xi-twist) pairs with coefficients in the symbolic
ring of :mod:`htgroth.symbolic`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .symbolic import SymExpr, integer

Half = Fraction


def half(numerator: int) -> Fraction:
    """The half-integer numerator/2."""
    return Fraction(numerator, 2)


def is_half_integral(x: Fraction) -> bool:
    return (2 * x).denominator == 1


def ensure_half(x: Union[int, Fraction]) -> Fraction:
    x = Fraction(x)
    if not is_half_integral(x):
        raise ValueError(f"{x} is not a half-integer")
    return x


class CuspidalLabel:
    """Opaque label of an irreducible cuspidal of GL_g.

    Labels compare equal exactly when their ids do; ``g`` (the rank) and
    ``e_pi`` (the unramified fixator count) are attributes of the id.
    """

    __slots__ = ("id", "g", "e_pi")

    def __init__(self, id: str, g: int = 1, e_pi: int = 1):
        if g < 1 or e_pi < 1:
            raise ValueError("g and e_pi must be positive")
        self.id = id
        self.g = g
        self.e_pi = e_pi

    def __eq__(self, other):
        return isinstance(other, CuspidalLabel) and self.id == other.id

    def __hash__(self):
        return hash(self.id)

    def __lt__(self, other):
        return self.id < other.id

    def __repr__(self):
        return f"CuspidalLabel({self.id!r}, g={self.g})"


@dataclass(frozen=True)
class Segment:
    """The consecutive run pi{start}, ..., pi{start+length-1}."""

    cuspidal: CuspidalLabel
    start: Fraction
    length: int

    def __post_init__(self):
        object.__setattr__(self, "start", ensure_half(self.start))
        if self.length < 1:
            raise ValueError("segment length must be >= 1")

    @property
    def end(self) -> Fraction:
        return self.start + self.length - 1

    @property
    def center(self) -> Fraction:
        return self.start + Fraction(self.length - 1, 2)

    @property
    def rank(self) -> int:
        return self.length * self.cuspidal.g

    def positions(self) -> list[Fraction]:
        return [self.start + k for k in range(self.length)]

    def twist(self, n) -> "Segment":
        return Segment(self.cuspidal, self.start + ensure_half(n), self.length)

    def sort_key(self):
        return (self.cuspidal.id, self.start, self.length)

    def __repr__(self):
        return f"[{self.start},{self.end}]_{self.cuspidal.id}"


class Multisegment:
    """A multiset of segments, stored in canonical sorted order."""

    __slots__ = ("segments",)

    def __init__(self, segments: Iterable[Segment] = ()):
        segs = tuple(sorted(segments, key=Segment.sort_key))
        object.__setattr__(self, "segments", segs)

    @property
    def rank(self) -> int:
        return sum(s.rank for s in self.segments)

    def is_empty(self) -> bool:
        return not self.segments

    def cuspidal_lines(self) -> list[CuspidalLabel]:
        seen: list[CuspidalLabel] = []
        for s in self.segments:
            if s.cuspidal not in seen:
                seen.append(s.cuspidal)
        return seen

    def support(self) -> dict[tuple[str, Fraction], int]:
        """Multiset of (cuspidal id, twist) points covered, with multiplicity."""
        mult: dict[tuple[str, Fraction], int] = {}
        for seg in self.segments:
            for p in seg.positions():
                key = (seg.cuspidal.id, p)
                mult[key] = mult.get(key, 0) + 1
        return mult

    def is_ladder(self) -> bool:
        """True when some ordering has strictly increasing starts AND ends.

        With segments sorted by (start, length), strict increase of both
        coordinates is equivalent to the existence of such an ordering.
        Segments must sit on a single cuspidal line.
        """
        if not self.segments:
            return True
        if len(self.cuspidal_lines()) > 1:
            return False
        segs = self.segments
        for a, b in zip(segs, segs[1:]):
            if not (a.start < b.start and a.end < b.end):
                return False
        return True

    def twist(self, n) -> "Multisegment":
        n = ensure_half(n)
        return Multisegment(s.twist(n) for s in self.segments)

    def __eq__(self, other):
        return isinstance(other, Multisegment) and self.segments == other.segments

    def __hash__(self):
        return hash(tuple(s.sort_key() for s in self.segments))

    def __len__(self):
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def __repr__(self):
        return "{" + ", ".join(map(repr, self.segments)) + "}"


@dataclass(frozen=True)
class OpaqueFactor:
    """A factor we do not resolve into segments (profile tails, D-side labels)."""

    name: str
    rank: int = 0

    def twist(self, n) -> "OpaqueFactor":
        # opaque factors absorb twists silently; callers that care use the
        # external Xi slot instead
        return self

    def sort_key(self):
        return ("~opaque", self.name, self.rank)


Factor = Union[Multisegment, OpaqueFactor]


def _factor_key(f: Factor):
    if isinstance(f, OpaqueFactor):
        return f.sort_key()
    return ("segment",) + tuple(s.sort_key() for s in f.segments)


KIND_GENERIC = "generic-product"
KIND_SPEH_ST = "speh-of-st-product"
KIND_FORMAL = "formal"

_KINDS = (KIND_GENERIC, KIND_SPEH_ST, KIND_FORMAL)


class IrreducibleLabel:
    """Label of an irreducible: a multiset of factors plus a kind tag."""

    __slots__ = ("factors", "kind")

    def __init__(self, factors: Iterable[Factor] = (), kind: str = KIND_FORMAL):
        if kind not in _KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        facs = tuple(sorted(factors, key=_factor_key))
        if not facs:
            kind = KIND_GENERIC  # the empty product is the unit
        object.__setattr__(self, "factors", facs)
        object.__setattr__(self, "kind", kind)

    @staticmethod
    def unit() -> "IrreducibleLabel":
        return IrreducibleLabel((), KIND_GENERIC)

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    def is_unit(self) -> bool:
        return not self.factors

    def twist(self, n) -> "IrreducibleLabel":
        return IrreducibleLabel((f.twist(n) for f in self.factors), self.kind)

    def multisegments(self) -> list[Multisegment]:
        return [f for f in self.factors if isinstance(f, Multisegment)]

    def __eq__(self, other):
        return (
            isinstance(other, IrreducibleLabel)
            and self.factors == other.factors
            and self.kind == other.kind
        )

    def __hash__(self):
        return hash((tuple(map(_factor_key, self.factors)), self.kind))

    def __repr__(self):
        if not self.factors:
            return "<1>"
        return " x ".join(
            f.name if isinstance(f, OpaqueFactor) else repr(f) for f in self.factors
        )


def label_of_multisegment(ms: Multisegment, kind: str = KIND_FORMAL) -> IrreducibleLabel:
    if ms.is_empty():
        return IrreducibleLabel.unit()
    return IrreducibleLabel((ms,), kind)


def _lines_linked(a: Multisegment, b: Multisegment) -> bool:
    """Crude linkage test used only to degrade kind tags on products."""
    lines_a = {c.id for c in a.cuspidal_lines()}
    lines_b = {c.id for c in b.cuspidal_lines()}
    return bool(lines_a & lines_b)


class GrothElement:
    """Finite sum of (label, Xi-twist) pairs with symbolic coefficients.

    The Xi slot is a half-integer exponent k meaning a factor Xi^k; the
    transfer maps also use it to carry the character |.|^{-k} of F_v^x
    attached to a term, so a term is really "label tensor (twist data)".
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[IrreducibleLabel, Fraction], SymExpr] | None = None):
        pruned = {}
        for (label, tw), coeff in (terms or {}).items():
            coeff = coeff if isinstance(coeff, SymExpr) else integer(coeff)
            if not coeff.is_zero():
                pruned[(label, ensure_half(tw))] = coeff
        object.__setattr__(self, "terms", pruned)

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero() -> "GrothElement":
        return GrothElement()

    @staticmethod
    def of(label: IrreducibleLabel, twist=Fraction(0), coeff: SymExpr | int = 1) -> "GrothElement":
        return GrothElement({(label, ensure_half(twist)): coeff})

    @staticmethod
    def one() -> "GrothElement":
        return GrothElement.of(IrreducibleLabel.unit())

    # -- module structure ----------------------------------------------

    def __add__(self, other: "GrothElement") -> "GrothElement":
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, integer(0)) + c
        return GrothElement(terms)

    def __neg__(self) -> "GrothElement":
        return GrothElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "GrothElement") -> "GrothElement":
        return self + (-other)

    def scale(self, c: SymExpr | int) -> "GrothElement":
        c = c if isinstance(c, SymExpr) else integer(c)
        return GrothElement({k: coeff * c for k, coeff in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    # -- twists ----------------------------------------------------------

    def twist(self, n) -> "GrothElement":
        """Shift every segment start in every label by n (internal twist)."""
        n = ensure_half(n)
        return GrothElement({(label.twist(n), tw): c for (label, tw), c in self.terms.items()})

    def xi_twist(self, n) -> "GrothElement":
        """Shift the external Xi-exponent of every term by n."""
        n = ensure_half(n)
        return GrothElement({(label, tw + n): c for (label, tw), c in self.terms.items()})

    # -- misc -------------------------------------------------------------

    def map_labels(self, fn) -> "GrothElement":
        out: dict = {}
        for (label, tw), c in self.terms.items():
            key = (fn(label), tw)
            out[key] = out.get(key, integer(0)) + c
        return GrothElement(out)

    def coefficient(self, label: IrreducibleLabel, twist=Fraction(0)) -> SymExpr:
        return self.terms.get((label, ensure_half(twist)), integer(0))

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (kv[0][1], _label_sort_key(kv[0][0])),
        )

    def __eq__(self, other):
        return isinstance(other, GrothElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((k, v) for k, v in self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (label, tw), c in self.sorted_terms():
            xi = f" Xi^{tw}" if tw else ""
            bits.append(f"({c})*{label!r}{xi}")
        return " + ".join(bits)


def _label_sort_key(label: IrreducibleLabel):
    return (label.kind, tuple(map(_factor_key, label.factors)))


# ---------------------------------------------------------------------------
# constructors for the classical ladder representations
# ---------------------------------------------------------------------------


def twist(x, n):
    """Twist by the unramified character q^{-n val(det)}; group action of (1/2)Z."""
    n = ensure_half(n)
    if isinstance(x, (Segment, Multisegment, IrreducibleLabel, GrothElement)):
        return x.twist(n)
    raise TypeError(f"cannot twist {type(x).__name__}")


def steinberg_multisegment(pi: CuspidalLabel, t: int) -> Multisegment:
    if t < 1:
        raise ValueError("t must be >= 1")
    return Multisegment([Segment(pi, half(1 - t), t)])


def make_steinberg(pi: CuspidalLabel, t: int) -> IrreducibleLabel:
    """St_t(pi): the single segment [-(t-1)/2, (t-1)/2], centered at 0."""
    return IrreducibleLabel((steinberg_multisegment(pi, t),), KIND_GENERIC)


def speh_st_multisegment(pi: CuspidalLabel, s: int, t: int) -> Multisegment:
    """The s-by-t rectangle ladder: s segments of length t, staircase starts."""
    if s < 1 or t < 1:
        raise ValueError("s and t must be >= 1")
    segs = []
    base = half(1 - s) - half(t - 1)
    for j in range(s):
        segs.append(Segment(pi, base + j, t))
    return Multisegment(segs)


def make_speh_st(pi: CuspidalLabel, s: int, t: int) -> IrreducibleLabel:
    """Speh_s(St_t(pi)): the unique irreducible sub of the staircase product."""
    return IrreducibleLabel((speh_st_multisegment(pi, s, t),), KIND_SPEH_ST)


def make_speh(pi: CuspidalLabel, s: int) -> IrreducibleLabel:
    return make_speh_st(pi, s, 1)


# ---------------------------------------------------------------------------
# Jacquet cuts of ladders
# ---------------------------------------------------------------------------


def _rectangle_shape(lad: Multisegment) -> tuple[int, int] | None:
    """(s, t) when lad is an s-by-t rectangle ladder on one line, else None."""
    if lad.is_empty() or not lad.is_ladder():
        return None
    lengths = {seg.length for seg in lad.segments}
    if len(lengths) != 1:
        return None
    t = lengths.pop()
    starts = [seg.start for seg in lad.segments]
    if any(b - a != 1 for a, b in zip(starts, starts[1:])):
        return None
    return (len(lad.segments), t)


def _suffix_cut(lad: Multisegment, ks: Sequence[int]) -> tuple[Multisegment, Multisegment]:
    """Split each segment: a1 takes the top k_j twists, a2 keeps the rest."""
    a1, a2 = [], []
    for seg, k in zip(lad.segments, ks):
        if k:
            a1.append(Segment(seg.cuspidal, seg.end - k + 1, k))
        if seg.length - k:
            a2.append(Segment(seg.cuspidal, seg.start, seg.length - k))
    return Multisegment(a1), Multisegment(a2)


def cut_tuples(lengths: Sequence[int], total: int) -> Iterable[tuple[int, ...]]:
    """All tuples (k_j) with 0 <= k_j <= lengths[j] and sum k_j = total."""
    n = len(lengths)

    def rec(j: int, remaining: int):
        if j == n:
            if remaining == 0:
                yield ()
            return
        tail_max = sum(lengths[j + 1 :])
        lo = max(0, remaining - tail_max)
        hi = min(lengths[j], remaining)
        for k in range(lo, hi + 1):
            for rest in rec(j + 1, remaining - k):
                yield (k,) + rest

    return rec(0, total)


def ladder_cuts(lad: Multisegment, left_rank: int) -> list[tuple[Multisegment, Multisegment]]:
    """Enumerate the Jacquet cut pairs (a1, a2) of a ladder at a given rank.

    a1 collects a suffix piece (the larger twists) of size k_j from the j-th
    segment.  For a rectangle ladder the admissible tuples are exactly the
    weakly increasing ones, i.e. partitions inside the s-by-t box; a general
    ladder keeps the tuples whose two halves are again ladders.  Absolute
    segment coordinates are kept on both sides, so no normalization twist
    appears in the output.
    """
    if not lad.is_ladder():
        raise ValueError("ladder_cuts needs a ladder")
    lines = lad.cuspidal_lines()
    g = lines[0].g if lines else 1
    if left_rank % g:
        raise ValueError(f"left_rank {left_rank} is not a multiple of g={g}")
    k_total = left_rank // g
    lengths = [seg.length for seg in lad.segments]
    if k_total > sum(lengths):
        raise ValueError("left_rank exceeds the total rank")

    shape = _rectangle_shape(lad)
    out = []
    for ks in cut_tuples(lengths, k_total):
        if shape is not None:
            if any(a > b for a, b in zip(ks, ks[1:])):
                continue
        else:
            a1, a2 = _suffix_cut(lad, ks)
            if not (a1.is_ladder() and a2.is_ladder()):
                continue
            out.append((a1, a2))
            continue
        out.append(_suffix_cut(lad, ks))
    return out


# ---------------------------------------------------------------------------
# formal product and partitions
# ---------------------------------------------------------------------------


def _product_kind(a: IrreducibleLabel, b: IrreducibleLabel) -> str:
    segs_a = a.multisegments()
    segs_b = b.multisegments()
    for ma, mb in itertools.product(segs_a, segs_b):
        if _lines_linked(ma, mb):
            return KIND_FORMAL
    if KIND_FORMAL in (a.kind, b.kind):
        return KIND_FORMAL
    if KIND_SPEH_ST in (a.kind, b.kind):
        return KIND_SPEH_ST
    return KIND_GENERIC


def label_product(a: IrreducibleLabel, b: IrreducibleLabel) -> IrreducibleLabel:
    return IrreducibleLabel(a.factors + b.factors, _product_kind(a, b))


def groth_product(a: GrothElement, b: GrothElement) -> GrothElement:
    """Bilinear formal product; labels concatenate factor multisets."""
    out: dict = {}
    for (la, ta), ca in a.terms.items():
        for (lb, tb), cb in b.terms.items():
            key = (label_product(la, lb), ta + tb)
            out[key] = out.get(key, integer(0)) + ca * cb
    return GrothElement(out)


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("partition parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("partition parts must be weakly decreasing")

    @property
    def size(self) -> int:
        return sum(self.parts)


def dominance_leq(p: Partition, q: Partition) -> bool:
    """Dominance order: every partial sum of p is <= the one of q."""
    if p.size != q.size:
        raise ValueError("dominance compares partitions of equal size")
    acc_p = acc_q = 0
    for i in range(max(len(p.parts), len(q.parts))):
        acc_p += p.parts[i] if i < len(p.parts) else 0
        acc_q += q.parts[i] if i < len(q.parts) else 0
        if acc_p > acc_q:
            return False
    return True


def box_partitions(s: int, t: int, k: int) -> list[tuple[int, ...]]:
    """Weakly increasing tuples (k_1 <= ... <= k_s), 0 <= k_j <= t, sum k."""
    out = []

    def rec(j: int, lo: int, remaining: int, acc: tuple[int, ...]):
        if j == s:
            if remaining == 0:
                out.append(acc)
            return
        for k_j in range(lo, min(t, remaining) + 1):
            rec(j + 1, k_j, remaining - k_j, acc + (k_j,))

    rec(0, 0, k, ())
    return out
