"""Transfer maps to the division-algebra side and the R/S cell representations.

The trace of an irreducible against a twisted pseudo-coefficient vanishes
unless the irreducible's support is a multiplicity-one consecutive run on
the cuspidal line; on such a run the subquotients of the full induced
product biject with orientations of the linear graph on its points.  The
value is then a sign depending only on the orientation (pinned here as
(-1)^(number of segments - 1), Steinberg positive) times the unramified
character cut out by the run's center.

``R_cell``/``S_cell`` package the signed cut sums of a rectangle ladder
into the (stratum, degree) cells marked by the diagrams of
:mod:`htgroth.diagrams`.  The two tables read off the same underlying cut
data: the shriek table indexes it through the sheared degree
i -> 2 i + r - (s + t - 1), which also makes the two twist conventions
agree on the nose, and the endpoint identity at (s + t - 1, 0) exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .diagrams import m_coeff, n_coeff
from .segments import (
    CuspidalLabel,
    GrothElement,
    IrreducibleLabel,
    KIND_FORMAL,
    Multisegment,
    OpaqueFactor,
    Segment,
    cut_tuples,
    label_of_multisegment,
    speh_st_multisegment,
)
from .symbolic import integer


# ---------------------------------------------------------------------------
# orientations of the linear graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """Orientation of the path graph on t vertices; True = rightward edge."""

    t: int
    edges: tuple[bool, ...]

    def __post_init__(self):
        if self.t < 1 or len(self.edges) != self.t - 1:
            raise ValueError("need t-1 edges for t vertices")

    def segment_count(self) -> int:
        # maximal rightward runs
        return 1 + sum(1 for e in self.edges if not e)


def orientations(t: int) -> list[Orientation]:
    """All 2^(t-1) orientations of the linear graph on 1..t."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return [Orientation(t, edges) for edges in itertools.product((True, False), repeat=t - 1)]


def multisegment_of_orientation(o: Orientation, pi: CuspidalLabel) -> Multisegment:
    """Zelevinsky bijection: rightward runs become segments on the line.

    Vertices 1..t sit at the twists (1-t)/2, ..., (t-1)/2, so the fully
    rightward orientation maps to the Steinberg segment and the fully
    leftward one to the t singleton segments.
    """
    base = Fraction(1 - o.t, 2)
    segs = []
    run_start = 0
    for k in range(o.t - 1):
        if not o.edges[k]:  # leftward edge breaks the run
            segs.append(Segment(pi, base + run_start, k + 1 - run_start))
            run_start = k + 1
    segs.append(Segment(pi, base + run_start, o.t - run_start))
    return Multisegment(segs)


def orientation_of_run(ms: Multisegment) -> Orientation:
    """Inverse bijection on multiplicity-one consecutive-run multisegments."""
    run = _run_data(ms)
    if run is None:
        raise ValueError(f"{ms!r} is not a multiplicity-one consecutive run")
    _, start, size, _ = run
    edges = [True] * (size - 1)
    for seg in ms.segments:
        brk = seg.end - start  # edge after the last point of this segment
        if brk < size - 1:
            edges[int(brk)] = False
    return Orientation(size, tuple(edges))


# ---------------------------------------------------------------------------
# pseudo-coefficient traces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedCharacter:
    """A sign and the unramified character |.|^{k/2} of F_v^x."""

    sign: int
    k: int

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.k, 2)


def _run_data(ms: Multisegment):
    """(cuspidal, start, size, center) when ms covers a run once, else None."""
    if ms.is_empty():
        return None
    lines = ms.cuspidal_lines()
    if len(lines) > 1:
        return None
    support = ms.support()
    if any(mult != 1 for mult in support.values()):
        return None
    points = sorted(p for _, p in support.keys())
    if any(b - a != 1 for a, b in zip(points, points[1:])):
        return None
    center = (points[0] + points[-1]) / 2
    return lines[0], points[0], len(points), center


def is_consecutive_run(ms: Multisegment) -> bool:
    return _run_data(ms) is not None


def r_tau_sign(a1: Multisegment) -> SignedCharacter:
    """Sign and character of the transfer on a consecutive-run multisegment.

    The sign is (-1)^(#segments - 1), normalized so a single segment (the
    Steinberg shape) gives +1; it depends only on the orientation, never on
    the cuspidal.  The character is |.|^c for c the run's center offset.
    """
    run = _run_data(a1)
    if run is None:
        raise ValueError(
            f"transfer vanishes: {a1!r} is not a multiplicity-one consecutive run"
        )
    _, _, _, center = run
    k2 = 2 * center
    if k2.denominator != 1:
        raise ValueError("run center is not half-integral")
    return SignedCharacter(sign=(-1) ** (len(a1.segments) - 1), k=int(k2))


# ---------------------------------------------------------------------------
# the cut engine
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cut:
    """One surviving Jacquet cut of a ladder: the transfer data of a1 plus a2.

    Besides the halves and the transfer sign/character, a cut remembers which
    ladder row each a1 position and each a2 piece came from, and which a1
    position pairs sit inside one a1 segment; the coefficient-block calculus
    of the cohomology tables is driven by this row structure.
    """

    ks: tuple[int, ...]
    a1: Multisegment
    a2: Multisegment
    sign: int
    center: Fraction  # center offset of a1; the attached character is |.|^center
    a1_rows: tuple[tuple[Fraction, int], ...] = ()  # position -> source row
    a2_rows: tuple[int, ...] = ()  # row of each a2 segment, in sorted order
    inside: frozenset = frozenset()  # a1 position pairs inside one segment

    def positions(self) -> list[Fraction]:
        return [p for p, _ in self.a1_rows]

    def row_of(self, p: Fraction) -> int:
        for q, row in self.a1_rows:
            if q == p:
                return row
        raise KeyError(p)


def _suffix_pieces(lad: Multisegment, ks: Sequence[int]):
    a1, a2, a2_rows = [], [], []
    rows: dict[Fraction, int] = {}
    for j, (seg, k) in enumerate(zip(lad.segments, ks)):
        if k:
            piece = Segment(seg.cuspidal, seg.end - k + 1, k)
            a1.append(piece)
            for p in piece.positions():
                rows[p] = j
        if seg.length - k:
            piece = Segment(seg.cuspidal, seg.start, seg.length - k)
            a2.append(piece)
            a2_rows.append(j)
    order = sorted(range(len(a2)), key=lambda idx: a2[idx].sort_key())
    return Multisegment(a1), Multisegment(a2), rows, tuple(a2_rows[idx] for idx in order)


def run_cuts(lad: Multisegment, left_units: int) -> list[Cut]:
    """All suffix cuts of the ladder whose first half survives the transfer.

    Unlike the public ``ladder_cuts`` (which lists the Jacquet-module terms),
    this enumerates every suffix tuple and keeps exactly those whose a1 is a
    multiplicity-one consecutive run; these are the terms with a nonzero
    pseudo-coefficient trace, which is what the cohomology cells aggregate.
    """
    lengths = [seg.length for seg in lad.segments]
    if left_units > sum(lengths) or left_units < 0:
        return []
    out = []
    for ks in cut_tuples(lengths, left_units):
        a1, a2, rows, a2_rows = _suffix_pieces(lad, ks)
        run = _run_data(a1)
        if run is None:
            continue
        _, _, _, center = run
        inside = set()
        for seg in a1.segments:
            ppos = seg.positions()
            for a, b in zip(ppos, ppos[1:]):
                inside.add((a, b))
        out.append(
            Cut(
                ks=tuple(ks),
                a1=a1,
                a2=a2,
                sign=(-1) ** (len(a1.segments) - 1),
                center=center,
                a1_rows=tuple(sorted(rows.items())),
                a2_rows=a2_rows,
                inside=frozenset(inside),
            )
        )
    return out


@lru_cache(maxsize=4096)
def rectangle_cuts(pi: CuspidalLabel, s: int, t: int, left_units: int) -> list[Cut]:
    return run_cuts(speh_st_multisegment(pi, s, t), left_units)


# ---------------------------------------------------------------------------
# cell representations
# ---------------------------------------------------------------------------


def _cut_element(cuts: Iterable[Cut], center: Fraction) -> GrothElement:
    acc = GrothElement.zero()
    for cut in cuts:
        if cut.center != center:
            continue
        acc = acc + GrothElement.of(
            label_of_multisegment(cut.a2, KIND_FORMAL), Fraction(0), integer(cut.sign)
        )
    return acc


def R_cell(s: int, t: int, r: int, i: int, pi: CuspidalLabel) -> GrothElement:
    """Intermediate-extension cell: signed cuts of center -i/2, masked by m.

    Returns the bare sum of signed a2-labels; the caller supplies the
    external twist (the block twist times Xi^{i/2}).
    """
    if m_coeff(s, t, r, i) == 0:
        return GrothElement.zero()
    cuts = rectangle_cuts(pi, s, t, r)
    return _cut_element(cuts, Fraction(-i, 2))


def shriek_degree(s: int, t: int, r: int, i_m: int) -> Fraction:
    """Shear from the intermediate degree i_m to the shriek degree."""
    return Fraction(i_m + (s + t - 1) - r, 2)


def intermediate_degree(s: int, t: int, r: int, i_n: int) -> int:
    """Inverse shear: the intermediate degree behind the shriek cell (r, i_n)."""
    return 2 * i_n + r - (s + t - 1)


def S_cell(s: int, t: int, r: int, i: int, pi: CuspidalLabel) -> GrothElement:
    """Shriek-extension cell: the sheared cut sum, masked by n.

    The cell (r, i) of the shriek table reads the cuts of center
    -(2 i + r - s - t + 1)/2; with the diagrams' twist conventions this
    makes the shriek twist Xi^{(2i + r - s - t + 1)/2} literally equal to
    the intermediate twist Xi^{i_m/2} on matching cells, and the shared
    vertex (s + t - 1, 0) carries identical cells on both sides.
    """
    if n_coeff(s, t, r, i) == 0:
        return GrothElement.zero()
    i_m = intermediate_degree(s, t, r, i)
    cuts = rectangle_cuts(pi, s, t, r)
    return _cut_element(cuts, Fraction(-i_m, 2))


R_sti = R_cell
S_sti = S_cell


# ---------------------------------------------------------------------------
# the multiplicative transfer on formal products
# ---------------------------------------------------------------------------


def _red_factor(pi: CuspidalLabel, r_units: int, factor) -> GrothElement | None:
    """Transfer of a single factor, or None when it vanishes identically."""
    if isinstance(factor, OpaqueFactor):
        return None
    assert isinstance(factor, Multisegment)
    lines = factor.cuspidal_lines()
    if len(lines) != 1 or lines[0] != pi:
        return None
    if r_units * pi.g > factor.rank:
        return None
    acc: dict = {}
    for cut in run_cuts(factor, r_units):
        label = label_of_multisegment(cut.a2, KIND_FORMAL)
        key = (label, cut.center)
        acc[key] = acc.get(key, integer(0)) + integer(cut.sign)
    return GrothElement(acc)


def red_tau(pi: CuspidalLabel, r_units: int, x: GrothElement) -> GrothElement:
    """The transfer against the depth-r pseudo-coefficient, extended by Leibniz.

    Terms of the output live over F_v^x times a smaller linear group: the
    character exponent of F_v^x rides in the Xi slot of each term, and the
    label collects the untouched factors times the cut remainder.  Factors
    on other cuspidal lines transfer to zero, so a product label expands as
    the usual one-factor-at-a-time sum.
    """
    if r_units < 1:
        raise ValueError("r_units must be >= 1")
    out = GrothElement.zero()
    for (label, tw), coeff in x.terms.items():
        for idx, factor in enumerate(label.factors):
            red = _red_factor(pi, r_units, factor)
            if red is None:
                continue
            rest = IrreducibleLabel(
                label.factors[:idx] + label.factors[idx + 1 :], KIND_FORMAL
            )
            for (cut_label, char), c in red.terms.items():
                merged = IrreducibleLabel(
                    rest.factors + cut_label.factors, KIND_FORMAL
                )
                out = out + GrothElement.of(merged, tw + char, coeff * c)
    return out
