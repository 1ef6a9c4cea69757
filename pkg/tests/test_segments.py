from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from htgroth.segments import (
    CuspidalLabel,
    GrothElement,
    IrreducibleLabel,
    Multisegment,
    Partition,
    Segment,
    box_partitions,
    dominance_leq,
    groth_product,
    half,
    ladder_cuts,
    make_speh_st,
    make_steinberg,
    speh_st_multisegment,
    steinberg_multisegment,
    twist,
)
from htgroth.symbolic import atom

PI = CuspidalLabel("pi", g=1)
PI2 = CuspidalLabel("pi2", g=2)


class TestConstructors:
    def test_steinberg_center_zero(self):
        assert steinberg_multisegment(PI, 1) == Multisegment([Segment(PI, 0, 1)])
        assert steinberg_multisegment(PI, 2) == Multisegment([Segment(PI, half(-1), 2)])
        assert steinberg_multisegment(PI, 3) == Multisegment([Segment(PI, -1, 3)])

    def test_speh_st_ladder(self):
        assert speh_st_multisegment(PI, 1, 1) == Multisegment([Segment(PI, 0, 1)])
        assert speh_st_multisegment(PI, 2, 1) == Multisegment(
            [Segment(PI, half(-1), 1), Segment(PI, half(1), 1)]
        )
        assert speh_st_multisegment(PI, 2, 2) == Multisegment(
            [Segment(PI, -1, 2), Segment(PI, 0, 2)]
        )

    def test_speh_st_is_ladder_and_rank(self):
        for s in range(1, 5):
            for t in range(1, 5):
                ms = speh_st_multisegment(PI2, s, t)
                assert ms.is_ladder()
                assert ms.rank == s * t * PI2.g

    def test_label_rank(self):
        assert make_steinberg(PI2, 3).rank == 6
        assert make_speh_st(PI, 2, 3).rank == 6


class TestTwist:
    def test_twist_steinberg_shift(self):
        shifted = twist(make_steinberg(PI, 2), half(1))
        assert shifted.multisegments()[0] == Multisegment([Segment(PI, 0, 2)])

    def test_twist_identity(self):
        x = make_speh_st(PI, 2, 2)
        assert twist(x, 0) == x

    @given(
        num=st.integers(min_value=-8, max_value=8),
        s=st.integers(min_value=1, max_value=4),
        t=st.integers(min_value=1, max_value=4),
    )
    def test_twist_group_action(self, num, s, t):
        x = make_speh_st(PI, s, t)
        n = half(num)
        assert twist(twist(x, n), -n) == x

    def test_twist_groth_element_label_only(self):
        x = GrothElement.of(make_steinberg(PI, 2), half(1))
        y = x.twist(half(1))
        ((label, tw),) = y.terms.keys()
        assert tw == half(1)  # external slot untouched
        assert label.multisegments()[0].segments[0].start == 0

    def test_xi_twist_slot(self):
        x = GrothElement.of(make_steinberg(PI, 2), 0)
        assert ((make_steinberg(PI, 2), half(3)),) == tuple(x.xi_twist(half(3)).terms)


class TestLadderCuts:
    def test_speh2_single_cut(self):
        lad = speh_st_multisegment(PI, 2, 1)
        cuts = ladder_cuts(lad, 1)
        assert cuts == [
            (
                Multisegment([Segment(PI, half(1), 1)]),
                Multisegment([Segment(PI, half(-1), 1)]),
            )
        ]

    def test_st2_single_cut(self):
        cuts = ladder_cuts(steinberg_multisegment(PI, 2), 1)
        assert cuts == [
            (
                Multisegment([Segment(PI, half(1), 1)]),
                Multisegment([Segment(PI, half(-1), 1)]),
            )
        ]

    def test_speh2_st2_two_cuts(self):
        cuts = ladder_cuts(speh_st_multisegment(PI, 2, 2), 2)
        assert len(cuts) == 2

    def test_extremes(self):
        lad = speh_st_multisegment(PI, 3, 2)
        assert ladder_cuts(lad, 0) == [(Multisegment(), lad)]
        assert ladder_cuts(lad, lad.rank) == [(lad, Multisegment())]

    def test_rank_conservation(self):
        lad = speh_st_multisegment(PI2, 3, 2)
        for k in range(0, 7):
            for a1, a2 in ladder_cuts(lad, 2 * k):
                assert a1.rank == 2 * k
                assert a1.rank + a2.rank == lad.rank

    @given(
        s=st.integers(min_value=1, max_value=5),
        t=st.integers(min_value=1, max_value=5),
        k=st.integers(min_value=0, max_value=25),
    )
    def test_cut_count_is_box_partition_count(self, s, t, k):
        if k > s * t:
            return
        lad = speh_st_multisegment(PI, s, t)
        assert len(ladder_cuts(lad, k)) == len(box_partitions(s, t, k))

    def test_rejects_bad_rank(self):
        lad = speh_st_multisegment(PI2, 2, 2)
        with pytest.raises(ValueError):
            ladder_cuts(lad, 3)  # not a multiple of g=2
        with pytest.raises(ValueError):
            ladder_cuts(lad, 10)  # exceeds total

    def test_general_ladder_halves_are_ladders(self):
        # non-rectangle ladder: lengths 1 and 3
        lad = Multisegment([Segment(PI, 0, 1), Segment(PI, 1, 3)])
        assert lad.is_ladder()
        for k in range(0, 5):
            cuts = ladder_cuts(lad, k)
            for a1, a2 in cuts:
                assert a1.is_ladder() and a2.is_ladder()
                assert a1.rank == k
        assert ladder_cuts(lad, 0) == [(Multisegment(), lad)]
        assert ladder_cuts(lad, 4) == [(lad, Multisegment())]


class TestGrothProduct:
    def test_unit(self):
        x = GrothElement.of(make_steinberg(PI, 2))
        assert groth_product(x, GrothElement.one()) == x

    def test_bilinear(self):
        x = GrothElement.of(make_steinberg(PI, 2)).scale(2)
        y = GrothElement.of(make_steinberg(PI2, 1)).scale(3)
        prod = groth_product(x, y)
        ((_, _),) = prod.terms.keys()
        assert list(prod.terms.values())[0] == 6

    def test_unlinked_product_keeps_kind(self):
        a = GrothElement.of(make_speh_st(PI, 2, 1))
        b = GrothElement.of(make_speh_st(PI2, 2, 2))
        ((label, _),) = groth_product(a, b).terms.keys()
        assert label.kind == "speh-of-st-product"

    def test_linked_product_degrades_to_formal(self):
        a = GrothElement.of(make_speh_st(PI, 2, 1))
        b = GrothElement.of(make_speh_st(PI, 2, 2))
        ((label, _),) = groth_product(a, b).terms.keys()
        assert label.kind == "formal"

    @given(data=st.data())
    def test_commutative_associative(self, data):
        labels = [
            GrothElement.of(make_steinberg(PI, data.draw(st.integers(1, 3))))
            for _ in range(3)
        ]
        x, y, z = labels
        assert groth_product(x, y) == groth_product(y, x)
        assert groth_product(groth_product(x, y), z) == groth_product(
            x, groth_product(y, z)
        )


class TestPartition:
    def test_dominance_examples(self):
        assert dominance_leq(Partition((1, 1, 1)), Partition((3,)))
        assert dominance_leq(Partition((2, 2)), Partition((3, 1)))
        assert not dominance_leq(Partition((3, 1)), Partition((2, 2)))

    def test_rejects_unequal_sums(self):
        with pytest.raises(ValueError):
            dominance_leq(Partition((2,)), Partition((3,)))

    def test_rejects_bad_shape(self):
        with pytest.raises(ValueError):
            Partition((1, 2))
        with pytest.raises(ValueError):
            Partition((2, 0))

    def test_dominance_partial_order(self):
        parts = [Partition(p) for p in [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]]
        for p in parts:
            assert dominance_leq(p, p)
        for p in parts:
            for q in parts:
                for r in parts:
                    if dominance_leq(p, q) and dominance_leq(q, r):
                        assert dominance_leq(p, r)


def test_groth_element_zero_pruning():
    x = GrothElement.of(make_steinberg(PI, 1), coeff=atom("a"))
    assert (x - x).is_zero()


def test_cuspidal_equality_by_id():
    assert CuspidalLabel("x", g=1) == CuspidalLabel("x", g=1)
    assert CuspidalLabel("x") != CuspidalLabel("y")


def test_segments_on_different_lines_differ():
    a = Segment(PI, 0, 2)
    b = Segment(PI2, 0, 2)
    assert a != b
    assert Multisegment([a]) != Multisegment([b])
    assert GrothElement.of(make_steinberg(PI, 2)) != GrothElement.of(
        make_steinberg(PI2, 2)
    )
