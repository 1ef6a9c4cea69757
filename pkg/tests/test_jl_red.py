import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from htgroth.diagrams import m_support
from htgroth.jl_red import (
    R_cell,
    S_cell,
    multisegment_of_orientation,
    orientation_of_run,
    orientations,
    r_tau_sign,
    rectangle_cuts,
    red_tau,
)
from htgroth.segments import (
    CuspidalLabel,
    GrothElement,
    IrreducibleLabel,
    KIND_FORMAL,
    Multisegment,
    Segment,
    groth_product,
    half,
    label_of_multisegment,
    make_steinberg,
    speh_st_multisegment,
)

PI = CuspidalLabel("pi", g=1)
RHO = CuspidalLabel("rho", g=1)


class TestOrientations:
    def test_counts(self):
        assert len(orientations(1)) == 1
        assert len(orientations(2)) == 2
        assert len(orientations(4)) == 8

    def test_extreme_orientations(self):
        full_right = [o for o in orientations(3) if all(o.edges)][0]
        assert multisegment_of_orientation(full_right, PI) == Multisegment(
            [Segment(PI, -1, 3)]
        )
        full_left = [o for o in orientations(3) if not any(o.edges)][0]
        assert multisegment_of_orientation(full_left, PI) == Multisegment(
            [Segment(PI, p, 1) for p in (-1, 0, 1)]
        )

    def test_t1(self):
        (o,) = orientations(1)
        assert multisegment_of_orientation(o, PI) == Multisegment([Segment(PI, 0, 1)])

    def test_bijection(self):
        for t in range(1, 7):
            images = {multisegment_of_orientation(o, PI) for o in orientations(t)}
            assert len(images) == 2 ** (t - 1)
            for o in orientations(t):
                assert orientation_of_run(multisegment_of_orientation(o, PI)) == o

    def test_t2_dichotomy(self):
        right, left = orientations(2)
        assert right.edges == (True,) and left.edges == (False,)
        assert multisegment_of_orientation(right, PI) == Multisegment(
            [Segment(PI, half(-1), 2)]
        )
        assert multisegment_of_orientation(left, PI) == Multisegment(
            [Segment(PI, half(-1), 1), Segment(PI, half(1), 1)]
        )

    def test_validation(self):
        import pytest
        from htgroth.jl_red import Orientation

        with pytest.raises(ValueError):
            Orientation(2, ())
        with pytest.raises(ValueError):
            orientations(0)


class TestSign:
    def test_steinberg_positive(self):
        for t in range(1, 6):
            sc = r_tau_sign(Multisegment([Segment(PI, half(1 - t), t)]))
            assert sc.sign == 1
            assert sc.k == 0

    def test_speh_two_negative(self):
        ms = Multisegment([Segment(PI, half(-1), 1), Segment(PI, half(1), 1)])
        sc = r_tau_sign(ms)
        assert sc.sign == -1
        assert sc.k == 0

    def test_center_offset_is_character(self):
        ms = Multisegment([Segment(PI, 2, 3)])  # centered at 3
        sc = r_tau_sign(ms)
        assert sc.sign == 1
        assert sc.exponent == 3

    def test_sign_independent_of_cuspidal(self):
        for o in orientations(4):
            a = r_tau_sign(multisegment_of_orientation(o, PI))
            b = r_tau_sign(multisegment_of_orientation(o, RHO))
            assert a.sign == b.sign and a.k == b.k

    def test_rejects_non_run(self):
        with pytest.raises(ValueError):
            r_tau_sign(Multisegment([Segment(PI, 0, 1), Segment(PI, 2, 1)]))  # gap
        with pytest.raises(ValueError):
            r_tau_sign(Multisegment([Segment(PI, 0, 2), Segment(PI, 1, 1)]))  # mult 2


class TestCells:
    def test_vertex_cell_nonzero_and_shared(self):
        for s in range(1, 7):
            for t in range(1, 7):
                if s * t > 12:
                    continue
                R = R_cell(s, t, s + t - 1, 0, PI)
                S = S_cell(s, t, s + t - 1, 0, PI)
                assert not R.is_zero()
                assert R == S

    def test_steinberg_single_point(self):
        for t in range(1, 5):
            for r in range(1, t + 1):
                for i in range(-t - 1, t + 2):
                    cell = R_cell(1, t, r, i, PI)
                    if (r, i) == (t, 0):
                        assert cell == GrothElement.one()
                    else:
                        assert cell.is_zero()

    def test_outside_support_vanishes(self):
        support = set(m_support(3, 2).points)
        for r in range(1, 7):
            for i in range(-6, 7):
                if (r, i) not in support:
                    assert R_cell(3, 2, r, i, PI).is_zero()

    def test_shriek_steinberg_row_nonzero(self):
        for t in range(1, 6):
            for r in range(1, t + 1):
                cell = S_cell(1, t, r, 0, PI)
                assert not cell.is_zero()
                if r < t:
                    ((label, _),) = cell.terms
                    # the remainder is the bottom prefix of the segment
                    (ms,) = label.multisegments()
                    assert ms == Multisegment([Segment(PI, half(1 - t), t - r)])

    def test_shriek_outside_support_vanishes(self):
        from htgroth.diagrams import n_support

        support = set(n_support(2, 3).points)
        for r in range(1, 8):
            for i in range(0, 8):
                if (r, i) not in support:
                    assert S_cell(2, 3, r, i, PI).is_zero()

    def test_every_support_cell_nonzero(self):
        for s in range(1, 6):
            for t in range(1, 6):
                for (r, i) in m_support(s, t):
                    assert not R_cell(s, t, r, i, PI).is_zero(), (s, t, r, i)

    def test_speh_column_values(self):
        # bottom-degree cell of the width-4 Speh block at stratum 2
        cell = R_cell(4, 1, 2, 2, PI)
        ((label, tw),) = cell.terms
        assert tw == 0
        assert label.multisegments()[0] == Multisegment(
            [Segment(PI, half(1), 1), Segment(PI, half(3), 1)]
        )

    def test_mod_l_stability_relabeling(self):
        # same cut data under a different cuspidal id, coefficients unchanged
        for (r, i) in m_support(2, 2):
            a = R_cell(2, 2, r, i, PI)
            b = R_cell(2, 2, r, i, RHO)
            assert sorted(repr(c) for _, c in a.sorted_terms()) == sorted(
                repr(c) for _, c in b.sorted_terms()
            )


class TestRedTau:
    def test_vanishes_off_line(self):
        x = GrothElement.of(make_steinberg(RHO, 2))
        assert red_tau(PI, 1, x).is_zero()

    def test_rank_exhausting_cut(self):
        x = GrothElement.of(make_steinberg(PI, 1))
        out = red_tau(PI, 1, x)
        assert out == GrothElement.of(IrreducibleLabel.unit(), 0, 1)

    def test_leibniz_two_factors(self):
        a = label_of_multisegment(speh_st_multisegment(PI, 2, 1), KIND_FORMAL)
        b = label_of_multisegment(speh_st_multisegment(PI, 1, 2), KIND_FORMAL)
        x = GrothElement.of(a)
        y = GrothElement.of(b)
        lhs = red_tau(PI, 1, groth_product(x, y))
        rhs = groth_product(red_tau(PI, 1, x), y) + groth_product(x, red_tau(PI, 1, y))
        assert lhs == rhs

    @settings(max_examples=60, deadline=None)
    @given(data=st.data())
    def test_leibniz_random_products(self, data):
        n = data.draw(st.integers(min_value=1, max_value=4))
        factors = []
        for _ in range(n):
            line = data.draw(st.sampled_from([PI, RHO]))
            s = data.draw(st.integers(min_value=1, max_value=2))
            t = data.draw(st.integers(min_value=1, max_value=2))
            shift = half(data.draw(st.integers(min_value=-2, max_value=2)))
            factors.append(
                label_of_multisegment(
                    speh_st_multisegment(line, s, t).twist(shift), KIND_FORMAL
                )
            )
        depth = data.draw(st.integers(min_value=1, max_value=2))
        elements = [GrothElement.of(f) for f in factors]
        product = elements[0]
        for e in elements[1:]:
            product = groth_product(product, e)
        lhs = red_tau(PI, depth, product)
        rhs = GrothElement.zero()
        for idx in range(n):
            rest = [e for j, e in enumerate(elements) if j != idx]
            term = red_tau(PI, depth, elements[idx])
            for e in rest:
                term = groth_product(term, e)
            rhs = rhs + term
        assert lhs == rhs


def test_rectangle_cut_rows_partition():
    for s, t in [(2, 2), (3, 2), (2, 3)]:
        for rank in range(0, s * t + 1):
            for cut in rectangle_cuts(PI, s, t, rank):
                assert len(cut.positions()) == rank
                assert cut.a1.rank + cut.a2.rank == s * t
