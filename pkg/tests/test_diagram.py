"""Strand and crossing extraction, cut/split detection, component surgery."""

from __future__ import annotations

import pytest

from linkwidth import (
    CutSplitKind,
    DiagramError,
    build_diagram,
    detect_cut_split,
    exact_widths,
    is_split_shadow,
    parse_gauss,
    remove_component,
    serialize_gauss,
    wirtinger_upper,
)
from linkwidth.codec import rotate_component

from conftest import RANDOM_SMALL, SPLIT_TREFOIL_CIRCLE, TREFOIL


class TestStructure:
    def test_trefoil(self, trefoil):
        assert trefoil.n_crossings == 3
        assert trefoil.n_components == 1
        # each strand runs from one under-passage to the next
        assert trefoil.n_strands == 3
        for strand in trefoil.strands:
            assert len(strand.over_crossings) == 1
            assert not strand.is_closed_curve

    def test_hopf(self, hopf):
        assert hopf.n_crossings == 2
        assert hopf.n_strands == 2
        # one strand per component; each passes under where it meets the other
        for crossing in hopf.crossings:
            assert crossing.under_in == crossing.under_out
            assert crossing.component_over != crossing.component_under

    def test_circle_is_one_closed_curve(self, circle):
        assert circle.n_crossings == 0
        assert circle.n_strands == 1
        assert circle.strands[0].is_closed_curve

    def test_kink_strand_is_self_adjacent(self, kink):
        assert kink.n_strands == 1
        strand = kink.strands[0]
        assert strand.tail_crossing == strand.head_crossing == 1

    def test_strand_component_partition(self, torus2_4):
        by_component = {}
        for strand in torus2_4.strands:
            by_component.setdefault(strand.component, []).append(strand.id)
        assert set(by_component) == {0, 1}
        assert sorted(sum(by_component.values(), [])) == list(
            range(torus2_4.n_strands)
        )


class TestCutSplit:
    def test_clean_diagrams_have_no_witnesses(self, trefoil, figure_eight, torus2_4):
        for d in (trefoil, figure_eight, torus2_4):
            assert detect_cut_split(d) == []

    def test_single_under_components_are_flagged(self, hopf):
        # each hopf component passes under once, so its one strand starts
        # and ends at the same crossing
        witnesses = detect_cut_split(hopf)
        assert [(w.kind, w.strand) for w in witnesses] == [
            (CutSplitKind.SELF_ADJACENT_STRAND, 0),
            (CutSplitKind.SELF_ADJACENT_STRAND, 1),
        ]

    def test_kink_witness(self, kink):
        (w,) = detect_cut_split(kink)
        assert w.kind is CutSplitKind.SELF_ADJACENT_STRAND
        assert w.crossing == 1

    def test_circle_witness(self, circle):
        (w,) = detect_cut_split(circle)
        assert w.kind is CutSplitKind.CLOSED_CURVE_STRAND
        assert w.crossing is None

    def test_split_union(self, split_trefoil_circle):
        assert is_split_shadow(split_trefoil_circle)
        (w,) = detect_cut_split(split_trefoil_circle)
        assert w.kind is CutSplitKind.CLOSED_CURVE_STRAND
        assert w.component == 1

    def test_connected_diagrams_not_split(self, trefoil, hopf, circle):
        assert not is_split_shadow(trefoil)
        assert not is_split_shadow(hopf)
        # a single circle has nothing to be split from
        assert not is_split_shadow(circle)

    def test_two_kinked_circles(self):
        d = build_diagram(parse_gauss("O1,U1;O2,U2"))
        assert is_split_shadow(d)
        kinds = {w.kind for w in detect_cut_split(d)}
        assert kinds == {CutSplitKind.SELF_ADJACENT_STRAND}


class TestRemoveComponent:
    def test_remove_circle_leaves_trefoil(self, split_trefoil_circle):
        rest = remove_component(split_trefoil_circle, 1)
        assert serialize_gauss(rest.code) == TREFOIL

    def test_remove_trefoil_leaves_circle(self, split_trefoil_circle):
        rest = remove_component(split_trefoil_circle, 0)
        assert rest.n_crossings == 0
        assert rest.n_components == 1

    def test_shared_crossings_dropped(self):
        d = build_diagram(parse_gauss("U1,U2,O3,U3,U4,O4,O1,O2,O5;U5"))
        rest = remove_component(d, 1)
        assert rest.n_components == 1
        # crossing 5 joined the components, so it goes away with either one
        assert rest.n_crossings == 4

    def test_missing_component_rejected(self, trefoil):
        with pytest.raises(DiagramError, match="no component 3"):
            remove_component(trefoil, 3)


class TestRotationInvariance:
    @pytest.mark.parametrize("text", [TREFOIL, SPLIT_TREFOIL_CIRCLE, *RANDOM_SMALL])
    def test_widths_unchanged_by_basepoint(self, text):
        code = parse_gauss(text)
        base = exact_widths(build_diagram(code))
        for comp in range(len(code.components)):
            steps = max(1, len(code.components[comp]) // 2)
            rotated = rotate_component(code, comp, steps)
            moved = exact_widths(build_diagram(rotated))
            assert moved.lex == base.lex
            assert moved.sum_width == base.sum_width
            assert moved.trunk == base.trunk

    def test_wirtinger_unchanged(self, torus2_4):
        base = wirtinger_upper(torus2_4)[0]
        rotated = rotate_component(torus2_4.code, 0, 3)
        assert wirtinger_upper(build_diagram(rotated))[0] == base
