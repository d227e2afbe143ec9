"""Derived quantities: thick/thin levels, tube fit, cover bounds, trunk status."""

from __future__ import annotations

import pytest

from linkwidth import (
    DeriveError,
    Event,
    LinkMetadata,
    Objective,
    SpecialKind,
    Status,
    WidthMultiset,
    WidthResult,
    classify_trunk,
    cut_split_reduce,
    dbc_bound,
    derive_report,
    exact_widths,
    thick_thin,
    tube_fits,
    widths_of_sequence,
)


def seq(*steps):
    """Build an event tuple from (kind, value) pairs; targets are dummies."""
    events = []
    for i, (kind, value) in enumerate(steps):
        special = SpecialKind.TYPE_I if kind == "X" else None
        events.append(Event(kind, i, special, value))
    return tuple(events)


STAGED_PATTERN = seq(
    ("S", 2), ("S", 4), ("S", 6), ("X", 4),
    ("S", 6), ("X", 4), ("X", 2), ("X", 0),
)


class TestThickThin:
    def test_staged_pattern(self):
        thick, thin = thick_thin(STAGED_PATTERN)
        assert thick == WidthMultiset((6, 6))
        assert thin == WidthMultiset((4,))

    def test_single_chain_has_one_thick_level(self):
        thick, thin = thick_thin(seq(("S", 2), ("S", 4), ("X", 2), ("X", 0)))
        assert thick == WidthMultiset((4,))
        assert thin == WidthMultiset(())

    def test_thin_interleaves_thick(self):
        thick, thin = thick_thin(
            seq(("S", 2), ("X", 0), ("S", 2), ("X", 0), ("S", 2), ("X", 0))
        )
        assert thick == WidthMultiset((2, 2, 2))
        assert thin == WidthMultiset((0, 0))


class TestTubeFits:
    def test_trunk_six_against_tube_sizes(self):
        assert tube_fits(6, 3, 1)
        assert not tube_fits(6, 2, 1)

    def test_threshold_is_strict(self):
        # a tube of size (m, n) holds trunk strictly below (m+1)(n+1)
        assert tube_fits(7, 3, 1)
        assert not tube_fits(8, 3, 1)

    def test_rejects_bad_sizes(self):
        with pytest.raises(DeriveError):
            tube_fits(4, 0, 1)


class TestDbcBound:
    def test_thick_six_six(self):
        bounds, genera = dbc_bound(WidthMultiset((6, 6)))
        assert bounds == (3, 3)
        assert genera == (2, 2)

    def test_thick_four(self):
        bounds, genera = dbc_bound(WidthMultiset((4,)))
        assert bounds == (1,)
        assert genera == (1,)

    def test_thick_two_contributes_nothing(self):
        assert dbc_bound(WidthMultiset((2,))) == ((0,), (0,))

    def test_empty(self):
        assert dbc_bound(WidthMultiset(())) == ((), ())

    def test_rejects_sub_two_levels(self):
        with pytest.raises(DeriveError, match="at least 2"):
            dbc_bound(WidthMultiset((0,)))


def synthetic_result(trunk: int, wirt: int | None) -> WidthResult:
    events = STAGED_PATTERN
    lex, total, _ = widths_of_sequence(events)
    return WidthResult(
        Status.EXACT, lex, total, trunk, events,
        {Objective.LEX: events}, wirtinger_upper=wirt,
    )


class TestClassifyTrunk:
    def test_two_bridge_rule(self, trefoil):
        result = exact_widths(trefoil)
        status = classify_trunk(result, LinkMetadata("t", True, 2))
        assert status.exact and status.value == 4
        assert status.rule == "two-bridge"

    def test_two_bridge_rule_needs_uncut_diagram(self, trefoil):
        result = exact_widths(trefoil)
        status = classify_trunk(result, LinkMetadata("t", True, 2), cut_split=True)
        assert not status.exact

    def test_no_metadata_gives_upper(self, trefoil):
        result = exact_widths(trefoil)
        status = classify_trunk(result, LinkMetadata("t"))
        assert not status.exact
        assert status.value == 4
        assert status.rule == "certificate"

    def test_three_bridge_rule(self):
        result = synthetic_result(trunk=6, wirt=3)
        status = classify_trunk(result, LinkMetadata("x", True, 3))
        assert status.exact and status.value == 6
        assert status.rule == "prime-three-bridge"

    def test_four_bridge_trunk_six(self):
        result = synthetic_result(trunk=6, wirt=4)
        status = classify_trunk(result, LinkMetadata("x", True, 4))
        assert status.exact and status.value == 6

    def test_two_bridge_contradiction(self):
        result = synthetic_result(trunk=6, wirt=2)
        with pytest.raises(DeriveError):
            classify_trunk(result, LinkMetadata("x", True, 2))

    def test_composite_never_exact_by_bridge_rules(self):
        result = synthetic_result(trunk=6, wirt=3)
        status = classify_trunk(result, LinkMetadata("x", False, 3))
        assert not status.exact


class TestDeriveReport:
    def test_staged_pattern_report(self):
        result = synthetic_result(trunk=6, wirt=4)
        status = classify_trunk(result, LinkMetadata("x", True, 4))
        report = derive_report(STAGED_PATTERN, 6, status)
        assert report.thick == WidthMultiset((6, 6))
        assert report.thin == WidthMultiset((4,))
        assert report.height == 2
        assert report.tube_3x1
        assert report.dbc_bound == (3, 3)
        assert report.dbc_genera == (2, 2)

    def test_two_bridge_report(self, trefoil):
        result = exact_widths(trefoil)
        status = classify_trunk(result, LinkMetadata("t", True, 2))
        report = derive_report(result.certificate, result.trunk, status)
        assert report.height == 1
        assert report.dbc_bound == (1,)
        assert report.tube_3x1


class TestCutSplitReduce:
    def test_split_union_matches_direct_search(self, split_trefoil_circle):
        direct = exact_widths(split_trefoil_circle)
        reduced = cut_split_reduce(split_trefoil_circle)
        assert reduced.lex == direct.lex
        assert reduced.sum_width == direct.sum_width
        assert reduced.trunk == direct.trunk

    def test_clean_diagram_passthrough(self, hopf):
        direct = exact_widths(hopf)
        reduced = cut_split_reduce(hopf)
        assert reduced.lex == direct.lex

    def test_circle(self, circle):
        reduced = cut_split_reduce(circle)
        assert reduced.lex == WidthMultiset((2,))
        assert reduced.trunk == 2
