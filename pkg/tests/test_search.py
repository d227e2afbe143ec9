"""Seed search: wirtinger bound, exact widths, staged trunk, naive baseline."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkwidth import (
    Objective,
    SearchBudget,
    Status,
    WidthMultiset,
    build_diagram,
    canonical_rearrangement,
    evaluate_seed_order,
    exact_widths,
    is_completed,
    lex_compare,
    naive_enumerate,
    naive_minima,
    parse_gauss,
    sample_naive_sequences,
    staged_trunk6,
    widths_of_sequence,
    wirtinger_upper,
)
from linkwidth.search import _merge_desc

from conftest import RANDOM_SMALL, TREFOIL


class TestWirtingerUpper:
    def test_trefoil_needs_two_seeds(self, trefoil):
        count, seeds = wirtinger_upper(trefoil)
        assert count == 2
        state = evaluate_seed_order(trefoil, sorted(seeds))
        assert is_completed(state)

    def test_hopf(self, hopf):
        assert wirtinger_upper(hopf)[0] == 2

    def test_circle(self, circle):
        assert wirtinger_upper(circle)[0] == 1

    def test_seed_set_is_minimal(self, figure_eight):
        count, seeds = wirtinger_upper(figure_eight)
        assert count == 2
        for s in seeds:
            partial = evaluate_seed_order(figure_eight, [t for t in seeds if t != s])
            assert not is_completed(partial)

    def test_k_max_cutoff(self, trefoil):
        assert wirtinger_upper(trefoil, k_max=1) is None


class TestExactWidths:
    def test_trefoil(self, trefoil):
        result = exact_widths(trefoil)
        assert result.status is Status.EXACT
        assert result.lex == WidthMultiset((4, 2, 2))
        assert result.sum_width == 8
        assert result.trunk == 4

    def test_certificate_replays_to_reported_widths(self, figure_eight):
        result = exact_widths(figure_eight)
        lex, total, trunk = widths_of_sequence(result.certificate)
        assert lex == result.lex
        assert (total, trunk) == (result.sum_width, result.trunk)

    def test_per_objective_certificates(self, torus2_4):
        result = exact_widths(torus2_4)
        for objective, events in result.certificates.items():
            lex, total, trunk = widths_of_sequence(events)
            if objective is Objective.LEX:
                assert lex_compare(lex, result.lex) == 0
            elif objective is Objective.SUM:
                assert total == result.sum_width
            else:
                assert trunk == result.trunk

    @pytest.mark.parametrize("text", RANDOM_SMALL)
    def test_matches_naive_minima(self, text):
        diagram = build_diagram(parse_gauss(text))
        result = exact_widths(diagram)
        assert result.status is Status.EXACT
        lex, total, trunk = naive_minima(diagram)
        assert lex_compare(result.lex, lex) == 0
        assert result.sum_width == total
        assert result.trunk == trunk

    def test_split_union_sums_parts(self, split_trefoil_circle):
        result = exact_widths(split_trefoil_circle)
        # trefoil part {4,2,2}, a zero while split, then the circle at 2
        assert result.lex == WidthMultiset((4, 2, 2, 2, 0))
        assert result.sum_width == 10
        assert result.trunk == 4


class TestBudgets:
    def test_state_budget_reports_bound(self):
        diagram = build_diagram(parse_gauss(RANDOM_SMALL[3]))
        result = exact_widths(diagram, budget=SearchBudget(max_states=3))
        assert result.status is Status.BOUNDED
        assert "exhausted" in result.note
        lex, total, trunk = widths_of_sequence(result.certificate)
        assert lex_compare(lex, result.lex) == 0
        assert trunk == result.trunk

    def test_seed_budget_reports_bound(self):
        diagram = build_diagram(parse_gauss(RANDOM_SMALL[3]))
        result = exact_widths(diagram, budget=SearchBudget(max_seeds=1))
        assert result.status is Status.BOUNDED
        assert "seed budget" in result.note

    def test_bound_is_honest(self):
        diagram = build_diagram(parse_gauss(RANDOM_SMALL[3]))
        bounded = exact_widths(diagram, budget=SearchBudget(max_states=3))
        exact = exact_widths(diagram)
        assert lex_compare(exact.lex, bounded.lex) <= 0
        assert exact.trunk <= bounded.trunk


class TestStagedTrunk:
    def test_small_diagrams_do_not_stage(self, trefoil, hopf, torus2_4):
        # a completing trio leaves nothing for the stall rule to certify
        for d in (trefoil, hopf, torus2_4):
            assert staged_trunk6(d) is None

    def test_staged_certificate_value(self, bundled_by_name):
        from linkwidth import dt_to_gauss, parse_dt

        entry = bundled_by_name["l9a55"]
        diagram = build_diagram(dt_to_gauss(parse_dt(entry.code)))
        events = staged_trunk6(diagram)
        assert events is not None
        lex, _, trunk = widths_of_sequence(events)
        assert trunk == 6
        assert lex.entries[0] == 6
        state = evaluate_seed_order(
            diagram, [e.target for e in events if e.kind == "S"]
        )
        assert is_completed(state)


class TestNaiveBaseline:
    def test_enumerate_trefoil(self, trefoil):
        outcomes = {str(m) for m in naive_enumerate(trefoil)}
        assert outcomes == {"{4,2,2}", "{6,4,4,2,2}"}

    def test_sampled_sequences_complete(self, figure_eight):
        rng = random.Random(3)
        for events in sample_naive_sequences(figure_eight, 20, rng):
            assert events[-1].value_after == 0
            seeds = sum(1 for e in events if e.kind == "S")
            specials = sum(1 for e in events if e.kind == "X")
            assert seeds == specials

    @pytest.mark.parametrize("text", [TREFOIL, *RANDOM_SMALL])
    def test_rearrangement_never_worse(self, text):
        diagram = build_diagram(parse_gauss(text))
        rng = random.Random(11)
        for events in sample_naive_sequences(diagram, 40, rng):
            base = widths_of_sequence(events)
            better = widths_of_sequence(canonical_rearrangement(diagram, events))
            assert lex_compare(better[0], base[0]) <= 0
            assert better[1] <= base[1]
            assert better[2] <= base[2]


even = st.integers(1, 25).map(lambda k: 2 * k)


@given(st.lists(even, max_size=8), st.lists(even, max_size=8))
@settings(max_examples=200, deadline=None)
def test_merge_desc_keeps_order_and_content(xs, ys):
    a = tuple(sorted(xs, reverse=True))
    b = tuple(sorted(ys, reverse=True))
    merged = _merge_desc(a, b)
    assert sorted(merged, reverse=True) == list(merged)
    assert sorted(merged) == sorted(list(a) + list(b))


@given(
    st.lists(even, max_size=6),
    st.lists(even, max_size=6),
    st.lists(even, max_size=6),
)
@settings(max_examples=200, deadline=None)
def test_merge_desc_monotone(xs, ys, zs):
    """Improving one operand never hurts the merge; the per-piece walks may
    therefore minimize independently."""

    def desc(v):
        return tuple(sorted(v, reverse=True))

    a, b, c = desc(xs), desc(ys), desc(zs)
    if lex_compare(WidthMultiset(a), WidthMultiset(b)) <= 0:
        lo, hi = a, b
    else:
        lo, hi = b, a
    merged_lo = WidthMultiset(_merge_desc(lo, c))
    merged_hi = WidthMultiset(_merge_desc(hi, c))
    assert lex_compare(merged_lo, merged_hi) <= 0
