"""Width search: exact optimization, seed-count search, staged trunk search.

The exact search walks closure-complete colored sets as a memoized DAG.
Seeding strand s into a closed set A contributes a descending run of event
values (the seed, then one entry per special fired during the closure), so
each of the three width functionals satisfies a clean recurrence over closed
sets.  Minimizing the lex order through merges relies on merge monotonicity:
X <= Y implies merge(P, X) <= merge(P, Y) for non-increasing multisets.

The naive layer enumerates arbitrary legal sequences (seeds and moves in any
interleaving) on small diagrams and is the reference the exact search is
validated against.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from enum import Enum
from random import Random

from .coloring import (
    ColoringError,
    Event,
    MaskTables,
    WidthMultiset,
    add_seed,
    coloring_move,
    enabled_moves,
    evaluate_seed_order,
    initial_state,
    is_completed,
    widths_of_sequence,
)
from .diagram import LinkDiagram


class SearchError(ValueError):
    """Search invoked on unusable input."""


class _BudgetExceeded(Exception):
    pass


class Status(Enum):
    EXACT = "exact"
    UPPER_BOUND = "upper-bound"
    BOUNDED = "bounded"


class Objective(Enum):
    LEX = "lex"
    SUM = "sum"
    TRUNK = "trunk"


@dataclass(frozen=True)
class SearchBudget:
    """Limits for the exact search.

    max_states bounds the memo table; max_seeds aborts any line of search
    that needs more seeds (a guard rail, not a filter: tripping it gives a
    Bounded result).  time_limit is in seconds; note that using it makes
    results dependent on machine speed, so batch runs leave it unset.
    """

    max_states: int = 200_000
    max_seeds: int | None = None
    time_limit: float | None = None

    def __post_init__(self) -> None:
        if self.max_states < 1:
            raise SearchError("max_states must be positive")
        if self.max_seeds is not None and self.max_seeds < 1:
            raise SearchError("max_seeds must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise SearchError("time_limit must be positive")


@dataclass(frozen=True)
class WidthResult:
    """Outcome of a width computation.

    lex, sum_width and trunk are each optimal for their own functional when
    status is Exact; otherwise they are the values of the best certificate
    found.  certificates maps each functional to the event log attaining its
    reported value; certificate is the one for the requested objective.
    Every certificate replays canonically to its log.
    """

    status: Status
    lex: WidthMultiset
    sum_width: int
    trunk: int
    certificate: tuple[Event, ...]
    certificates: dict[Objective, tuple[Event, ...]]
    wirtinger_upper: int | None = None
    note: str | None = None


def _merge_desc(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] >= b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _candidate_order(diagram: LinkDiagram) -> list[int]:
    # strands passing over many crossings first: they unlock the most moves
    return [
        s.id
        for s in sorted(diagram.strands, key=lambda t: (-len(t.over_crossings), t.id))
    ]


# ---------------------------------------------------------------------------
# Seed-count search
# ---------------------------------------------------------------------------


def wirtinger_upper(
    diagram: LinkDiagram, k_max: int | None = None
) -> tuple[int, frozenset[int]] | None:
    """Smallest k with k seeds whose closure colors the whole diagram.

    Returns (k, witness seed set), or None if no k <= k_max suffices.  Seeds
    already colored by the closure of earlier picks are never tried, which
    is complete for minimal witnesses: a member inside the closure of the
    others could be dropped.
    """
    n = diagram.n_strands
    if n == 0:
        return 0, frozenset()
    if k_max is None:
        k_max = n
    mt = MaskTables(diagram)
    order = _candidate_order(diagram)

    def dfs(start: int, mask: int, remaining: int) -> list[int] | None:
        if mask == mt.full:
            return []
        if remaining == 0:
            return None
        untouched = sum(1 for cm in mt.component_masks if not mask & cm)
        if untouched > remaining:
            return None
        for i in range(start, len(order)):
            s = order[i]
            if mask >> s & 1:
                continue
            sub = dfs(i + 1, mt.closure(mask | (1 << s)), remaining - 1)
            if sub is not None:
                return [s] + sub
        return None

    for k in range(max(1, diagram.n_components), k_max + 1):
        witness = dfs(0, 0, k)
        if witness is not None:
            return k, frozenset(witness)
    return None


# ---------------------------------------------------------------------------
# Exact search
# ---------------------------------------------------------------------------


def exact_widths(
    diagram: LinkDiagram,
    objective: Objective = Objective.LEX,
    budget: SearchBudget | None = None,
) -> WidthResult:
    """Optimize all three width functionals over canonical sequences.

    Canonical sequences (closure after every seed) suffice: rearranging any
    completed sequence into canonical form never increases any functional.
    On budget exhaustion the result downgrades to a single bounding
    certificate with status Bounded.
    """
    if diagram.n_strands == 0:
        raise SearchError("empty diagram has no coloring sequences")
    if budget is None:
        budget = SearchBudget()
    mt = MaskTables(diagram)
    order = _candidate_order(diagram)
    deadline = (
        time.monotonic() + budget.time_limit if budget.time_limit is not None else None
    )
    max_seeds = budget.max_seeds if budget.max_seeds is not None else diagram.n_strands

    # memo[mask] = (lex future, sum future, trunk future,
    #               (lex seed, sum seed, trunk seed))
    memo: dict[int, tuple] = {}

    def solve(mask: int, depth: int) -> tuple:
        if mask == mt.full:
            return (), 0, 0, (None, None, None)
        hit = memo.get(mask)
        if hit is not None:
            return hit
        if len(memo) >= budget.max_states:
            raise _BudgetExceeded(f"state budget {budget.max_states} exhausted")
        if deadline is not None and time.monotonic() > deadline:
            raise _BudgetExceeded(f"time limit {budget.time_limit}s exhausted")
        if depth >= max_seeds:
            raise _BudgetExceeded(f"seed budget {max_seeds} exhausted")
        best_lex = best_sum = best_trunk = None
        seed_lex = seed_sum = seed_trunk = None
        for s in order:
            if mask >> s & 1:
                continue
            entries, nxt = mt.burst(mask, s)
            sub_lex, sub_sum, sub_trunk, _ = solve(nxt, depth + 1)
            lex = _merge_desc(entries, sub_lex)
            total = sum(entries) + sub_sum
            peak = max(entries[0], sub_trunk)
            if best_lex is None or lex < best_lex:
                best_lex, seed_lex = lex, s
            if best_sum is None or total < best_sum:
                best_sum, seed_sum = total, s
            if best_trunk is None or peak < best_trunk:
                best_trunk, seed_trunk = peak, s
        entry = (best_lex, best_sum, best_trunk, (seed_lex, seed_sum, seed_trunk))
        memo[mask] = entry
        return entry

    try:
        lex_future, sum_future, trunk_future, _ = solve(0, 0)
    except _BudgetExceeded as exc:
        return _bounded_result(diagram, str(exc))

    def walk(which: int) -> list[int]:
        mask, depth, seeds = 0, 0, []
        while mask != mt.full:
            s = solve(mask, depth)[3][which]
            seeds.append(s)
            mask = mt.closure(mask | (1 << s))
            depth += 1
        return seeds

    certificates: dict[Objective, tuple[Event, ...]] = {}
    reported = {}
    for which, obj in enumerate((Objective.LEX, Objective.SUM, Objective.TRUNK)):
        state = evaluate_seed_order(diagram, walk(which), checks=True)
        assert is_completed(state)
        certificates[obj] = state.events
        reported[obj] = widths_of_sequence(state.events)

    lex = reported[Objective.LEX][0]
    assert lex_future[-1] == 0 and lex.entries == lex_future[:-1]
    assert reported[Objective.SUM][1] == sum_future
    assert reported[Objective.TRUNK][2] == trunk_future

    wirt = wirtinger_upper(diagram)
    return WidthResult(
        status=Status.EXACT,
        lex=lex,
        sum_width=sum_future,
        trunk=trunk_future,
        certificate=certificates[objective],
        certificates=certificates,
        wirtinger_upper=wirt[0] if wirt else None,
    )


def _bounded_result(diagram: LinkDiagram, note: str) -> WidthResult:
    wirt = wirtinger_upper(diagram, k_max=min(diagram.n_strands, 8))
    if wirt is not None:
        seeds = sorted(wirt[1])
    else:
        seeds = list(range(diagram.n_strands))
    state = evaluate_seed_order(diagram, seeds, checks=True, skip_colored=True)
    lex, total, peak = widths_of_sequence(state.events)
    events = state.events
    return WidthResult(
        status=Status.BOUNDED,
        lex=lex,
        sum_width=total,
        trunk=peak,
        certificate=events,
        certificates={obj: events for obj in Objective},
        wirtinger_upper=wirt[0] if wirt else None,
        note=note,
    )


# ---------------------------------------------------------------------------
# Staged trunk-6 search
# ---------------------------------------------------------------------------


def staged_trunk6(
    diagram: LinkDiagram, *, detect_type2: bool = True
) -> tuple[Event, ...] | None:
    """Look for a 3-seeds-stall-then-finish pattern certifying trunk <= 6.

    Stage one seeds three strands (canonically, skipping any the closures
    already colored) and requires a stall: the diagram is not fully colored
    yet at least one special has fired.  Stage two tries a fourth seed whose
    closure finishes the coloring.  The stall guarantees the final canonical
    log never exceeds value 6.

    detect_type2=False suppresses the Type II firing rule during the stall
    check, for diagnosing which links need it; the returned certificate is
    always replayed with the full rules.
    """
    n = diagram.n_strands
    if n < 4:
        return None
    mt = MaskTables(diagram)
    for trio in itertools.combinations(range(n), 3):
        state = evaluate_seed_order(
            diagram, trio, type2_enabled=detect_type2, checks=False, skip_colored=True
        )
        if is_completed(state) or not state.fired:
            continue
        colored_mask = 0
        for s in state.colored_strands:
            colored_mask |= 1 << s
        for fourth in range(n):
            if colored_mask >> fourth & 1:
                continue
            if mt.closure(colored_mask | (1 << fourth)) != mt.full:
                continue
            final = evaluate_seed_order(
                diagram, list(trio) + [fourth], checks=True, skip_colored=True
            )
            if is_completed(final):
                return final.events
    return None


# ---------------------------------------------------------------------------
# Naive reference layer
# ---------------------------------------------------------------------------


def _naive_tables(diagram: LinkDiagram, limit: int):
    if diagram.n_strands == 0:
        raise SearchError("empty diagram has no coloring sequences")
    if diagram.n_strands > limit or diagram.n_crossings > limit:
        raise SearchError(
            f"naive enumeration limited to {limit} strands/crossings, got "
            f"{diagram.n_strands}/{diagram.n_crossings}"
        )
    mt = MaskTables(diagram)
    closed_curve_bits = [1 << s.id for s in diagram.strands if s.is_closed_curve]

    def fired_count(colored: int, used: int) -> int:
        count = 0
        for xi, (over, uin, uout) in enumerate(mt.crossing_bits):
            if not used >> xi & 1 and colored & over and colored & uin and colored & uout:
                count += 1
        for bit in closed_curve_bits:
            if colored & bit:
                count += 1
        return count

    def transitions(colored: int, used: int):
        """Yield (entries, colored', used') for every legal step.

        Event values never depend on the colors themselves: a crossing with
        all strands colored and no move used on it always fires, whatever
        the colors (different colors give Type I; equal colors force the
        whole under-component monochromatic, which enables Type II at
        exactly the remaining unused crossing).  So sequences collapse to
        walks on (colored set, used set).
        """
        n_colored = bin(colored).count("1")
        n_used = bin(used).count("1")
        v = 2 * (n_colored - n_used - fired_count(colored, used))
        for s in range(mt.n):
            if colored >> s & 1:
                continue
            nc = colored | (1 << s)
            delta = fired_count(nc, used) - fired_count(colored, used)
            yield tuple(range(v + 2, v + 2 - 2 * delta - 2, -2)), nc, used
        for xi, (over, uin, uout) in enumerate(mt.crossing_bits):
            if not colored & over:
                continue
            if bool(colored & uin) == bool(colored & uout):
                continue
            nc = colored | uin | uout
            nu = used | (1 << xi)
            delta = fired_count(nc, nu) - fired_count(colored, used)
            yield tuple(range(v - 2, v - 2 - 2 * delta, -2)), nc, nu

    return mt, transitions


def naive_enumerate(diagram: LinkDiagram, limit: int = 8) -> set[WidthMultiset]:
    """Every width multiset any completed sequence can attain.

    Walks all interleavings of seeds and moves (collapsed to colored/used
    set pairs), not just canonical ones.  Exponential; refuses diagrams
    beyond the size limit.
    """
    mt, transitions = _naive_tables(diagram, limit)
    memo: dict[tuple[int, int], frozenset] = {}

    def futures(colored: int, used: int) -> frozenset:
        if colored == mt.full:
            return frozenset({()})
        key = (colored, used)
        hit = memo.get(key)
        if hit is not None:
            return hit
        out = set()
        for entries, nc, nu in transitions(colored, used):
            for f in futures(nc, nu):
                out.add(_merge_desc(entries, f))
        result = frozenset(out)
        memo[key] = result
        return result

    results = set()
    for f in futures(0, 0):
        assert f and f[-1] == 0
        results.add(WidthMultiset(f[:-1]))
    return results


def naive_minima(diagram: LinkDiagram, limit: int = 8) -> tuple[WidthMultiset, int, int]:
    """Minimum lex multiset, sum and trunk over all completed sequences.

    Agrees with min over naive_enumerate but memoizes one optimum per state
    and per functional instead of whole multiset sets.
    """
    mt, transitions = _naive_tables(diagram, limit)
    memo: dict[tuple[int, int], tuple] = {}

    def best(colored: int, used: int) -> tuple:
        if colored == mt.full:
            return (), 0, 0
        key = (colored, used)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best_lex = best_sum = best_trunk = None
        for entries, nc, nu in transitions(colored, used):
            sub_lex, sub_sum, sub_trunk = best(nc, nu)
            lex = _merge_desc(entries, sub_lex)
            total = sum(entries) + sub_sum
            peak = max(entries[0], sub_trunk) if entries else sub_trunk
            if best_lex is None or lex < best_lex:
                best_lex = lex
            if best_sum is None or total < best_sum:
                best_sum = total
            if best_trunk is None or peak < best_trunk:
                best_trunk = peak
        entry = (best_lex, best_sum, best_trunk)
        memo[key] = entry
        return entry

    lex, total, peak = best(0, 0)
    assert lex[-1] == 0
    return WidthMultiset(lex[:-1]), total, peak


def sample_naive_sequences(
    diagram: LinkDiagram, count: int, rng: Random, limit: int = 8
) -> list[tuple[Event, ...]]:
    """Random completed sequences, drawn by uniform choice among legal steps."""
    if diagram.n_strands == 0 or diagram.n_strands > limit:
        raise SearchError(f"sampling limited to 1..{limit} strands")
    out = []
    for _ in range(count):
        state = initial_state(diagram)
        while not is_completed(state):
            seeds = [("S", s) for s, c in enumerate(state.colors) if c is None]
            moves = [("M", x) for x in enabled_moves(state)]
            kind, target = rng.choice(seeds + moves)
            if kind == "S":
                state = add_seed(state, target)
            else:
                state = coloring_move(state, target)
        out.append(state.events)
    return out


def canonical_rearrangement(
    diagram: LinkDiagram, events
) -> tuple[Event, ...]:
    """Replay a sequence's seeds in order, canonically.

    Closure runs after every seed; seeds that earlier closures already
    colored are dropped.  The result never exceeds the original sequence in
    lex order, sum or trunk.
    """
    seeds = [e.target for e in events if e.kind == "S"]
    state = evaluate_seed_order(diagram, seeds, checks=True, skip_colored=True)
    if not is_completed(state):
        raise ColoringError("sequence seeds do not complete the diagram")
    return state.events
