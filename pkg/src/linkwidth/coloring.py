"""The coloring calculus: seeds, moves, special crossings, width readout.

A coloring sequence grows a partial coloring of the strands.  Seeding paints
an uncolored strand with a fresh color; a coloring move pushes a color across
a crossing whose over-strand is colored, from one under-strand to the other.
Certain crossings fire as "special" events the moment their three strands are
colored without a move ever having been used there; each firing retires one
color.

Every seed raises the running value by 2, every special firing lowers it
by 2, and nothing else changes it.  The multiset of values attained after
each event, leaving out the final one, is the width multiset the three
width functionals are read from.

States are immutable; every operation returns a new state.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field, replace
from enum import Enum
from random import Random

from .codec import parse_gauss, serialize_gauss
from .diagram import LinkDiagram, build_diagram


class ColoringError(ValueError):
    """Illegal coloring operation or inconsistent sequence."""


class SpecialKind(Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    DEGENERATE = "D"


@dataclass(frozen=True)
class Event:
    """One entry of the event log.

    kind is "S" for a seed or "X" for a special firing.  target is the
    seeded strand or the fired crossing; it is None for the degenerate
    firing that accompanies seeding a closed-curve strand, which has no
    crossing to attach to.
    """

    kind: str
    target: int | None
    special: SpecialKind | None
    value_after: int


def seed_event(strand: int, value_after: int) -> Event:
    return Event("S", strand, None, value_after)


def special_event(crossing: int | None, kind: SpecialKind, value_after: int) -> Event:
    return Event("X", crossing, kind, value_after)


@functools.total_ordering
@dataclass(frozen=True)
class WidthMultiset:
    """A width multiset: even non-negative entries, kept non-increasing.

    Ordering is lexicographic on the non-increasing entry tuples, with a
    strict prefix counting as smaller; this is exactly Python tuple order.
    """

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(e < 0 or e % 2 for e in self.entries):
            raise ColoringError(f"width entries must be even and >= 0: {self.entries}")
        if any(a < b for a, b in zip(self.entries, self.entries[1:])):
            raise ColoringError(f"width entries must be non-increasing: {self.entries}")

    @classmethod
    def of_values(cls, values) -> "WidthMultiset":
        return cls(tuple(sorted(values, reverse=True)))

    @property
    def total(self) -> int:
        return sum(self.entries)

    @property
    def top(self) -> int:
        return max(self.entries, default=0)

    def merge(self, other: "WidthMultiset") -> "WidthMultiset":
        return WidthMultiset.of_values(self.entries + other.entries)

    def __lt__(self, other: "WidthMultiset") -> bool:
        return self.entries < other.entries

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.entries) + "}"


def lex_compare(a: WidthMultiset, b: WidthMultiset) -> int:
    """-1, 0 or 1 as a orders before, equal to, or after b."""
    if a.entries == b.entries:
        return 0
    return -1 if a.entries < b.entries else 1


@dataclass(frozen=True)
class ColoringState:
    """A point of a coloring sequence.

    colors[s] is the color of strand s or None; colored_at[s] the stage it
    was painted.  used_moves holds crossings consumed by a coloring move;
    fired holds (crossing, kind, stage) for specials, crossing None for the
    closed-curve degenerate.  The stage counter ticks on every seed, move
    and firing.

    type2_enabled switches the Type II firing rule off for diagnostics of
    the staged search; checks enables the internal invariant audit.
    """

    diagram: LinkDiagram
    colors: tuple[int | None, ...]
    colored_at: tuple[int | None, ...]
    seeds: tuple[tuple[int, int], ...]
    used_moves: frozenset[int]
    fired: tuple[tuple[int | None, SpecialKind, int], ...]
    events: tuple[Event, ...]
    stage: int
    type2_enabled: bool = True
    checks: bool = True

    @property
    def value(self) -> int:
        return self.events[-1].value_after if self.events else 0

    @property
    def fired_crossings(self) -> frozenset[int]:
        return frozenset(c for c, _, _ in self.fired if c is not None)

    @property
    def colored_strands(self) -> tuple[int, ...]:
        return tuple(s for s, c in enumerate(self.colors) if c is not None)


def initial_state(
    diagram: LinkDiagram, *, type2_enabled: bool = True, checks: bool = True
) -> ColoringState:
    n = diagram.n_strands
    return ColoringState(
        diagram=diagram,
        colors=(None,) * n,
        colored_at=(None,) * n,
        seeds=(),
        used_moves=frozenset(),
        fired=(),
        events=(),
        stage=0,
        type2_enabled=type2_enabled,
        checks=checks,
    )


def is_completed(state: ColoringState) -> bool:
    return all(c is not None for c in state.colors)


def detect_special(state: ColoringState, crossing: int) -> SpecialKind | None:
    """The kind a crossing would fire with right now, or None.

    A crossing can fire only once, never after a coloring move used it, and
    only with all three incident strands colored.  Kinds:

    * Degenerate: the two under-ends belong to one self-adjacent strand.
    * Type I: the under-strands carry different colors.
    * Type II: the under-strands carry the same color, the whole under
      component is colored in that color, and one of the two under-strands
      was the last strand of that component to be painted.
    """
    x = state.diagram.crossing(crossing)
    if crossing in state.fired_crossings or crossing in state.used_moves:
        return None
    c_over = state.colors[x.over_strand]
    c_in = state.colors[x.under_in]
    c_out = state.colors[x.under_out]
    if c_over is None or c_in is None or c_out is None:
        return None
    if x.is_self_adjacent:
        return SpecialKind.DEGENERATE
    if c_in != c_out:
        return SpecialKind.TYPE_I
    if not state.type2_enabled:
        return None
    comp = state.diagram.strands[x.under_in].component
    comp_strands = [s.id for s in state.diagram.strands if s.component == comp]
    comp_colors = {state.colors[s] for s in comp_strands}
    if comp_colors != {c_in}:
        return None
    last = max(comp_strands, key=lambda s: state.colored_at[s])
    if last not in (x.under_in, x.under_out):
        return None
    return SpecialKind.TYPE_II


def _fire_enabled(state: ColoringState) -> ColoringState:
    """Fire every enabled special, in crossing id order.

    Firing colors nothing, so one sweep cannot enable further firings.
    """
    for x in state.diagram.crossings:
        kind = detect_special(state, x.id)
        if kind is None:
            continue
        value = state.value - 2
        state = replace(
            state,
            fired=state.fired + ((x.id, kind, state.stage),),
            events=state.events + (special_event(x.id, kind, value),),
            stage=state.stage + 1,
        )
    return state


def add_seed(state: ColoringState, strand: int) -> ColoringState:
    """Paint an uncolored strand with a fresh color.

    Seeding a closed-curve strand immediately retires the new color again:
    the strand is a whole component with no crossings to interact through,
    recorded as a degenerate special with no crossing.
    """
    if not 0 <= strand < state.diagram.n_strands:
        raise ColoringError(f"no strand {strand}")
    if state.colors[strand] is not None:
        raise ColoringError(f"strand {strand} is already colored")
    color = len(state.seeds)
    colors = list(state.colors)
    colors[strand] = color
    colored_at = list(state.colored_at)
    colored_at[strand] = state.stage
    state = replace(
        state,
        colors=tuple(colors),
        colored_at=tuple(colored_at),
        seeds=state.seeds + ((strand, color),),
        events=state.events + (seed_event(strand, state.value + 2),),
        stage=state.stage + 1,
    )
    if state.diagram.strands[strand].is_closed_curve:
        state = replace(
            state,
            fired=state.fired + ((None, SpecialKind.DEGENERATE, state.stage),),
            events=state.events
            + (special_event(None, SpecialKind.DEGENERATE, state.value - 2),),
            stage=state.stage + 1,
        )
    state = _fire_enabled(state)
    if state.checks:
        _assert_invariants(state)
    return state


def coloring_move(state: ColoringState, crossing: int) -> ColoringState:
    """Push a color across a crossing, from one under-strand to the other."""
    x = state.diagram.crossing(crossing)
    if state.colors[x.over_strand] is None:
        raise ColoringError(f"crossing {crossing}: over-strand is uncolored")
    c_in = state.colors[x.under_in]
    c_out = state.colors[x.under_out]
    if c_in is not None and c_out is not None:
        raise ColoringError(f"crossing {crossing}: both under-strands colored")
    if c_in is None and c_out is None:
        raise ColoringError(f"crossing {crossing}: neither under-strand colored")
    source, target = (
        (x.under_in, x.under_out) if c_in is not None else (x.under_out, x.under_in)
    )
    colors = list(state.colors)
    colors[target] = colors[source]
    colored_at = list(state.colored_at)
    colored_at[target] = state.stage
    state = replace(
        state,
        colors=tuple(colors),
        colored_at=tuple(colored_at),
        used_moves=state.used_moves | {crossing},
        stage=state.stage + 1,
    )
    state = _fire_enabled(state)
    if state.checks:
        _assert_invariants(state)
    return state


def enabled_moves(state: ColoringState) -> list[int]:
    """Crossings at which a coloring move is currently legal, ascending."""
    out = []
    for x in state.diagram.crossings:
        if state.colors[x.over_strand] is None:
            continue
        c_in = state.colors[x.under_in]
        c_out = state.colors[x.under_out]
        if (c_in is None) != (c_out is None):
            out.append(x.id)
    return out


def closure(state: ColoringState, rng: Random | None = None) -> ColoringState:
    """Apply coloring moves until none remain.

    Deterministic (smallest enabled crossing first) unless an rng is given,
    which picks uniformly among enabled moves; the final colored set and the
    number of fired specials do not depend on the order.
    """
    while True:
        moves = enabled_moves(state)
        if not moves:
            return state
        pick = moves[0] if rng is None else rng.choice(moves)
        state = coloring_move(state, pick)


def evaluate_seed_order(
    diagram: LinkDiagram,
    seeds,
    *,
    type2_enabled: bool = True,
    checks: bool = True,
    rng: Random | None = None,
    skip_colored: bool = False,
) -> ColoringState:
    """Run the canonical sequence: closure after every seed, in given order.

    With skip_colored, seeds that the preceding closures already painted are
    passed over instead of raising.
    """
    state = initial_state(diagram, type2_enabled=type2_enabled, checks=checks)
    for s in seeds:
        if skip_colored and state.colors[s] is not None:
            continue
        state = add_seed(state, s)
        state = closure(state, rng)
    return state


# ---------------------------------------------------------------------------
# Width readout
# ---------------------------------------------------------------------------


def widths_of_sequence(events) -> tuple[WidthMultiset, int, int]:
    """Read (lex multiset, sum, trunk) off a completed event log.

    The multiset collects value_after of every event except the last; a
    completed sequence always ends at value 0, so this drops exactly one
    terminal zero.  Raises if the log is not a completed sequence (balanced
    seeds and specials, steps of +-2, final value 0).
    """
    events = tuple(events)
    if not events:
        return WidthMultiset(()), 0, 0
    previous = 0
    n_seeds = n_fired = 0
    for e in events:
        step = 2 if e.kind == "S" else -2
        if e.kind == "S":
            n_seeds += 1
        else:
            n_fired += 1
        if e.value_after != previous + step:
            raise ColoringError(
                f"inconsistent event values: {previous} then {e.value_after}"
            )
        if e.value_after < 0:
            raise ColoringError("event value below zero")
        previous = e.value_after
    if previous != 0 or n_seeds != n_fired:
        raise ColoringError("sequence not completed: final value nonzero")
    multiset = WidthMultiset.of_values(e.value_after for e in events[:-1])
    return multiset, multiset.total, multiset.top


def count_chains(events) -> int:
    """Number of maximal runs of consecutive seed events."""
    chains = 0
    previous = None
    for e in events:
        if e.kind == "S" and previous != "S":
            chains += 1
        previous = e.kind
    return chains


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """A replayable record of a canonical coloring sequence."""

    events: tuple[Event, ...]
    name: str | None = None
    gauss: str | None = None


def serialize_certificate(
    events, *, name: str | None = None, gauss: str | None = None
) -> str:
    """Render an event log as certificate text.

    Lines are ``S <strand> <value>`` and ``X <crossing> <kind> <value>``
    with ``-`` for the crossing of a closed-curve firing.  Optional header
    comments carry the link name and the Gauss code for self-contained
    verification.
    """
    lines = []
    if name is not None:
        lines.append(f"# link: {name}")
    if gauss is not None:
        lines.append(f"# gauss: {gauss}")
    for e in events:
        if e.kind == "S":
            lines.append(f"S {e.target} {e.value_after}")
        else:
            target = "-" if e.target is None else str(e.target)
            lines.append(f"X {target} {e.special.value} {e.value_after}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    name = gauss = None
    events = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("link:"):
                name = body[len("link:") :].strip()
            elif body.startswith("gauss:"):
                gauss = body[len("gauss:") :].strip()
            continue
        parts = line.split()
        try:
            if parts[0] == "S" and len(parts) == 3:
                events.append(seed_event(int(parts[1]), int(parts[2])))
                continue
            if parts[0] == "X" and len(parts) == 4:
                target = None if parts[1] == "-" else int(parts[1])
                events.append(
                    special_event(target, SpecialKind(parts[2]), int(parts[3]))
                )
                continue
        except (ValueError, KeyError):
            pass
        raise ColoringError(f"bad certificate line {lineno}: {raw!r}")
    return Certificate(tuple(events), name=name, gauss=gauss)


def verify_certificate(
    cert: Certificate | str, diagram: LinkDiagram | None = None
) -> ColoringState:
    """Replay a certificate and check it reproduces its event log exactly.

    The seeds are taken from the certificate and run canonically (closure
    between seeds, specials eager); the resulting log must match event for
    event and the coloring must complete.  Returns the final state.
    """
    if isinstance(cert, str):
        cert = parse_certificate(cert)
    if diagram is None:
        if cert.gauss is None:
            raise ColoringError("certificate has no Gauss code and none was given")
        diagram = build_diagram(parse_gauss(cert.gauss))
    seeds = [e.target for e in cert.events if e.kind == "S"]
    if any(s is None for s in seeds):
        raise ColoringError("certificate seed without a strand")
    state = evaluate_seed_order(diagram, seeds, checks=True)
    if not is_completed(state):
        raise ColoringError("certificate replay does not color the whole diagram")
    if state.events != cert.events:
        raise ColoringError(
            "certificate replay diverges: "
            f"expected {cert.events}, replayed {state.events}"
        )
    return state


# ---------------------------------------------------------------------------
# Invariant audit
# ---------------------------------------------------------------------------


def _assert_invariants(state: ColoringState) -> None:
    d = state.diagram
    by_color: dict[int, list[int]] = {}
    for s, c in enumerate(state.colors):
        if c is not None:
            by_color.setdefault(c, []).append(s)

    for c, members in by_color.items():
        comps = {d.strands[s].component for s in members}
        if len(comps) != 1:
            raise AssertionError(f"color {c} spans components {comps}")
        member_set = set(members)
        reached = {members[0]}
        frontier = [members[0]]
        while frontier:
            s = frontier.pop()
            for t in d.adjacency[s]:
                if t in member_set and t not in reached:
                    reached.add(t)
                    frontier.append(t)
        if reached != member_set:
            raise AssertionError(f"color {c} is not connected: {sorted(member_set)}")

    fired_ids = [c for c, _, _ in state.fired if c is not None]
    if len(fired_ids) != len(set(fired_ids)):
        raise AssertionError("a crossing fired twice")
    if set(fired_ids) & state.used_moves:
        raise AssertionError("a moved crossing fired")

    expected = 2 * (len(state.seeds) - len(state.fired))
    if state.value != expected or state.value < 0:
        raise AssertionError(
            f"value {state.value} out of step with seeds/specials ({expected})"
        )
    previous = 0
    for e in state.events:
        step = 2 if e.kind == "S" else -2
        if e.value_after != previous + step or e.value_after < 0:
            raise AssertionError("event values out of step")
        previous = e.value_after


# ---------------------------------------------------------------------------
# Bit-mask kernels
# ---------------------------------------------------------------------------


class MaskTables:
    """Bit-mask view of a diagram for search inner loops.

    A strand set is an int with bit i set for strand i.  closure() saturates
    a set under coloring moves; value() evaluates the running value of any
    closure-complete set directly:

        value = 2 * (open pieces + pending crossings)

    where a piece is a connected group of colored strands under under-arc
    adjacency, open means the piece is not a whole component, and pending
    means both under-strands colored but the over-strand not.  This agrees
    with the event accounting of the rich states on every closure-complete
    set and does not depend on how the set was reached.
    """

    def __init__(self, diagram: LinkDiagram):
        self.diagram = diagram
        self.n = diagram.n_strands
        self.full = (1 << self.n) - 1
        self.crossing_bits = tuple(
            (1 << x.over_strand, 1 << x.under_in, 1 << x.under_out)
            for x in diagram.crossings
        )
        self.crossing_ids = tuple(
            (x.over_strand, x.under_in, x.under_out) for x in diagram.crossings
        )
        self.component_masks = []
        for ci in range(diagram.n_components):
            m = 0
            for s in diagram.strands:
                if s.component == ci:
                    m |= 1 << s.id
            self.component_masks.append(m)
        self.strand_component = tuple(s.component for s in diagram.strands)
        self._closure_cache: dict[int, int] = {}
        self._value_cache: dict[int, int] = {}

    def closure(self, mask: int) -> int:
        cached = self._closure_cache.get(mask)
        if cached is not None:
            return cached
        out = mask
        changed = True
        while changed:
            changed = False
            for over, uin, uout in self.crossing_bits:
                if out & over and bool(out & uin) != bool(out & uout):
                    out |= uin | uout
                    changed = True
        self._closure_cache[mask] = out
        return out

    def value(self, mask: int) -> int:
        cached = self._value_cache.get(mask)
        if cached is not None:
            return cached

        parent: dict[int, int] = {
            s: s for s in range(self.n) if mask >> s & 1
        }

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        pending = 0
        for (_, uin, uout), (over_b, uin_b, uout_b) in zip(
            self.crossing_ids, self.crossing_bits
        ):
            if mask & uin_b and mask & uout_b:
                if not mask & over_b:
                    pending += 1
                ra, rb = find(uin), find(uout)
                if ra != rb:
                    parent[ra] = rb

        piece_mask: dict[int, int] = {}
        for s in parent:
            piece_mask[find(s)] = piece_mask.get(find(s), 0) | (1 << s)
        open_pieces = sum(
            1
            for root, pm in piece_mask.items()
            if pm != self.component_masks[self.strand_component[root]]
        )
        v = 2 * (open_pieces + pending)
        self._value_cache[mask] = v
        return v

    def burst(self, mask: int, seed: int) -> tuple[tuple[int, ...], int]:
        """Event values of seeding one strand into a closed set and closing.

        Returns the descending run of values (seed, then one entry per
        special fired during the closure) and the resulting closed set.
        """
        v0 = self.value(mask)
        nxt = self.closure(mask | (1 << seed))
        v1 = self.value(nxt)
        return tuple(range(v0 + 2, v1 - 2, -2)), nxt
