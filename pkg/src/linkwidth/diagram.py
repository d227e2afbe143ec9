"""Incidence model of a link diagram: strands, crossings, adjacency.

A strand is a maximal arc of a component between two consecutive
under-passes.  A component with no under-passes at all contributes a single
closed-curve strand.  Crossings record which strand passes over and which
two strands (possibly the same one) meet under.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .codec import GaussCode, Passage, Visit


class DiagramError(ValueError):
    """Structurally invalid diagram operation."""


@dataclass(frozen=True)
class Strand:
    """A maximal overpass arc.

    tail_crossing/head_crossing are the crossings at which the strand starts
    and ends by going under; both are None exactly for closed-curve strands.
    over_crossings lists the crossings the strand passes over, in order of
    traversal.
    """

    id: int
    component: int
    over_crossings: tuple[int, ...]
    tail_crossing: int | None
    head_crossing: int | None
    is_closed_curve: bool


@dataclass(frozen=True)
class Crossing:
    id: int
    over_strand: int
    under_in: int
    under_out: int
    component_over: int
    component_under: int

    @property
    def is_self_adjacent(self) -> bool:
        """True when one strand leaves and re-enters under itself."""
        return self.under_in == self.under_out


class CutSplitKind(Enum):
    SELF_ADJACENT_STRAND = "self-adjacent-strand"
    CLOSED_CURVE_STRAND = "closed-curve-strand"


@dataclass(frozen=True)
class CutSplitWitness:
    """Evidence that a diagram is a cut or split presentation.

    A closed-curve strand is a component with no under-passes (split or
    completely overlying).  A self-adjacent strand is a component whose only
    under-passes happen at a single crossing.
    """

    kind: CutSplitKind
    strand: int
    crossing: int | None
    component: int


@dataclass(frozen=True)
class LinkDiagram:
    """A link diagram with strand and crossing incidence resolved.

    Strand ids are assigned in traversal order, components first.  adjacency
    holds, per strand, the pair (strand met at the tail crossing, strand met
    at the head crossing), or an empty tuple for closed-curve strands.
    """

    code: GaussCode
    strands: tuple[Strand, ...]
    crossings: tuple[Crossing, ...]
    adjacency: tuple[tuple[int, ...], ...]
    n_components: int

    def crossing(self, crossing_id: int) -> Crossing:
        x = self.crossings[crossing_id - 1]
        assert x.id == crossing_id
        return x

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_strands(self) -> int:
        return len(self.strands)

    def component_strands(self, component: int) -> tuple[Strand, ...]:
        return tuple(s for s in self.strands if s.component == component)


def build_diagram(code: GaussCode) -> LinkDiagram:
    """Resolve a Gauss code into strands and crossings.

    Within a component, strands are numbered from the under-pass that ends
    the strand containing the component's first listed visit, continuing in
    traversal order.
    """
    strands: list[Strand] = []
    under_ends: dict[int, tuple[int, int, int]] = {}  # label -> (in, out, component)

    for ci, comp in enumerate(code.components):
        under_positions = [p for p, v in enumerate(comp) if v.passage is Passage.UNDER]
        if not under_positions:
            strands.append(
                Strand(
                    id=len(strands),
                    component=ci,
                    over_crossings=tuple(v.label for v in comp),
                    tail_crossing=None,
                    head_crossing=None,
                    is_closed_curve=True,
                )
            )
            continue
        base = len(strands)
        k = len(under_positions)
        for j, upos in enumerate(under_positions):
            prev_upos = under_positions[j - 1]
            overs = []
            p = (prev_upos + 1) % len(comp)
            while p != upos:
                overs.append(comp[p].label)
                p = (p + 1) % len(comp)
            strands.append(
                Strand(
                    id=base + j,
                    component=ci,
                    over_crossings=tuple(overs),
                    tail_crossing=comp[prev_upos].label,
                    head_crossing=comp[upos].label,
                    is_closed_curve=False,
                )
            )
        for j, upos in enumerate(under_positions):
            label = comp[upos].label
            under_ends[label] = (base + j, base + (j + 1) % k, ci)

    over_strand_of: dict[int, int] = {}
    for s in strands:
        for label in s.over_crossings:
            over_strand_of[label] = s.id

    crossings = []
    for label in range(1, code.n_crossings + 1):
        under_in, under_out, comp_under = under_ends[label]
        over = over_strand_of[label]
        crossings.append(
            Crossing(
                id=label,
                over_strand=over,
                under_in=under_in,
                under_out=under_out,
                component_over=strands[over].component,
                component_under=comp_under,
            )
        )

    adjacency = []
    for s in strands:
        if s.is_closed_curve:
            adjacency.append(())
        else:
            tail_partner = under_ends[s.tail_crossing][0]
            head_partner = under_ends[s.head_crossing][1]
            adjacency.append((tail_partner, head_partner))

    return LinkDiagram(
        code=code,
        strands=tuple(strands),
        crossings=tuple(crossings),
        adjacency=tuple(adjacency),
        n_components=code.n_components,
    )


def is_split_shadow(diagram: LinkDiagram) -> bool:
    """True when the components fall apart without using any crossing.

    Builds the graph on components with an edge per crossing joining two of
    them; a disconnected graph means the diagram draws a split presentation
    even if no closed-curve strand witnesses it.
    """
    n = diagram.n_components
    if n <= 1:
        return False
    neighbors: dict[int, set[int]] = {c: set() for c in range(n)}
    for x in diagram.crossings:
        neighbors[x.component_over].add(x.component_under)
        neighbors[x.component_under].add(x.component_over)
    seen = {0}
    frontier = [0]
    while frontier:
        c = frontier.pop()
        for d in neighbors[c]:
            if d not in seen:
                seen.add(d)
                frontier.append(d)
    return len(seen) != n


def detect_cut_split(diagram: LinkDiagram) -> list[CutSplitWitness]:
    """List the closed-curve and self-adjacent strands, in strand id order."""
    witnesses = []
    for s in diagram.strands:
        if s.is_closed_curve:
            witnesses.append(
                CutSplitWitness(
                    CutSplitKind.CLOSED_CURVE_STRAND, s.id, None, s.component
                )
            )
        elif s.head_crossing is not None:
            x = diagram.crossing(s.head_crossing)
            if x.is_self_adjacent and x.under_in == s.id:
                witnesses.append(
                    CutSplitWitness(
                        CutSplitKind.SELF_ADJACENT_STRAND, s.id, x.id, s.component
                    )
                )
    return witnesses


def remove_component(diagram: LinkDiagram, component: int) -> LinkDiagram:
    """Delete one component, fusing strands at the crossings it carried.

    Every crossing the component participates in disappears; the other
    participant's two under-arcs fuse by dropping the corresponding visit.
    Remaining components keep their order (possibly becoming zero-crossing
    components) and crossings are relabeled 1..n' by increasing old label.
    Removing the last component yields the empty diagram.
    """
    if not 0 <= component < diagram.n_components:
        raise DiagramError(f"no component {component} in diagram")
    doomed = {v.label for v in diagram.code.components[component]}

    kept: list[tuple[Visit, ...]] = []
    for ci, comp in enumerate(diagram.code.components):
        if ci == component:
            continue
        kept.append(tuple(v for v in comp if v.label not in doomed))

    surviving = sorted(
        {v.label for comp in kept for v in comp}
    )
    relabel = {old: new for new, old in enumerate(surviving, start=1)}
    rebuilt = tuple(
        tuple(Visit(relabel[v.label], v.passage, v.sign) for v in comp)
        for comp in kept
    )
    return build_diagram(GaussCode(rebuilt))
