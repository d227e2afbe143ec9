"""Text codecs for link diagrams: Gauss codes and DT codes.

The Gauss code is the working representation: one cyclic visit sequence per
component, where a visit records the crossing label and whether the component
passes over or under.  DT codes (the usual tabulation format) are accepted on
input and can be produced for round trips.

Neither parser checks planar realizability; codes are trusted combinatorial
input.  Crossing handedness signs are parsed and carried through but never
interpreted.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum


class CodecError(ValueError):
    """Malformed or inconsistent link code."""


class Passage(Enum):
    """Whether a component passes over or under at a visit."""

    OVER = "O"
    UNDER = "U"

    def flipped(self) -> "Passage":
        return Passage.UNDER if self is Passage.OVER else Passage.OVER


@dataclass(frozen=True)
class Visit:
    """One pass of a component through a crossing.

    The optional sign records crossing handedness when the source notation
    supplies it.  It is preserved verbatim and plays no role in any width
    computation.
    """

    label: int
    passage: Passage
    sign: int | None = None

    def __post_init__(self) -> None:
        if self.label < 1:
            raise CodecError(f"crossing label must be positive, got {self.label}")
        if self.sign not in (None, 1, -1):
            raise CodecError(f"visit sign must be +1, -1 or absent, got {self.sign}")


@dataclass(frozen=True)
class GaussCode:
    """Cyclic visit sequences, one tuple per component.

    Invariants, checked on construction: every crossing label occurs exactly
    twice, once over and once under (possibly on different components), and
    the labels used are exactly 1..n.  Components with no visits are allowed;
    they stand for zero-crossing unknot components.
    """

    components: tuple[tuple[Visit, ...], ...]

    def __post_init__(self) -> None:
        seen: dict[int, set[Passage]] = {}
        for comp in self.components:
            for v in comp:
                passages = seen.setdefault(v.label, set())
                if v.passage in passages:
                    raise CodecError(
                        f"crossing {v.label} visited {v.passage.value} twice"
                    )
                passages.add(v.passage)
        for label, passages in seen.items():
            if len(passages) != 2:
                raise CodecError(f"crossing {label} lacks an over or under visit")
        if seen and sorted(seen) != list(range(1, len(seen) + 1)):
            raise CodecError(
                f"crossing labels must be 1..{len(seen)}, got {sorted(seen)}"
            )

    @property
    def n_crossings(self) -> int:
        return sum(len(c) for c in self.components) // 2

    @property
    def n_components(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class DtCode:
    """A Dowker-Thistlethwaite code.

    ``even_labels`` lists, for odd visit numbers 1, 3, 5, ... in order, the
    even visit number met at the same crossing; the sign says which of the
    two passes over (positive: the odd visit passes over).
    ``component_lengths`` gives the number of crossings each component
    contributes visits to, counted with multiplicity along that component
    divided by two.
    """

    component_lengths: tuple[int, ...]
    even_labels: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.even_labels)
        if any(length < 1 for length in self.component_lengths):
            raise CodecError("DT component lengths must be positive")
        if sum(self.component_lengths) != n:
            raise CodecError(
                f"DT component lengths sum to {sum(self.component_lengths)}, "
                f"expected {n}"
            )
        magnitudes = sorted(abs(e) for e in self.even_labels)
        if magnitudes != list(range(2, 2 * n + 1, 2)):
            raise CodecError(
                f"DT labels must be the even numbers 2..{2 * n} up to sign, "
                f"got {list(self.even_labels)}"
            )

    @property
    def n_crossings(self) -> int:
        return len(self.even_labels)

    @property
    def n_components(self) -> int:
        return len(self.component_lengths)


# ---------------------------------------------------------------------------
# Gauss code text form
# ---------------------------------------------------------------------------

_VISIT_RE = re.compile(r"([OUou])\s*(\d+)\s*([+-]?)$")


def parse_gauss(text: str) -> GaussCode:
    """Parse a Gauss code string.

    Components are separated by ';', visits by ','.  A visit is O or U, a
    crossing label, and an optional trailing + or - handedness mark.  An
    empty component stands for a zero-crossing unknot.

    Raises:
        CodecError: on syntax errors (reported with character offset) or on
            violation of the two-visits-per-crossing invariant.
    """
    components: list[tuple[Visit, ...]] = []
    offset = 0
    for comp_text in text.split(";"):
        visits: list[Visit] = []
        if comp_text.strip():
            inner = 0
            for token in comp_text.split(","):
                m = _VISIT_RE.match(token.strip())
                if m is None:
                    raise CodecError(
                        f"bad Gauss visit {token.strip()!r} at offset {offset + inner}"
                    )
                passage = Passage(m.group(1).upper())
                sign = {"": None, "+": 1, "-": -1}[m.group(3)]
                visits.append(Visit(int(m.group(2)), passage, sign))
                inner += len(token) + 1
        components.append(tuple(visits))
        offset += len(comp_text) + 1
    return GaussCode(tuple(components))


def serialize_gauss(code: GaussCode) -> str:
    """Inverse of parse_gauss, omitting absent handedness marks."""
    parts = []
    for comp in code.components:
        parts.append(
            ",".join(
                f"{v.passage.value}{v.label}{'' if v.sign is None else '+' if v.sign > 0 else '-'}"
                for v in comp
            )
        )
    return ";".join(parts)


# ---------------------------------------------------------------------------
# DT code text form
# ---------------------------------------------------------------------------


def parse_dt(text: str) -> DtCode:
    """Parse a DT code string.

    Grammar: optional ``lengths:<c1>,<c2>,...`` prefix naming per-component
    crossing counts, then the signed even labels separated by spaces or
    commas.  Without the prefix the code is taken to be a single component.

    Example: ``lengths:1,1 4 -6`` is a two-component code on two crossings.
    """
    s = text.strip()
    lengths: tuple[int, ...] | None = None
    if s.startswith("lengths:"):
        rest = s[len("lengths:") :].lstrip()
        head, _, s = rest.partition(" ")
        if not head:
            raise CodecError("empty DT lengths prefix")
        try:
            lengths = tuple(int(t) for t in head.split(","))
        except ValueError as exc:
            raise CodecError(f"bad DT lengths prefix {head!r}") from exc
    tokens = [t for t in re.split(r"[,\s]+", s.strip()) if t]
    if not tokens:
        raise CodecError("empty DT code")
    labels = []
    for t in tokens:
        try:
            labels.append(int(t))
        except ValueError as exc:
            raise CodecError(f"bad DT label {t!r}") from exc
    if lengths is None:
        lengths = (len(labels),)
    return DtCode(lengths, tuple(labels))


def serialize_dt(code: DtCode) -> str:
    """Inverse of parse_dt.  Single-component codes omit the lengths prefix."""
    body = " ".join(str(e) for e in code.even_labels)
    if code.n_components == 1:
        return body
    return "lengths:" + ",".join(str(c) for c in code.component_lengths) + " " + body


# ---------------------------------------------------------------------------
# Conversions
# ---------------------------------------------------------------------------


def dt_to_gauss(code: DtCode) -> GaussCode:
    """Expand a DT code into a Gauss code.

    Visit numbers 1..2n walk the components in listed order.  Odd visit
    number 2i-1 meets crossing i together with even visit |even_labels[i-1]|;
    a positive even label means the odd visit is the over-pass.  Crossings
    are renumbered 1..n in order of first appearance along the walk.
    """
    n = code.n_crossings
    visit_meaning: dict[int, tuple[int, Passage]] = {}
    for i, even in enumerate(code.even_labels):
        odd = 2 * i + 1
        odd_passage = Passage.OVER if even > 0 else Passage.UNDER
        visit_meaning[odd] = (i, odd_passage)
        visit_meaning[abs(even)] = (i, odd_passage.flipped())

    relabel: dict[int, int] = {}
    components: list[tuple[Visit, ...]] = []
    start = 1
    for length in code.component_lengths:
        visits = []
        for visit_no in range(start, start + 2 * length):
            crossing, passage = visit_meaning[visit_no]
            if crossing not in relabel:
                relabel[crossing] = len(relabel) + 1
            visits.append(Visit(relabel[crossing], passage))
        components.append(tuple(visits))
        start += 2 * length
    return GaussCode(tuple(components))


def gauss_to_dt(code: GaussCode) -> DtCode:
    """Convert a Gauss code to a DT code.

    Each component may be rotated so that, in the resulting global visit
    numbering, every crossing is met once at an odd number and once at an
    even number.  Rotating a component by one step flips the parity of all
    its visits, so the choice reduces to one bit per component; crossings
    shared by two components tie those bits together.  The bits are solved
    by propagation over the component graph, rooting each connected part at
    its smallest component with rotation 0.

    Raises:
        CodecError: if some component has no crossings or an odd number of
            visits, or if the parity constraints are unsatisfiable; such
            codes have no DT form.
    """
    comps = code.components
    if any(len(c) == 0 for c in comps):
        raise CodecError("zero-crossing components have no DT form")
    if any(len(c) % 2 for c in comps):
        raise CodecError("component with an odd number of visits has no DT form")

    # occurrences[label] = [(component, position), (component, position)]
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for ci, comp in enumerate(comps):
        for pos, v in enumerate(comp):
            occurrences.setdefault(v.label, []).append((ci, pos))

    # constraint graph: rotation[i] xor rotation[j] = parity needed so the
    # two visits of each shared crossing land on opposite parities
    edges: dict[int, dict[int, int]] = {i: {} for i in range(len(comps))}
    for label, ((ci, p), (cj, q)) in occurrences.items():
        if ci == cj:
            if (p + q) % 2 == 0:
                raise CodecError(
                    f"crossing {label} repeats at equal parity; no DT form exists"
                )
            continue
        need = (p + q + 1) % 2
        prev = edges[ci].get(cj)
        if prev is not None and prev != need:
            raise CodecError(
                f"parity conflict at crossing {label}; no DT form exists"
            )
        edges[ci][cj] = need
        edges[cj][ci] = need

    rotation = [-1] * len(comps)
    for root in range(len(comps)):
        if rotation[root] >= 0:
            continue
        rotation[root] = 0
        queue = [root]
        while queue:
            i = queue.pop()
            for j, need in edges[i].items():
                want = rotation[i] ^ need
                if rotation[j] < 0:
                    rotation[j] = want
                    queue.append(j)
                elif rotation[j] != want:
                    raise CodecError("parity conflict; no DT form exists")

    # global visit numbers after rotating each component
    number_of: dict[tuple[int, int], int] = {}
    nxt = 1
    for ci, comp in enumerate(comps):
        m = len(comp)
        for k in range(m):
            number_of[(ci, (rotation[ci] + k) % m)] = nxt
            nxt += 1

    partner: dict[int, tuple[int, Passage]] = {}
    for label, ((ci, p), (cj, q)) in occurrences.items():
        a, b = number_of[(ci, p)], number_of[(cj, q)]
        pa = comps[ci][p].passage
        if a % 2 == 0:
            a, b, pa = b, a, comps[cj][q].passage
        if a % 2 == 0 or b % 2 == 1:
            raise CodecError(
                f"crossing {label} repeats at equal parity; no DT form exists"
            )
        partner[a] = (b, pa)

    evens = []
    for odd in range(1, 2 * code.n_crossings, 2):
        even, odd_passage = partner[odd]
        evens.append(even if odd_passage is Passage.OVER else -even)
    return DtCode(tuple(len(c) // 2 for c in comps), tuple(evens))


def rotate_component(code: GaussCode, component: int, steps: int) -> GaussCode:
    """Return the code with one component's starting point moved."""
    comps = list(code.components)
    comp = comps[component]
    if comp:
        k = steps % len(comp)
        comps[component] = comp[k:] + comp[:k]
    return GaussCode(tuple(comps))


def canonical_dt(code: DtCode) -> DtCode:
    """A rotation-invariant normal form of a DT code.

    Minimizes (component_lengths, even_labels) over all choices of starting
    point on every component, keeping component order fixed.  Two DT codes
    describe the same pointed diagram presentation up to starting points
    exactly when their normal forms are equal.
    """
    gauss = dt_to_gauss(code)
    best: DtCode | None = None
    for offsets in itertools.product(*(range(len(c)) for c in gauss.components)):
        rotated = gauss
        for ci, off in enumerate(offsets):
            rotated = rotate_component(rotated, ci, off)
        candidate = gauss_to_dt(rotated)
        key = (candidate.component_lengths, candidate.even_labels)
        if best is None or key < (best.component_lengths, best.even_labels):
            best = candidate
    assert best is not None
    return best


def dt_equivalent(a: DtCode, b: DtCode) -> bool:
    """Whether two DT codes agree up to starting points and relabeling."""
    ca, cb = canonical_dt(a), canonical_dt(b)
    return ca.component_lengths == cb.component_lengths and ca.even_labels == cb.even_labels
