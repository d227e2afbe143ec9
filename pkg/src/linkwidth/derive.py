"""Readings derived from width certificates.

Thick and thin levels of an event log, tube embeddability of a trunk value,
width bounds for the double branched cover, exactness classification of a
trunk value from table metadata, and the reduction rule for cut or split
presentations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import WidthMultiset, count_chains
from .diagram import CutSplitKind, LinkDiagram, detect_cut_split, remove_component
from .search import Objective, Status, WidthResult, exact_widths


class DeriveError(ValueError):
    """Derivation applied to unusable input."""


@dataclass(frozen=True)
class LinkMetadata:
    """Externally supplied facts about the link a diagram presents.

    is_prime and bridge_lower are trusted as given; provenance records where
    they came from.  Absent fields block the classification rules that need
    them, never the width computation itself.
    """

    name: str
    is_prime: bool | None = None
    bridge_lower: int | None = None
    provenance: str | None = None


@dataclass(frozen=True)
class TrunkStatus:
    exact: bool
    value: int
    rule: str

    def __str__(self) -> str:
        return f"{'exact' if self.exact else 'upper'}({self.value})[{self.rule}]"


@dataclass(frozen=True)
class DerivedReport:
    thick: WidthMultiset
    thin: WidthMultiset
    height: int
    tube_3x1: bool
    dbc_bound: tuple[int, ...]
    dbc_genera: tuple[int, ...]
    trunk_status: TrunkStatus


def thick_thin(events) -> tuple[WidthMultiset, WidthMultiset]:
    """Local maxima and minima of the value along an event log.

    Thick levels are values after a seed immediately followed by a special;
    thin levels are values after a special immediately followed by a seed.
    """
    thick = []
    thin = []
    events = tuple(events)
    for e, nxt in zip(events, events[1:]):
        if e.kind == "S" and nxt.kind == "X":
            thick.append(e.value_after)
        elif e.kind == "X" and nxt.kind == "S":
            thin.append(e.value_after)
    return WidthMultiset.of_values(thick), WidthMultiset.of_values(thin)


def tube_fits(trunk: int, m: int, n: int) -> bool:
    """Whether trunk admits embedding in an m x n tube: trunk < (m+1)(n+1)."""
    if trunk < 0 or m < 1 or n < 1:
        raise DeriveError(f"bad tube query trunk={trunk}, m={m}, n={n}")
    return trunk < (m + 1) * (n + 1)


def dbc_bound(thick: WidthMultiset) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Width bound and surface genera for the double branched cover.

    Each thick level a contributes a bound entry a - 3 (an entry of 2
    contributes 0) and a genus entry a/2 - 1.
    """
    if any(a < 2 for a in thick.entries):
        raise DeriveError(f"thick levels must be at least 2: {thick}")
    bound = tuple(a - 3 if a >= 4 else 0 for a in thick.entries)
    genera = tuple(a // 2 - 1 for a in thick.entries)
    return bound, genera


def classify_trunk(
    result: WidthResult, meta: LinkMetadata, cut_split: bool = False
) -> TrunkStatus:
    """Decide whether a computed trunk value is exact for the link.

    Exactness rules, requiring trusted metadata:

    * bridge_lower = 2 and wirtinger bound 2, diagram not cut or split:
      trunk is exactly 4.
    * prime with bridge_lower = 3 and wirtinger bound 3: exactly 6.
    * prime with bridge_lower = 4, wirtinger bound 4 and a certificate of
      trunk 6: exactly 6.

    Anything else reports the certificate value as an upper bound.  A
    certificate value strictly below an applicable rule's value means the
    metadata contradicts the computation and raises.
    """
    wirt = result.wirtinger_upper
    if not cut_split and meta.bridge_lower == 2 and wirt == 2:
        if result.trunk != 4:
            raise DeriveError(
                f"{meta.name}: two-bridge metadata but certified trunk {result.trunk}"
            )
        return TrunkStatus(True, 4, "two-bridge")
    if meta.is_prime and meta.bridge_lower == 3 and wirt == 3:
        if result.trunk != 6:
            raise DeriveError(
                f"{meta.name}: prime three-bridge metadata but certified trunk "
                f"{result.trunk}"
            )
        return TrunkStatus(True, 6, "prime-three-bridge")
    if meta.is_prime and meta.bridge_lower == 4 and wirt == 4 and result.trunk == 6:
        return TrunkStatus(True, 6, "four-bridge-trunk6")
    return TrunkStatus(False, result.trunk, "certificate")


def cut_split_reduce(diagram: LinkDiagram, engine=None) -> WidthResult:
    """Width of a cut or split presentation by component removal.

    Removes one witnessed component at a time: a closed-curve component
    contributes the pair {2, 0} to the width multiset, a self-adjacent one
    the pair {4, 2}; the remainder is computed by the engine (exact search
    by default).  The insertion level of the contributed pairs is a
    convention (the note flags it), so no replayable certificate is
    produced; running the coloring on the unreduced diagram is preferred
    when a certificate is wanted.
    """
    if engine is None:
        engine = exact_widths

    note = "cut-split reduction: contributed pair levels are a convention"
    if diagram.n_strands == 0:
        return WidthResult(
            status=Status.EXACT,
            lex=WidthMultiset(()),
            sum_width=0,
            trunk=0,
            certificate=(),
            certificates={},
            wirtinger_upper=0,
            note=note,
        )
    witnesses = detect_cut_split(diagram)
    if not witnesses:
        return engine(diagram)
    w = witnesses[0]
    sub = cut_split_reduce(remove_component(diagram, w.component), engine)
    pair = (2, 0) if w.kind is CutSplitKind.CLOSED_CURVE_STRAND else (4, 2)

    # combine on full value sequences (with the terminal zero restored), then
    # drop one terminal zero again if present
    if sub.lex.entries:
        total = sub.lex.entries + (0,) + pair
    else:
        total = pair
    entries = sorted(total, reverse=True)
    if 0 in entries:
        entries.remove(0)
    lex = WidthMultiset(tuple(entries))
    return WidthResult(
        status=sub.status,
        lex=lex,
        sum_width=lex.total,
        trunk=lex.top,
        certificate=(),
        certificates={},
        wirtinger_upper=None,
        note=note,
    )


def derive_report(
    events, trunk_value: int, trunk_status: TrunkStatus
) -> DerivedReport:
    """Assemble the derived readings for one certificate."""
    thick, thin = thick_thin(events)
    bound, genera = dbc_bound(thick)
    return DerivedReport(
        thick=thick,
        thin=thin,
        height=count_chains(events),
        tube_3x1=tube_fits(trunk_value, 3, 1),
        dbc_bound=bound,
        dbc_genera=genera,
        trunk_status=trunk_status,
    )
