"""Development-time vetting of candidate link shadows.

Not installed with the package.  A "shadow" here is a list of cyclic visit
sequences, one per component, each entry a crossing label (1..n, every label
appearing exactly twice overall) with no over/under information yet.  This
module decides planar realizability, finds alternating over/under
assignments, and computes embedding fingerprints (normalized Kauffman
bracket, linking numbers) used to separate link types.

The conventions here fix an arbitrary global handedness; everything is
compared up to mirror image.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass

sys.path.insert(0, "src")

from linkwidth.codec import GaussCode, Passage, Visit  # noqa: E402

Shadow = list[list[int]]


def shadow_crossings(shadow: Shadow) -> int:
    labels = [x for comp in shadow for x in comp]
    return len(labels) // 2


def occurrences(shadow: Shadow) -> dict[int, list[tuple[int, int]]]:
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, comp in enumerate(shadow):
        for p, label in enumerate(comp):
            occ.setdefault(label, []).append((ci, p))
    for label, places in occ.items():
        if len(places) != 2:
            raise ValueError(f"label {label} occurs {len(places)} times")
    return occ


def is_connected(shadow: Shadow) -> bool:
    occ = occurrences(shadow)
    n_comps = len(shadow)
    if n_comps <= 1:
        return True
    adj: dict[int, set[int]] = {i: set() for i in range(n_comps)}
    for (ci, _), (cj, _) in occ.values():
        adj[ci].add(cj)
        adj[cj].add(ci)
    seen = {0}
    todo = [0]
    while todo:
        i = todo.pop()
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                todo.append(j)
    return len(seen) == n_comps


def has_kink(shadow: Shadow) -> bool:
    """A crossing whose two visits are cyclically adjacent on one component."""
    for comp in shadow:
        m = len(comp)
        for p in range(m):
            if m > 1 and comp[p] == comp[(p + 1) % m]:
                return True
    return False


def _multigraph_edges(shadow: Shadow) -> list[tuple[int, int]]:
    edges = []
    for comp in shadow:
        m = len(comp)
        for p in range(m):
            edges.append((comp[p], comp[(p + 1) % m]))
    return edges


def _connected_after(vertices: set[int], edges: list[tuple[int, int]]) -> bool:
    if not vertices:
        return True
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for a, b in edges:
        if a in adj and b in adj:
            adj[a].add(b)
            adj[b].add(a)
    start = next(iter(vertices))
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(vertices)


def has_cut_vertex(shadow: Shadow) -> bool:
    """Nugatory crossing test: some crossing separates the shadow graph."""
    n = shadow_crossings(shadow)
    if n <= 1:
        return False
    edges = _multigraph_edges(shadow)
    vertices = set(range(1, n + 1))
    for v in vertices:
        rest = vertices - {v}
        kept = [(a, b) for a, b in edges if a != v and b != v]
        if not _connected_after(rest, kept):
            return True
    return False


def _has_bridge(n: int, edges: list[tuple[int, int]], skip: int) -> bool:
    """Bridge detection on the multigraph with one edge removed."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, n + 1)}
    for idx, (a, b) in enumerate(edges):
        if idx == skip:
            continue
        adj[a].append((b, idx))
        adj[b].append((a, idx))
    order = {}
    low = {}
    counter = itertools.count()
    start = edges[skip][0]
    stack = [(start, -1, iter(adj[start]))]
    order[start] = low[start] = next(counter)
    while stack:
        v, in_edge, it = stack[-1]
        advanced = False
        for w, idx in it:
            if idx == in_edge:
                in_edge = -2  # parallel edges are not bridges; skip only once
                continue
            if w in order:
                low[v] = min(low[v], order[w])
                continue
            order[w] = low[w] = next(counter)
            stack[-1] = (v, in_edge, it)
            stack.append((w, idx, iter(adj[w])))
            advanced = True
            break
        if not advanced:
            stack.pop()
            if stack:
                parent = stack[-1][0]
                if low[v] > order[parent]:
                    return True
                low[parent] = min(low[parent], low[v])
    return len(order) < n  # disconnection counts as a cut too


def has_two_edge_cut(shadow: Shadow) -> bool:
    """Composite diagram test: two arcs whose removal separates crossings.

    The shadow graph is 4-regular, hence bridgeless, so a two-edge cut is a
    pair (e, f) where f becomes a bridge once e is removed.
    """
    n = shadow_crossings(shadow)
    if n <= 1:
        return False
    edges = _multigraph_edges(shadow)
    return any(_has_bridge(n, edges, skip) for skip in range(len(edges)))


def is_reduced_prime(shadow: Shadow) -> bool:
    return (
        is_connected(shadow)
        and not has_kink(shadow)
        and not has_cut_vertex(shadow)
        and not has_two_edge_cut(shadow)
    )


# ---------------------------------------------------------------------------
# Planar realizability via rotation systems
# ---------------------------------------------------------------------------


@dataclass
class _Darts:
    """Dart bookkeeping: arc a has darts 2a (tail end) and 2a+1 (head end)."""

    arc_id: dict[tuple[int, int], int]
    in_dart: dict[tuple[int, int], int]
    out_dart: dict[tuple[int, int], int]
    n_darts: int


def _darts(shadow: Shadow) -> _Darts:
    arc_id = {}
    for ci, comp in enumerate(shadow):
        for p in range(len(comp)):
            arc_id[(ci, p)] = len(arc_id)
    in_dart = {}
    out_dart = {}
    for ci, comp in enumerate(shadow):
        m = len(comp)
        for p in range(m):
            out_dart[(ci, p)] = 2 * arc_id[(ci, p)]
            in_dart[(ci, p)] = 2 * arc_id[(ci, (p - 1) % m)] + 1
    return _Darts(arc_id, in_dart, out_dart, 2 * len(arc_id))


def _rotations(shadow: Shadow, chirality: tuple[int, ...]):
    """Counterclockwise dart order at each crossing for a chirality vector."""
    occ = occurrences(shadow)
    darts = _darts(shadow)
    rotation = {}
    for label in sorted(occ):
        (ci, p), (cj, q) = occ[label]
        in_a, out_a = darts.in_dart[(ci, p)], darts.out_dart[(ci, p)]
        in_b, out_b = darts.in_dart[(cj, q)], darts.out_dart[(cj, q)]
        if chirality[label - 1] == 0:
            rotation[label] = (in_a, in_b, out_a, out_b)
        else:
            rotation[label] = (in_a, out_b, out_a, in_b)
    return rotation, darts


def _face_count(shadow: Shadow, chirality: tuple[int, ...]) -> int:
    rotation, darts = _rotations(shadow, chirality)
    nxt = {}
    for order in rotation.values():
        for k, d in enumerate(order):
            nxt[d] = order[(k + 1) % 4]
    faces = 0
    seen = [False] * darts.n_darts
    for d0 in range(darts.n_darts):
        if seen[d0]:
            continue
        faces += 1
        d = d0
        while not seen[d]:
            seen[d] = True
            d = nxt[d ^ 1]  # cross the arc, then turn at the vertex
    return faces


def realizations(shadow: Shadow) -> list[tuple[int, ...]]:
    """All chirality vectors embedding the shadow in the sphere."""
    if not is_connected(shadow):
        return []
    if any(len(comp) == 0 for comp in shadow):
        return []
    n = shadow_crossings(shadow)
    out = []
    for chirality in itertools.product((0, 1), repeat=n):
        if _face_count(shadow, chirality) == n + 2:
            out.append(chirality)
    return out


def first_realization(shadow: Shadow) -> tuple[int, ...] | None:
    if not is_connected(shadow) or any(len(c) == 0 for c in shadow):
        return None
    n = shadow_crossings(shadow)
    for chirality in itertools.product((0, 1), repeat=n):
        if _face_count(shadow, chirality) == n + 2:
            return chirality
    return None


# ---------------------------------------------------------------------------
# Alternating assignments
# ---------------------------------------------------------------------------


def alternating_assignment(shadow: Shadow) -> dict[tuple[int, int], Passage] | None:
    """An over/under assignment alternating along every component, or None.

    Position p of component i passes over iff (p + r_i) is even for a choice
    of bits r; each crossing's two visits must get opposite passages, which
    ties the bits together exactly as in DT parity solving.
    """
    if any(len(comp) % 2 for comp in shadow):
        return None
    occ = occurrences(shadow)
    c = len(shadow)
    edges: dict[int, dict[int, int]] = {i: {} for i in range(c)}
    for (ci, p), (cj, q) in occ.values():
        if ci == cj:
            if (p + q) % 2 == 0:
                return None
            continue
        need = (p + q + 1) % 2
        prev = edges[ci].get(cj)
        if prev is not None and prev != need:
            return None
        edges[ci][cj] = need
        edges[cj][ci] = need
    r = [-1] * c
    for root in range(c):
        if r[root] >= 0:
            continue
        r[root] = 0
        todo = [root]
        while todo:
            i = todo.pop()
            for j, need in edges[i].items():
                want = r[i] ^ need
                if r[j] < 0:
                    r[j] = want
                    todo.append(j)
                elif r[j] != want:
                    return None
    out = {}
    for ci, comp in enumerate(shadow):
        for p in range(len(comp)):
            out[(ci, p)] = Passage.OVER if (p + r[ci]) % 2 == 0 else Passage.UNDER
    return out


def to_gauss(shadow: Shadow, assignment) -> GaussCode:
    comps = []
    for ci, comp in enumerate(shadow):
        comps.append(
            tuple(Visit(label, assignment[(ci, p)]) for p, label in enumerate(comp))
        )
    return GaussCode(tuple(comps))


# ---------------------------------------------------------------------------
# Signs, linking numbers, bracket
# ---------------------------------------------------------------------------


def crossing_signs(shadow: Shadow, chirality, assignment) -> dict[int, int]:
    """Crossing signs for the oriented embedded diagram.

    With chirality 0 the frame (first-visit direction, second-visit
    direction) is positive, so the sign is +1 exactly when the first visit
    passes over; chirality 1 flips it.  Global handedness is a convention;
    use only mirror-insensitive summaries.
    """
    occ = occurrences(shadow)
    signs = {}
    for label, ((ci, p), (cj, q)) in occ.items():
        first_over = assignment[(ci, p)] is Passage.OVER
        positive = first_over == (chirality[label - 1] == 0)
        signs[label] = 1 if positive else -1
    return signs


def linking_matrix(shadow: Shadow, chirality, assignment):
    occ = occurrences(shadow)
    signs = crossing_signs(shadow, chirality, assignment)
    c = len(shadow)
    lk = [[0] * c for _ in range(c)]
    for label, ((ci, _), (cj, _)) in occ.items():
        if ci != cj:
            lk[ci][cj] += signs[label]
            lk[cj][ci] += signs[label]
    for i in range(c):
        for j in range(c):
            assert lk[i][j] % 2 == 0
            lk[i][j] //= 2
    return lk


def linking_fingerprint(lk) -> tuple:
    """Multiset of absolute pairwise linking numbers.

    Absolute values make this insensitive to component orientation choices
    and to mirror image, matching unoriented link tables.
    """
    return tuple(
        sorted(abs(lk[i][j]) for i in range(len(lk)) for j in range(i + 1, len(lk)))
    )


def _poly_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def kauffman_bracket(shadow: Shadow, chirality, assignment) -> dict[int, int]:
    """State sum bracket polynomial in A (Laurent, dict exponent -> coeff)."""
    occ = occurrences(shadow)
    rotation, darts = _rotations(shadow, chirality)
    n = shadow_crossings(shadow)

    # per crossing, the two dart pairings of each smoothing; the A-smoothing
    # merges the regions swept rotating the over-strand counterclockwise
    pairings = []
    for label in range(1, n + 1):
        (ci, p), (cj, q) = occ[label]
        order = rotation[label]
        first_over = assignment[(ci, p)] is Passage.OVER
        # first visit's darts sit at rotation positions 0 and 2
        adjacent = ((order[0], order[1]), (order[2], order[3]))
        skew = ((order[1], order[2]), (order[3], order[0]))
        if first_over:
            pairings.append((skew, adjacent))  # (A-smoothing, B-smoothing)
        else:
            pairings.append((adjacent, skew))

    total: dict[int, int] = {}
    n_darts = darts.n_darts
    for state in range(1 << n):
        parent = list(range(n_darts))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: int, y: int) -> None:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for d in range(0, n_darts, 2):
            union(d, d + 1)
        a_count = 0
        for xi in range(n):
            use_a = not state >> xi & 1
            a_count += use_a
            for x, y in pairings[xi][0 if use_a else 1]:
                union(x, y)
        loops = len({find(d) for d in range(n_darts)})
        exponent = a_count - (n - a_count)
        loop_poly = {0: 1}
        for _ in range(loops - 1):
            loop_poly = _poly_mul(loop_poly, {2: -1, -2: -1})
        for e, c in loop_poly.items():
            total[e + exponent] = total.get(e + exponent, 0) + c
    return {e: c for e, c in total.items() if c}


def normalized_bracket(shadow: Shadow, chirality, assignment) -> tuple:
    """Writhe-normalized bracket as a sorted coefficient tuple."""
    bracket = kauffman_bracket(shadow, chirality, assignment)
    writhe = sum(crossing_signs(shadow, chirality, assignment).values())
    sign = -1 if writhe % 2 else 1
    return tuple(sorted((e - 3 * writhe, sign * c) for e, c in bracket.items()))


def _mirror_poly(poly: tuple) -> tuple:
    return tuple(sorted((-e, c) for e, c in poly))


def link_fingerprint(shadow: Shadow) -> tuple | None:
    """Fingerprint separating small alternating links as unoriented types.

    Combines crossing count, component count, the normalized bracket
    canonicalized over mirror image and all component orientation reversals
    (the raw bracket is orientation-blind but the writhe shift is not), and
    absolute linking numbers.  None when the shadow is unrealizable or
    admits no alternating assignment.

    The per-component visit profile is deliberately left out: a flype across
    a tangle whose sides make U-turns hands a self-crossing from one
    component to the other, so the profile separates diagrams of one link.
    """
    chirality = first_realization(shadow)
    if chirality is None:
        return None
    assignment = alternating_assignment(shadow)
    if assignment is None:
        return None
    bracket = kauffman_bracket(shadow, chirality, assignment)
    signs = crossing_signs(shadow, chirality, assignment)
    occ = occurrences(shadow)
    c = len(shadow)
    candidates = []
    for flips in range(1 << c):
        writhe = 0
        for label, ((ci, _), (cj, _)) in occ.items():
            s = signs[label]
            if (flips >> ci ^ flips >> cj) & 1:
                s = -s
            writhe += s
        sign = -1 if writhe % 2 else 1
        poly = tuple(
            sorted((e - 3 * writhe, sign * coeff) for e, coeff in bracket.items())
        )
        candidates.append(poly)
        candidates.append(_mirror_poly(poly))
    canon_poly = min(candidates)
    lk = linking_fingerprint(linking_matrix(shadow, chirality, assignment))
    return (shadow_crossings(shadow), len(shadow), canon_poly, lk)


# ---------------------------------------------------------------------------
# Port-graph constructions
# ---------------------------------------------------------------------------


class PortGraph:
    """Build shadows by wiring 4-port crossings.

    Ports are 0=NW, 1=NE, 2=SE, 3=SW; the strands pass through diagonally
    (0<->2 and 1<->3).  join connects two ports with an arc; walk traverses
    the strands once every port is wired and returns visit sequences.
    """

    def __init__(self) -> None:
        self.joins: dict[tuple[int, int], tuple[int, int]] = {}
        self.n = 0

    def crossing(self) -> int:
        self.n += 1
        return self.n

    def chain(self, count: int, vertical: bool) -> tuple[list[int], dict[str, tuple[int, int]]]:
        """A twist chain of count crossings; returns ids and end ports.

        Horizontal chains run west to east and expose WT/WB/ET/EB; vertical
        chains run north to south and expose NL/NR/SL/SR.
        """
        ids = [self.crossing() for _ in range(count)]
        if vertical:
            for a, b in zip(ids, ids[1:]):
                self.join((a, 3), (b, 0))
                self.join((a, 2), (b, 1))
            ends = {
                "NL": (ids[0], 0),
                "NR": (ids[0], 1),
                "SL": (ids[-1], 3),
                "SR": (ids[-1], 2),
            }
        else:
            for a, b in zip(ids, ids[1:]):
                self.join((a, 1), (b, 0))
                self.join((a, 2), (b, 3))
            ends = {
                "WT": (ids[0], 0),
                "WB": (ids[0], 3),
                "ET": (ids[-1], 1),
                "EB": (ids[-1], 2),
            }
        return ids, ends

    def join(self, a: tuple[int, int], b: tuple[int, int]) -> None:
        if a in self.joins or b in self.joins:
            raise ValueError(f"port reused: {a} or {b}")
        if a == b:
            raise ValueError("cannot join a port to itself")
        self.joins[a] = b
        self.joins[b] = a

    def walk(self) -> Shadow:
        for x in range(1, self.n + 1):
            for p in range(4):
                if (x, p) not in self.joins:
                    raise ValueError(f"unwired port {(x, p)}")
        consumed: set[tuple[int, int]] = set()
        shadow: Shadow = []
        for x0 in range(1, self.n + 1):
            for p0 in (0, 1):
                if (x0, p0) in consumed or (x0, (p0 + 2) % 4) in consumed:
                    continue
                visits = []
                x, p = x0, p0
                while True:
                    consumed.add((x, p))
                    visits.append(x)
                    out = (x, (p + 2) % 4)
                    consumed.add(out)
                    x, p = self.joins[out]
                    if (x, p) == (x0, p0):
                        break
                shadow.append(visits)
        return shadow


def pretzel_shadow(columns: list[int]) -> Shadow:
    """The pretzel shadow with the given twist column sizes."""
    if len(columns) < 2 or any(e < 1 for e in columns):
        raise ValueError("need at least two columns of at least one crossing")
    pg = PortGraph()
    ends = []
    for e in columns:
        _, col = pg.chain(e, vertical=True)
        ends.append(col)
    k = len(ends)
    for i in range(k):
        nxt = (i + 1) % k
        pg.join(ends[i]["NR"], ends[nxt]["NL"])
        pg.join(ends[i]["SR"], ends[nxt]["SL"])
    return pg.walk()


def rational_shadow(twists: list[int]) -> Shadow:
    """Numerator closure of the continued-fraction twist tangle.

    Twist regions alternate between horizontal (composed on the right) and
    vertical (composed below), phased so the last region is horizontal; the
    closure then joins the two north ends and the two south ends.
    """
    if not twists or any(a < 1 for a in twists):
        raise ValueError("need positive twist counts")
    k = len(twists)
    pg = PortGraph()
    horizontal = k % 2 == 1
    _, t = pg.chain(twists[0], vertical=not horizontal)
    if horizontal:
        nw, ne, sw, se = t["WT"], t["ET"], t["WB"], t["EB"]
    else:
        nw, ne, sw, se = t["NL"], t["NR"], t["SL"], t["SR"]
    for i, a in enumerate(twists[1:], start=2):
        horizontal = i % 2 == k % 2
        _, t = pg.chain(a, vertical=not horizontal)
        if horizontal:  # compose to the right
            pg.join(ne, t["WT"])
            pg.join(se, t["WB"])
            ne, se = t["ET"], t["EB"]
        else:  # compose below
            pg.join(sw, t["NL"])
            pg.join(se, t["NR"])
            sw, se = t["SL"], t["SR"]
    pg.join(nw, ne)
    pg.join(sw, se)
    return pg.walk()


def clasped_trefoils_shadow(clasp: int = 4, twists: int = 3) -> Shadow:
    """Two twist-knot loops passing through a shared twist clasp.

    Each knotted loop is a twist region closed along the bottom, its two
    remaining ends routed down one lane of a shared vertical clasp column.
    """
    pg = PortGraph()
    _, t1 = pg.chain(twists, vertical=False)
    _, t2 = pg.chain(twists, vertical=False)
    _, v = pg.chain(clasp, vertical=True)
    pg.join(t1["WB"], t1["EB"])
    pg.join(t2["WB"], t2["EB"])
    pg.join(t1["WT"], v["NL"])
    pg.join(t1["ET"], v["SL"])
    pg.join(t2["WT"], v["NR"])
    pg.join(t2["ET"], v["SR"])
    return pg.walk()


def torus2_shadow(k: int) -> Shadow:
    """The standard closed 2-braid shadow with k crossings."""
    if k < 2:
        raise ValueError("need at least two crossings")
    if k % 2:
        return [[(i % k) + 1 for i in range(2 * k)]]
    return [
        [i + 1 for i in range(k)],
        [i + 1 for i in range(k)],
    ]
