"""Planar knot diagrams, Seifert smoothing and Seifert-surface genus.

A diagram is a list of crossings.  Each crossing lists the four edges
meeting it in counterclockwise order, with the under-strand passing
through slots 0 and 2 and the over-strand through slots 1 and 3.  An edge
id appears in exactly two slots, except for the two free ends of a
knotoid, which appear once.  Crossingless closed components are kept as a
bare count.

Orientation is stored per crossing as the pair of incoming slots.  Braid
closures carry the upward orientation of the braid; other diagrams are
oriented by traversal from their smallest edge.
"""

from __future__ import annotations

import re
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass, field, replace

from .cf import Expansion, cf_eval
from .errors import (
    MultiComponent,
    NonIntegerGenus,
    NonPositiveN,
    NotAKnotSlope,
    OddStrandCount,
    ParseError,
)

FORMAT_VERSION = 1

Occurrence = tuple[int, int]  # (crossing index, slot)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for g in self.letters:
            if g == 0 or abs(g) >= self.strands:
                raise ValueError(f"generator {g} out of range for {self.strands} strands")

    def __str__(self):
        return f"{self.strands}: " + ",".join(str(g) for g in self.letters)


def parse_braid(text: str) -> BraidWord:
    m = re.fullmatch(r"\s*(\d+)\s*:\s*(.*?)\s*", text)
    if not m:
        raise ParseError(f"expected a braid like '4: 2,2,1,1', got {text!r}")
    body = m.group(2)
    try:
        letters = tuple(int(t) for t in body.split(",")) if body else ()
        return BraidWord(int(m.group(1)), letters)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


@dataclass(frozen=True)
class Crossing:
    slots: tuple[int, int, int, int]
    incoming: tuple[int, int] | None = None  # one slot per strand

    @property
    def over(self) -> tuple[int, int]:
        return self.slots[1], self.slots[3]

    def sign(self) -> int | None:
        """+1 or -1 for an oriented crossing (right-handed is +1)."""
        if self.incoming is None:
            return None
        under_in = next(s for s in self.incoming if s % 2 == 0)
        over_in = next(s for s in self.incoming if s % 2 == 1)
        # right-handed: the over strand enters just clockwise of the under strand
        return 1 if (over_in - under_in) % 4 == 3 else -1


@dataclass(frozen=True)
class KnotDiagram:
    crossings: tuple[Crossing, ...]
    loops: int = 0
    ends: tuple[int, int] | None = None  # (tail, head) edge ids of a knotoid

    @property
    def kind(self) -> str:
        return "closed" if self.ends is None else "knotoid"

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def oriented(self) -> bool:
        return all(c.incoming is not None for c in self.crossings)

    def edges(self) -> list[int]:
        return sorted({e for c in self.crossings for e in c.slots})

    def occurrences(self) -> dict[int, list[Occurrence]]:
        occ = defaultdict(list)
        for i, c in enumerate(self.crossings):
            for s, e in enumerate(c.slots):
                occ[e].append((i, s))
        return occ


@dataclass(frozen=True)
class SeifertData:
    circle_count: int
    crossing_count: int
    arc_count: int = 0
    circles: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)
    arc: tuple[int, ...] = field(default=(), compare=False, repr=False)


def _other(occ: dict[int, list[Occurrence]], e: int, here: Occurrence) -> Occurrence | None:
    pair = occ[e]
    if len(pair) == 1:
        return None
    return pair[1] if pair[0] == here else pair[0]


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


def _assemble(raw: list[Crossing], used_ids, uf: _UnionFind, ends=None) -> KnotDiagram:
    """Relabel merged edge ids to 0..E-1 and count crossingless loops."""
    label = {}
    crossings = []
    for c in raw:
        slots = []
        for e in c.slots:
            r = uf.find(e)
            if r not in label:
                label[r] = len(label)
            slots.append(label[r])
        crossings.append(Crossing(tuple(slots), c.incoming))
    loops = len({uf.find(e) for e in used_ids} - set(label))
    if ends is not None:
        ends = tuple(label[uf.find(e)] for e in ends)
    return KnotDiagram(tuple(crossings), loops, ends)


def _braid_crossings(b: BraidWord):
    """Stack the crossings of ``b`` bottom to top.

    Returns the crossings, the bottom edge at each position, the top edge
    at each position, and every edge id created.
    """
    bottom = list(range(b.strands))
    pos = list(bottom)
    nxt = b.strands
    raw = []
    for g in b.letters:
        i = abs(g) - 1
        bl, br = pos[i], pos[i + 1]
        tl, tr = nxt, nxt + 1
        nxt += 2
        if g > 0:
            # strand from the left passes over
            raw.append(Crossing((br, tr, tl, bl), (0, 3)))
        else:
            raw.append(Crossing((bl, br, tr, tl), (0, 1)))
        pos[i], pos[i + 1] = tl, tr
    return raw, bottom, pos, range(nxt)


def braid_closure(b: BraidWord) -> KnotDiagram:
    """Trace closure: top of each position joined to its bottom."""
    raw, bottom, top, ids = _braid_crossings(b)
    uf = _UnionFind()
    for lo, hi in zip(bottom, top):
        uf.union(hi, lo)
    return _assemble(raw, ids, uf)


def braid_knotoid(b: BraidWord) -> KnotDiagram:
    """Trace closure with the closing arc of strand 1 left open.

    The tail enters at the bottom of position 1 and the head leaves at its
    top.  Position 1 must meet at least one crossing.
    """
    raw, bottom, top, ids = _braid_crossings(b)
    if bottom[0] == top[0]:
        raise ValueError("strand 1 meets no crossing; the arc would be isolated")
    uf = _UnionFind()
    for lo, hi in list(zip(bottom, top))[1:]:
        uf.union(hi, lo)
    return _assemble(raw, ids, uf, ends=(bottom[0], top[0]))


def plat_closure(b: BraidWord, top: str = "standard") -> KnotDiagram:
    """Cap strands (1,2), (3,4), ... at the bottom.

    ``top="standard"`` caps the same pairs at the top.  ``top="shifted"``
    caps (2,3), (4,5), ... and joins strands 1 and 2k with an outer arc;
    this is the closure under which a pure 4-braid such as (s2^2 s1^4)^n
    closes to a knot.
    """
    if b.strands % 2:
        raise OddStrandCount(f"plat closure needs an even strand count, got {b.strands}")
    if top not in ("standard", "shifted"):
        raise ValueError(f"unknown top capping {top!r}")
    raw, bottom, tops, ids = _braid_crossings(b)
    raw = [Crossing(c.slots) for c in raw]  # braid direction is not a knot orientation here
    uf = _UnionFind()
    n = b.strands
    for j in range(0, n, 2):
        uf.union(bottom[j], bottom[j + 1])
    if top == "standard":
        for j in range(0, n, 2):
            uf.union(tops[j], tops[j + 1])
    else:
        for j in range(1, n - 1, 2):
            uf.union(tops[j], tops[j + 1])
        uf.union(tops[0], tops[n - 1])
    return orient(_assemble(raw, ids, uf))


# -- traversal ---------------------------------------------------------------

def _walk_strand(d: KnotDiagram, occ, start_edge: int, arrive: Occurrence | None):
    """Follow a component, yielding (edge, arrival occurrence) pairs.

    ``arrive`` is the occurrence at which ``start_edge`` is entered; for a
    knotoid tail it is the single occurrence of the tail edge.
    """
    e, here = start_edge, arrive
    while True:
        yield e, here
        if here is None:
            return
        ci, s = here
        e2 = d.crossings[ci].slots[(s + 2) % 4]
        leave = (ci, (s + 2) % 4)
        nxt = _other(occ, e2, leave)
        if (e2, nxt) == (start_edge, arrive):
            return
        e, here = e2, nxt
        if here is None:  # ran off the head of a knotoid
            yield e, None
            return


def components(d: KnotDiagram) -> list[list[tuple[int, Occurrence | None]]]:
    occ = d.occurrences()
    seen = set()
    comps = []
    starts = []
    if d.ends is not None:
        tail = d.ends[0]
        starts.append((tail, occ[tail][0]))
    starts.extend((e, occ[e][0]) for e in sorted(occ))
    for e, first in starts:
        if e in seen:
            continue
        comp = []
        for item in _walk_strand(d, occ, e, first):
            comp.append(item)
            seen.add(item[0])
        comps.append(comp)
    return comps


def component_count(d: KnotDiagram) -> int:
    return len(components(d)) + d.loops


def orient(d: KnotDiagram) -> KnotDiagram:
    """Orient every component by traversal from its smallest edge.

    A knotoid is oriented from tail to head.  Crossings that already carry
    an orientation are left alone.
    """
    if d.oriented:
        return d
    incoming = defaultdict(list)
    for comp in components(d):
        for _, here in comp:
            if here is not None:
                incoming[here[0]].append(here[1])
    crossings = []
    for i, c in enumerate(d.crossings):
        ins = sorted(incoming[i])
        if c.incoming is not None:
            crossings.append(c)
        else:
            crossings.append(Crossing(c.slots, tuple(ins)))
    return replace(d, crossings=tuple(crossings))


def reverse(d: KnotDiagram) -> KnotDiagram:
    """The same diagram with every strand's direction flipped."""
    crossings = tuple(
        Crossing(c.slots, tuple(sorted((s + 2) % 4 for s in c.incoming)))
        if c.incoming is not None else c
        for c in d.crossings
    )
    ends = None if d.ends is None else (d.ends[1], d.ends[0])
    return KnotDiagram(crossings, d.loops, ends)


def mirror(d: KnotDiagram) -> KnotDiagram:
    """Swap over and under at every crossing."""
    out = []
    for c in d.crossings:
        slots = c.slots[1:] + c.slots[:1]
        inc = None if c.incoming is None else tuple(sorted((s - 1) % 4 for s in c.incoming))
        out.append(Crossing(slots, inc))
    return replace(d, crossings=tuple(out))


# -- Seifert smoothing -------------------------------------------------------

def _seifert_next(d: KnotDiagram, occ, here: Occurrence):
    """Edge and arrival occurrence after smoothing the crossing at ``here``."""
    ci, s = here
    c = d.crossings[ci]
    other_in = next(t for t in c.incoming if t % 2 != s % 2)
    leave = (ci, (other_in + 2) % 4)
    e = c.slots[leave[1]]
    return e, _other(occ, e, leave)


def seifert_cycles(d: KnotDiagram):
    """Seifert circles (and the knotoid arc) as sequences of edges.

    Works on any oriented diagram, links included.  Returns
    ``(circles, arc)`` where ``arc`` is empty for closed diagrams.
    """
    d = orient(d)
    occ = d.occurrences()
    seen = set()
    arc = []
    if d.ends is not None:
        tail, head = d.ends
        e, here = tail, occ[tail][0]
        while True:
            arc.append(e)
            seen.add(e)
            if here is None:
                break
            e, here = _seifert_next(d, occ, here)
    circles = []
    for e0 in sorted(occ):
        if e0 in seen:
            continue
        # enter e0 at its head occurrence
        here = next(o for o in occ[e0] if o[1] in d.crossings[o[0]].incoming)
        circ = []
        e = e0
        while e not in seen:
            circ.append(e)
            seen.add(e)
            e, here = _seifert_next(d, occ, here)
        circles.append(tuple(circ))
    circles.extend(() for _ in range(d.loops))
    return circles, tuple(arc)


def seifert_smooth(d: KnotDiagram) -> SeifertData:
    if d.kind == "closed" and component_count(d) > 1:
        raise MultiComponent(f"diagram has {component_count(d)} components")
    circles, arc = seifert_cycles(d)
    return SeifertData(len(circles), d.crossing_count, 1 if d.ends is not None else 0,
                       tuple(circles), arc)


def seifert_betti(d: KnotDiagram) -> int:
    """First Betti number of the Seifert-algorithm surface.

    Closed: c - s + 1.  Knotoid, with the arc thickened to a disk: c - s.
    """
    data = seifert_smooth(d)
    if d.kind == "closed":
        return data.crossing_count - data.circle_count + 1
    return data.crossing_count - data.circle_count


def seifert_genus(d: KnotDiagram) -> int:
    beta = seifert_betti(d)
    if beta % 2:
        raise NonIntegerGenus(f"odd first Betti number {beta} for a one-boundary surface")
    return beta // 2


# -- knotoids ----------------------------------------------------------------

def knotoid_cut(d: KnotDiagram, edge: int) -> KnotDiagram:
    """Cut ``edge`` open; the result runs from the cut to the cut."""
    if d.ends is not None:
        raise ValueError("diagram is already a knotoid")
    d = orient(d)
    occ = d.occurrences()
    if edge not in occ:
        raise ValueError(f"no edge {edge}")
    (a, b) = occ[edge]
    head_occ = a if a[1] in d.crossings[a[0]].incoming else b
    tail_occ = b if head_occ == a else a
    # piece leaving tail_occ keeps the old id and ends at the head
    fresh = max(occ) + 1
    crossings = list(d.crossings)
    ci, s = head_occ
    slots = list(crossings[ci].slots)
    slots[s] = fresh
    crossings[ci] = Crossing(tuple(slots), crossings[ci].incoming)
    return KnotDiagram(tuple(crossings), d.loops, (fresh, edge))


def cut_strand(d: KnotDiagram, edge: int, over: bool = True) -> KnotDiagram:
    """Delete the whole over-path (or under-path) through ``edge``.

    Crossings that the path passes over (under) disappear, their other
    strand becoming a single edge.  The endpoints of the knotoid sit where
    the path met its bounding crossings.
    """
    d = orient(d)
    occ = d.occurrences()
    passes = (lambda s: s % 2 == 1) if over else (lambda s: s % 2 == 0)
    path_edges = {edge}
    dropped = set()
    # forward
    e = edge
    here = next(o for o in occ[e] if o[1] in d.crossings[o[0]].incoming)
    while passes(here[1]):
        if here[0] in dropped:
            raise ValueError("path closes up without meeting a bounding crossing")
        dropped.add(here[0])
        leave = (here[0], (here[1] + 2) % 4)
        e = d.crossings[here[0]].slots[leave[1]]
        path_edges.add(e)
        here = _other(occ, e, leave)
    stop_fwd = here
    # backward
    e = edge
    there = next(o for o in occ[e] if o[1] not in d.crossings[o[0]].incoming)
    while passes(there[1]):
        dropped.add(there[0])
        arrive = (there[0], (there[1] + 2) % 4)
        e = d.crossings[there[0]].slots[arrive[1]]
        path_edges.add(e)
        there = _other(occ, e, arrive)
    stop_bwd = there
    uf = _UnionFind()
    for ci in dropped:
        c = d.crossings[ci]
        keep = (0, 2) if over else (1, 3)
        uf.union(c.slots[keep[0]], c.slots[keep[1]])
    fresh_tail, fresh_head = max(occ) + 1, max(occ) + 2
    raw = []
    for ci, c in enumerate(d.crossings):
        if ci in dropped:
            continue
        slots = list(c.slots)
        if ci == stop_fwd[0]:
            slots[stop_fwd[1]] = fresh_tail
        if ci == stop_bwd[0]:
            slots[stop_bwd[1]] = fresh_head
        raw.append(Crossing(tuple(slots), c.incoming))
    ids = [e for c in d.crossings for e in c.slots] + [fresh_tail, fresh_head]
    ids = [e for e in ids if e not in path_edges]
    return _assemble(raw, ids, uf, ends=(fresh_tail, fresh_head))


# -- standard families -------------------------------------------------------

def kn_family_braid(n: int) -> BraidWord:
    """The 4-braid (s2^2 s1^4)^n whose plat closure is the knot K_n."""
    if n < 1:
        raise NonPositiveN(f"n must be positive, got {n}")
    return BraidWord(4, (2, 2, 1, 1, 1, 1) * n)


def kn_diagram(n: int) -> KnotDiagram:
    return plat_closure(kn_family_braid(n), top="shifted")


def twobridge_braid(e: Expansion) -> BraidWord:
    """4-braid whose twist regions realize the entries of ``e``.

    Entry i contributes |a_i| crossings, alternately between strands 2,3
    (odd i) and strands 1,2 (even i), with the sign of a_i.  For
    e = [2,4,...,2,4] this is the braid (s2^2 s1^4)^n.
    """
    letters = []
    for i, a in enumerate(e):
        gen = 2 if i % 2 == 0 else 1
        letters.extend([gen if a > 0 else -gen] * abs(a))
    return BraidWord(4, tuple(letters))


def standard_2bridge_diagram(e: Sequence[int]) -> KnotDiagram:
    """Four-plat diagram of the 2-bridge knot with expansion ``e``."""
    e = tuple(e)
    f = cf_eval(e)
    if not f.is_knot:
        raise NotAKnotSlope(f"{list(e)} evaluates to {f}, a 2-component link")
    top = "standard" if len(e) % 2 else "shifted"
    return plat_closure(twobridge_braid(e), top=top)


# -- invariants used for cross-checks ----------------------------------------

def determinant(d: KnotDiagram) -> int:
    """|det| of the knot, from the Fox colouring matrix."""
    if component_count(d) != 1:
        raise MultiComponent("determinant is computed for knots only")
    if d.crossing_count == 0:
        return 1
    uf = _UnionFind()
    for c in d.crossings:
        uf.union(c.slots[1], c.slots[3])
    arcs = sorted({uf.find(e) for e in d.edges()})
    col = {a: i for i, a in enumerate(arcs)}
    rows = []
    for c in d.crossings:
        r = [0] * len(arcs)
        r[col[uf.find(c.slots[1])]] += 2
        r[col[uf.find(c.slots[0])]] -= 1
        r[col[uf.find(c.slots[2])]] -= 1
        rows.append(r)
    return abs(_bareiss([r[1:] for r in rows[1:]]))


def _bareiss(m: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    m = [list(r) for r in m]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def writhe(d: KnotDiagram) -> int:
    return sum(orient(d).crossings[i].sign() for i in range(d.crossing_count))


# -- serialization -----------------------------------------------------------

def dumps(d: KnotDiagram) -> str:
    """Crossing-list text format.

    One crossing per line, ``a b c d o`` with edges counterclockwise and
    ``o`` = 1 when the strand b-d is over (0 when a-c is over).  Canonical
    output always uses o = 1.
    """
    lines = [f"DIAGRAM v{FORMAT_VERSION} crossings={d.crossing_count} loops={d.loops}"]
    if d.ends is not None:
        lines.append(f"ends {d.ends[0]} {d.ends[1]}")
    for c in d.crossings:
        lines.append(" ".join(str(e) for e in c.slots) + " 1")
    return "\n".join(lines) + "\n"


def loads(text: str) -> KnotDiagram:
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty diagram file")
    m = re.fullmatch(r"DIAGRAM v(\d+) crossings=(\d+) loops=(\d+)", lines[0])
    if not m:
        raise ParseError(f"bad diagram header {lines[0]!r}")
    if int(m.group(1)) != FORMAT_VERSION:
        raise ParseError(f"unsupported diagram format version {m.group(1)}")
    body = lines[1:]
    ends = None
    if body and body[0].startswith("ends"):
        parts = body.pop(0).split()
        ends = (int(parts[1]), int(parts[2]))
    crossings = []
    for ln in body:
        toks = ln.split()
        if len(toks) != 5:
            raise ParseError(f"bad crossing line {ln!r}")
        a, b, c, dd, o = (int(t) for t in toks)
        slots = (a, b, c, dd) if o == 1 else (b, c, dd, a)
        crossings.append(Crossing(slots))
    if len(crossings) != int(m.group(2)):
        raise ParseError("crossing count does not match header")
    diag = KnotDiagram(tuple(crossings), int(m.group(3)), ends)
    occ = diag.occurrences()
    singles = sorted(e for e, o in occ.items() if len(o) == 1)
    expected = sorted(ends) if ends else []
    if any(len(o) > 2 for o in occ.values()) or singles != expected:
        raise ParseError("every edge must join exactly two slots (knotoid ends excepted)")
    return diag
