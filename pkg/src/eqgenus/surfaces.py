"""Quotient spanning surfaces as disks with bands.

A :class:`BandPresentation` is a single 0-handle D with 1-handles attached
along disjoint arcs of its boundary circle.  Points on the circle are
plain integers compared in their natural (counterclockwise) order; each
band foot is an arc between two cyclically adjacent points.  One further
arc of the circle is the reflector, the image of the fixed arc of the
inversion.

Each band records its signed half-twist count relative to the disk and the
linking number of its core loop with the axis O.  A surface lifts to an
orientable invariant surface exactly when every core is orientation
reversing iff it links O an odd number of times (Condition (C)).
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass
from typing import Optional

from . import cf, diagrams
from .diagrams import BraidWord
from .errors import MalformedRouteCode, MultiBoundary, OddHookCount, ParseError

FORMAT_VERSION = 1

# (first hook, second hook) orientation -> (half twists, lk with O)
ROUTES = {
    ("+", "+"): (0, 2),
    ("-", "-"): (0, -2),
    ("+", "-"): (1, 1),
    ("-", "+"): (-1, -1),
}


@dataclass(frozen=True)
class Band:
    half_twists: int
    lk_with_axis: int
    attach: tuple[tuple[int, int], tuple[int, int]]

    @property
    def orientation_reversing(self) -> bool:
        return self.half_twists % 2 == 1

    @property
    def lk_odd(self) -> bool:
        return self.lk_with_axis % 2 == 1


@dataclass(frozen=True)
class BandPresentation:
    bands: tuple[Band, ...]
    reflector: tuple[int, int]
    axis_label: str = "O"

    def points(self) -> list[int]:
        pts = list(self.reflector)
        for b in self.bands:
            for arc in b.attach:
                pts.extend(arc)
        if len(set(pts)) != len(pts):
            raise ValueError("attachment points must be distinct")
        return sorted(pts)


@dataclass(frozen=True)
class LiftCertificate:
    condition_c: bool
    betti_quotient: int
    betti_lift: int
    lift_genus: Optional[int]

    def as_dict(self) -> dict:
        return {
            "condition_c": self.condition_c,
            "betti_quotient": self.betti_quotient,
            "betti_lift": self.betti_lift,
            "lift_genus": self.lift_genus,
        }


@dataclass(frozen=True)
class LiftedSurface:
    """Explicit double of a presentation, branched along the reflector."""

    band_count: int
    orientable: bool
    boundary_components: int

    @property
    def betti(self) -> int:
        return self.band_count

    @property
    def genus(self) -> Optional[int]:
        if not self.orientable:
            return None
        # chi = 1 - betti = 2 - 2g - r
        return (self.betti + 1 - self.boundary_components) // 2


# -- boundary bookkeeping ----------------------------------------------------

def _ccw_foot(arc, succ) -> tuple:
    a, b = arc
    if succ[a] == b:
        return a, b
    if succ[b] == a:
        return b, a
    raise ValueError(f"attachment arc {arc} is not a gap between adjacent points")


def _count_cycles(order: list, feet: list[tuple], links: list[tuple]) -> int:
    """Boundary circles of a disk with bands.

    ``order`` lists the marked points around the disk, ``feet`` the
    counterclockwise pairs covered by band ends, ``links`` the band edges.
    Every other pair of neighbouring points is joined by boundary.
    """
    n = len(order)
    if n == 0:
        return 1
    covered = {frozenset(f) for f in feet}
    adj = {p: [] for p in order}
    for i in range(n):
        u, v = order[i], order[(i + 1) % n]
        if n > 1 and frozenset((u, v)) not in covered:
            adj[u].append(v)
            adj[v].append(u)
    for u, v in links:
        adj[u].append(v)
        adj[v].append(u)
    seen = set()
    cycles = 0
    for p in order:
        if p in seen:
            continue
        cycles += 1
        stack = [p]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(adj[x])
    return cycles


def _band_links(foot1, foot2, twisted: bool) -> list[tuple]:
    (a, b), (c, d) = foot1, foot2
    return [(a, c), (b, d)] if twisted else [(a, d), (b, c)]


def boundary_components(bp: BandPresentation) -> int:
    order = bp.points()
    succ = {order[i]: order[(i + 1) % len(order)] for i in range(len(order))}
    _ccw_foot(bp.reflector, succ)
    feet, links = [], []
    for band in bp.bands:
        f1, f2 = (_ccw_foot(arc, succ) for arc in band.attach)
        feet += [f1, f2]
        links += _band_links(f1, f2, band.orientation_reversing)
    return _count_cycles(order, feet, links)


def betti(bp: BandPresentation) -> int:
    return len(bp.bands)


def condition_c_check(bp: BandPresentation) -> bool:
    """Every band core reverses orientation iff it links the axis oddly.

    Band cores generate first homology mod 2 and both sides are
    homomorphisms to Z/2, so checking the cores suffices.
    """
    return all(b.orientation_reversing == b.lk_odd for b in bp.bands)


def loop_character(bp: BandPresentation, word) -> int:
    """Mod-2 discrepancy between orientation and lk parity along a loop.

    ``word`` lists band indices (signs ignored); 0 means Condition (C)
    holds along the loop.
    """
    total = 0
    for i in word:
        b = bp.bands[abs(i)]
        total += b.half_twists + b.lk_with_axis
    return total % 2


def lift_certificate(bp: BandPresentation) -> LiftCertificate:
    if boundary_components(bp) != 1:
        raise MultiBoundary(
            f"presentation has {boundary_components(bp)} boundary circles, expected 1"
        )
    ok = condition_c_check(bp)
    b = betti(bp)
    return LiftCertificate(ok, b, 2 * b, b if ok else None)


def lift(bp: BandPresentation) -> LiftedSurface:
    """Build the preimage surface combinatorially.

    The disk lifts to two copies glued along the reflector, the second one
    mirrored.  A band whose core links the axis oddly crosses between the
    copies.  Orientability is read off from the lifted bands directly.
    """
    order = bp.points()
    succ = {order[i]: order[(i + 1) % len(order)] for i in range(len(order))}
    r1, r2 = _ccw_foot(bp.reflector, succ)
    start = order.index(r2)
    seq = [order[(start + 1 + i) % len(order)] for i in range(len(order) - 2)]
    lifted_order = [(p, 0) for p in seq] + [(p, 1) for p in reversed(seq)]
    lsucc = {lifted_order[i]: lifted_order[(i + 1) % len(lifted_order)]
             for i in range(len(lifted_order))}

    feet, links = [], []
    orientable = True
    for band in bp.bands:
        f1, f2 = (_ccw_foot(arc, succ) for arc in band.attach)
        physical = _band_links(f1, f2, band.orientation_reversing)
        for sheet in (0, 1):
            other = sheet ^ (band.lk_with_axis % 2)
            pairs = [((x, sheet), (y, other)) for x, y in physical]
            g1 = _ccw_foot((pairs[0][0], pairs[1][0]), lsucc)
            g2 = _ccw_foot((pairs[0][1], pairs[1][1]), lsucc)
            feet += [g1, g2]
            links += pairs
            flat = {frozenset(e) for e in _band_links(g1, g2, twisted=False)}
            if {frozenset(e) for e in pairs} != flat:
                orientable = False
    r = _count_cycles(lifted_order, feet, links)
    return LiftedSurface(2 * len(bp.bands), orientable, r)


def random_presentation(rng: random.Random, max_bands: int = 6, max_twist: int = 4,
                        max_lk: int = 4) -> BandPresentation:
    """Random presentation with attachments in a random cyclic order."""
    k = rng.randint(0, max_bands)
    slots = ["R"] + [(i, j) for i in range(k) for j in (0, 1)]
    rest = slots[1:]
    rng.shuffle(rest)
    slots = ["R"] + rest
    where = {s: (2 * t, 2 * t + 1) for t, s in enumerate(slots)}
    bands = tuple(
        Band(rng.randint(-max_twist, max_twist), rng.randint(-max_lk, max_lk),
             (where[(i, 0)], where[(i, 1)]))
        for i in range(k)
    )
    return BandPresentation(bands, where["R"])


# -- text format ---------------------------------------------------------------

def dumps(bp: BandPresentation) -> str:
    r1, r2 = bp.reflector
    lines = [f"BANDS v{FORMAT_VERSION} count={len(bp.bands)} reflector={r1},{r2} axis={bp.axis_label}"]
    for i, b in enumerate(bp.bands, 1):
        (a, bb), (c, d) = b.attach
        lines.append(f"{i}: twists={b.half_twists} lk={b.lk_with_axis} attach={a},{bb}/{c},{d}")
    return "\n".join(lines) + "\n"


_HEADER = re.compile(r"BANDS v(\d+) count=(\d+) reflector=(-?\d+),(-?\d+)(?: axis=(\S+))?")
_BAND = re.compile(r"(\d+): twists=(-?\d+) lk=(-?\d+) attach=(-?\d+),(-?\d+)/(-?\d+),(-?\d+)")


def loads(text: str) -> BandPresentation:
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty band presentation")
    m = _HEADER.fullmatch(lines[0])
    if not m:
        raise ParseError(f"bad header {lines[0]!r}")
    if int(m.group(1)) != FORMAT_VERSION:
        raise ParseError(f"unsupported band format version {m.group(1)}")
    bands = []
    for ln in lines[1:]:
        bm = _BAND.fullmatch(ln)
        if not bm:
            raise ParseError(f"bad band line {ln!r}")
        if int(bm.group(1)) != len(bands) + 1:
            raise ParseError(f"bands must be numbered consecutively from 1 (line {ln!r})")
        v = [int(x) for x in bm.groups()[1:]]
        bands.append(Band(v[0], v[1], ((v[2], v[3]), (v[4], v[5]))))
    if len(bands) != int(m.group(2)):
        raise ParseError("band count does not match header")
    bp = BandPresentation(tuple(bands), (int(m.group(3)), int(m.group(4))), m.group(5) or "O")
    try:
        order = bp.points()
        succ = {order[i]: order[(i + 1) % len(order)] for i in range(len(order))}
        _ccw_foot(bp.reflector, succ)
        for b in bp.bands:
            for arc in b.attach:
                _ccw_foot(arc, succ)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return bp


# -- quotient theta-curves in normal form ----------------------------------------

@dataclass(frozen=True)
class ThetaQuotient:
    """Quotient theta-curve after hooking and sliding.

    ``knot`` describes the constituent knot k + delta ("trivial",
    "2bridge [..]", "slope q/p", "braid n: ..." for a closed braid, or
    "unknown").
    ``surgered`` is a braid whose closure is k' + delta, with delta at the
    closing arc of strand 1.  ``hooks`` lists the orientation of each hook
    in travel order; consecutive hooks pair up.  ``feet`` gives, for each
    pair, the two places ``(position, level)`` where its band meets k'.
    Level l sits between braid letters l and l+1.
    """

    knot: str
    surgered: BraidWord
    hooks: str
    feet: tuple[tuple[tuple[int, int], tuple[int, int]], ...]


def theta_dumps(tq: ThetaQuotient) -> str:
    feet = "; ".join(f"{a[0]}@{a[1]} {b[0]}@{b[1]}" for a, b in tq.feet)
    return (
        f"THETA v{FORMAT_VERSION}\n"
        f"knot: {tq.knot}\n"
        f"surgered: {tq.surgered}\n"
        f"hooks: {tq.hooks}\n"
        f"feet: {feet}\n"
    )


def theta_loads(text: str) -> ThetaQuotient:
    fields = {}
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not re.fullmatch(r"THETA v\d+", lines[0]):
        raise ParseError("missing THETA header")
    if lines[0] != f"THETA v{FORMAT_VERSION}":
        raise ParseError(f"unsupported theta format {lines[0]!r}")
    for ln in lines[1:]:
        key, sep, val = ln.partition(":")
        if not sep:
            raise ParseError(f"bad line {ln!r}")
        fields[key.strip()] = val.strip()
    for key in ("knot", "surgered", "hooks"):
        if key not in fields:
            raise ParseError(f"missing field {key!r}")
    # connector blocks may be separated by '|'
    braid = diagrams.parse_braid(re.sub(r"\s*\|\s*", ",", fields["surgered"]))
    feet = []
    body = fields.get("feet", "")
    for chunk in filter(None, (c.strip() for c in body.split(";"))):
        refs = re.findall(r"(\d+)@(\d+)", chunk)
        if len(refs) != 2 or len(chunk.split()) != 2:
            raise ParseError(f"expected two 'pos@level' references, got {chunk!r}")
        feet.append(tuple((int(p), int(lv)) for p, lv in refs))
    hooks = "".join(fields["hooks"].split())
    return ThetaQuotient(fields["knot"], braid, hooks, tuple(feet))


def quotient_slope(tq: ThetaQuotient) -> Optional[cf.Slope]:
    """Slope of the constituent knot when it can be read off, else None."""
    kind, _, rest = tq.knot.partition(" ")
    if kind == "unknown":
        return None
    if kind == "trivial":
        return cf.Slope(0, 1)
    if kind == "slope":
        return cf.parse_slope(rest)
    if kind == "2bridge":
        return cf.cf_eval(cf.parse_expansion(rest))
    if kind == "braid":
        d = diagrams.braid_closure(diagrams.parse_braid(rest))
        if diagrams.component_count(d) == 1 and d.crossing_count <= 2:
            return cf.Slope(0, 1)
        return None
    raise ParseError(f"unknown knot description {tq.knot!r}")


def quotient_is_trivial_knot(tq: ThetaQuotient) -> Optional[bool]:
    """True/False when decidable from the presentation, None otherwise.

    Diagrams with at most two crossings are always trivial; 2-bridge forms
    are decided by their slope.  There is no general unknot recognition.
    """
    f = quotient_slope(tq)
    return None if f is None else f.is_trivial


def route(first: str, second: str) -> tuple[int, int]:
    try:
        return ROUTES[(first, second)]
    except KeyError:
        raise MalformedRouteCode(f"hook orientations must be '+' or '-', got {first}{second}") from None


def hiura_construct(tq: ThetaQuotient) -> BandPresentation:
    """Spanning surface for k + delta from a normal-form theta-curve.

    The Seifert surface of the knotoid k' + delta (closed braid, strand 1
    cut open and thickened to the 0-handle) is a ribbon graph: a disk per
    braid position, a band per crossing.  Contracting a spanning tree of
    crossing bands leaves c' - s' bands; the surgery bands of the hook
    pairs are added with twist and linking data from their route.
    """
    hooks = tq.hooks
    if any(h not in "+-" for h in hooks):
        raise MalformedRouteCode(f"hook orientations must be '+' or '-', got {hooks!r}")
    if len(hooks) % 2:
        raise OddHookCount(f"{len(hooks)} hooks; the arc must hook the axis an even number of times")
    n = len(hooks) // 2
    if len(tq.feet) != n:
        raise ValueError(f"{n} hook pairs but {len(tq.feet)} foot specifications")
    routes = [route(hooks[2 * i], hooks[2 * i + 1]) for i in range(n)]

    b = tq.surgered
    m, letters = b.strands, b.letters
    for (pa, la), (pb, lb) in tq.feet:
        for pos, lev in ((pa, la), (pb, lb)):
            if not 1 <= pos <= m or not 0 <= lev <= len(letters):
                raise ValueError(f"foot {pos}@{lev} outside the {m}-strand word of length {len(letters)}")

    # rotation at each Seifert disk: attachments sorted along the strand
    items = {v: [] for v in range(m)}
    for k, g in enumerate(letters):
        i = abs(g) - 1
        items[i].append((k + 0.5, 0, ("x", k, 0)))
        items[i + 1].append((k + 0.5, 0, ("x", k, 1)))
    for t, ((pa, la), (pb, lb)) in enumerate(tq.feet):
        items[pa - 1].append((la, 1 + 2 * t, ("s", t, 0)))
        items[pb - 1].append((lb, 2 + 2 * t, ("s", t, 1)))
    rot = {v: [it[2] for it in sorted(items[v])] for v in range(m)}
    rot[0] = [("r",)] + rot[0]

    # spanning tree of crossing bands, grown from the arc disk
    ends = {k: (abs(g) - 1, abs(g)) for k, g in enumerate(letters)}
    parent = {0: None}
    adj = {v: [] for v in range(m)}
    for k, (u, v) in ends.items():
        adj[u].append((k, v))
        adj[v].append((k, u))
    queue = deque([0])
    tree = set()
    while queue:
        u = queue.popleft()
        for k, v in adj[u]:
            if v not in parent:
                parent[v] = (u, k)
                tree.add(k)
                queue.append(v)
    if len(parent) != m:
        raise ValueError("surgered diagram is disconnected; every braid position must be linked to strand 1")

    owner = {v: v for v in range(m)}

    def find(v):
        while owner[v] != v:
            v = owner[v]
        return v

    for k in sorted(tree):
        u, v = (find(x) for x in ends[k])
        ru, rv = rot[u], rot[v]
        i = ru.index(("x", k, 0)) if ("x", k, 0) in ru else ru.index(("x", k, 1))
        other = ("x", k, 1) if ru[i] == ("x", k, 0) else ("x", k, 0)
        j = rv.index(other)
        rot[u] = ru[:i] + rv[j + 1:] + rv[:j] + ru[i + 1:]
        del rot[v]
        owner[v] = u
    (final,) = rot.values()
    start = final.index(("r",))
    final = final[start:] + final[:start]

    where = {item: (2 * t, 2 * t + 1) for t, item in enumerate(final)}

    def tree_path_sign(u, v):
        # signed crossing sum along the tree path between positions u and v
        def up(x):
            path = []
            while parent[x] is not None:
                x, k = parent[x]
                path.append(k)
            return path
        pu, pv = up(u), up(v)
        while pu and pv and pu[-1] == pv[-1]:
            pu.pop()
            pv.pop()
        return sum(1 if letters[k] > 0 else -1 for k in pu + pv)

    bands = []
    for k in range(len(letters)):
        if k in tree:
            continue
        u, v = ends[k]
        twist = (1 if letters[k] > 0 else -1) + tree_path_sign(u, v)
        bands.append(Band(twist, 0, (where[("x", k, 0)], where[("x", k, 1)])))
    for t, (tw, lk) in enumerate(routes):
        bands.append(Band(tw, lk, (where[("s", t, 0)], where[("s", t, 1)])))
    bp = BandPresentation(tuple(bands), where[("r",)])

    r = boundary_components(bp)
    if r != 1:
        raise MultiBoundary(f"constructed surface has {r} boundary circles; check the foot placement")
    return bp


def surgered_seifert(tq: ThetaQuotient) -> diagrams.SeifertData:
    """Seifert data of the knotoid k' + delta via the diagrams module."""
    b = tq.surgered
    if not b.letters:
        return diagrams.SeifertData(b.strands - 1, 0, 1)
    return diagrams.seifert_smooth(diagrams.braid_knotoid(b))


# -- bundled normal forms --------------------------------------------------------

def kn_theta(n: int) -> ThetaQuotient:
    """Normal form for the quotient of (K_n, h, delta).

    k' + delta is the closure of s1^2 s2^2 ... sn^2 on n+1 strands; each
    hook pair has like orientations and its band joins the arc to one
    circle.
    """
    if n < 1:
        raise ValueError("n must be positive")
    letters = tuple(g for i in range(1, n + 1) for g in (i, i))
    feet = tuple(((1, 0), (i + 2, 2 * i + 2)) for i in range(n))
    return ThetaQuotient(
        "2bridge " + cf.format_expansion((4, 2) * n),
        BraidWord(n + 1, letters),
        "++" * n,
        feet,
    )


def eight_three_theta() -> ThetaQuotient:
    from importlib.resources import files

    return theta_loads(files("eqgenus").joinpath("data/eight_three.theta").read_text())


def random_normal_form(rng: random.Random, n: Optional[int] = None,
                       attempts: int = 1000) -> ThetaQuotient:
    """Random normal form: a pure braid on n+1 strands joining all
    positions, random hook orientations, and each pair's band joining the
    arc to its own circle at random levels.

    Draws whose bands would not close up to a single boundary circle are
    discarded, since they do not describe a knot.
    """
    n = rng.randint(1, 3) if n is None else n
    m = n + 1
    for _ in range(attempts):
        gens = list(range(1, m)) + [rng.randint(1, m - 1) for _ in range(rng.randint(0, 3))]
        rng.shuffle(gens)
        letters = []
        for g in gens:
            s = rng.choice((1, -1))
            letters += [s * g, s * g]
        word = BraidWord(m, tuple(letters))
        hooks = "".join(rng.choice("+-") for _ in range(2 * n))
        feet = tuple(((1, rng.randint(0, len(letters))), (i + 2, rng.randint(0, len(letters))))
                     for i in range(n))
        tq = ThetaQuotient("unknown", word, hooks, feet)
        try:
            hiura_construct(tq)
        except MultiBoundary:
            continue
        return tq
    raise RuntimeError("no admissible normal form found")  # pragma: no cover
