import random
from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from eqgenus import cf, diagrams as dg
from eqgenus.cf import Slope
from eqgenus.diagrams import BraidWord
from eqgenus.errors import (
    MultiComponent,
    NonIntegerGenus,
    NonPositiveN,
    NotAKnotSlope,
    OddStrandCount,
    ParseError,
)

import oracles

TREFOIL = BraidWord(2, (1, 1, 1))
HOPF = BraidWord(2, (1, 1))


def even_expansions(max_p):
    for p in range(3, max_p + 1, 2):
        for q in range(1, p):
            if gcd(q, p) == 1:
                yield Slope(q, p), cf.even_expansion(Slope(q, p))


@st.composite
def knot_braid(draw, max_letters=12):
    n = draw(st.integers(2, 4))
    letters = draw(st.lists(st.integers(1, n - 1).flatmap(lambda g: st.sampled_from([g, -g])),
                            min_size=1, max_size=max_letters))
    b = BraidWord(n, tuple(letters))
    d = dg.braid_closure(b)
    assume(dg.component_count(d) == 1)
    return b


# -- braid words -------------------------------------------------------------------

def test_parse_braid():
    assert dg.parse_braid("4: 2,2,1,1,1,1") == BraidWord(4, (2, 2, 1, 1, 1, 1))
    assert dg.parse_braid("3:") == BraidWord(3, ())
    assert str(BraidWord(4, (2, -1))) == "4: 2,-1"


@pytest.mark.parametrize("bad", ["2 1,1", "2: 2", "2: 0", "1: 1", "3: a"])
def test_parse_braid_rejects(bad):
    with pytest.raises(ParseError):
        dg.parse_braid(bad)


# -- closures ------------------------------------------------------------------------

def test_braid_closure_examples():
    t = dg.braid_closure(TREFOIL)
    assert t.crossing_count == 3 and dg.component_count(t) == 1
    h = dg.braid_closure(HOPF)
    assert h.crossing_count == 2 and dg.component_count(h) == 2
    e = dg.braid_closure(BraidWord(3, ()))
    assert e.crossing_count == 0 and dg.component_count(e) == 3


def test_plat_closure_examples():
    # (s2^2 s1^4) plat-closes to a knot only with the shifted top capping
    k1 = dg.plat_closure(dg.kn_family_braid(1), top="shifted")
    assert k1.crossing_count == 6 and dg.component_count(k1) == 1
    assert dg.component_count(dg.plat_closure(BraidWord(4, ()))) == 2
    k2 = dg.plat_closure(dg.kn_family_braid(2), top="shifted")
    assert k2.crossing_count == 12 and dg.component_count(k2) == 1
    with pytest.raises(OddStrandCount):
        dg.plat_closure(BraidWord(3, (1,)))


@pytest.mark.parametrize("n", range(1, 7))
def test_kn_diagram(n):
    d = dg.kn_diagram(n)
    assert dg.component_count(d) == 1
    assert d.crossing_count == 6 * n
    assert dg.determinant(d) == cf.cf_eval((2, 4) * n).p
    assert dg.seifert_genus(d) == n


def test_kn_family_braid():
    assert dg.kn_family_braid(1) == BraidWord(4, (2, 2, 1, 1, 1, 1))
    assert len(dg.kn_family_braid(2).letters) == 12
    with pytest.raises(NonPositiveN):
        dg.kn_family_braid(0)


# -- Seifert smoothing ---------------------------------------------------------------

def test_seifert_smooth_examples():
    sd = dg.seifert_smooth(dg.braid_closure(TREFOIL))
    assert (sd.circle_count, sd.crossing_count, sd.arc_count) == (2, 3, 0)
    sd = dg.seifert_smooth(dg.KnotDiagram((), 1))
    assert (sd.circle_count, sd.crossing_count, sd.arc_count) == (1, 0, 0)
    with pytest.raises(MultiComponent):
        dg.seifert_smooth(dg.braid_closure(HOPF))


def test_trefoil_knotoid_cuts():
    d = dg.braid_closure(TREFOIL)
    seen = set()
    for e in d.edges():
        k = dg.knotoid_cut(d, e)
        sd = dg.seifert_smooth(k)
        assert sd.arc_count == 1 and sd.crossing_count == 3
        assert sd.circle_count in (1, 2)
        seen.add(sd.circle_count)
        # every edge lies on exactly one cycle or on the arc
        used = [x for c in sd.circles for x in c] + list(sd.arc)
        assert sorted(used) == sorted(k.edges())
    assert seen <= {1, 2}


def test_cut_strand_over_and_under():
    d = dg.braid_closure(TREFOIL)
    for e in d.edges():
        for over in (True, False):
            k = dg.cut_strand(d, e, over=over)
            assert k.kind == "knotoid"
            assert k.crossing_count < 3
            dg.seifert_smooth(k)


def test_braid_knotoid_counts():
    b = BraidWord(3, (1, 1, 2, 2))
    k = dg.braid_knotoid(b)
    sd = dg.seifert_smooth(k)
    assert (sd.circle_count, sd.crossing_count, sd.arc_count) == (2, 4, 1)
    with pytest.raises(ValueError):
        dg.braid_knotoid(BraidWord(3, (2,)))


def test_seifert_genus_examples():
    assert dg.seifert_genus(dg.braid_closure(TREFOIL)) == 1
    assert dg.seifert_genus(dg.KnotDiagram((), 1)) == 0
    assert dg.seifert_genus(dg.standard_2bridge_diagram((4, -4))) == cf.genus_2bridge(Slope(4, 17))


def test_knotoid_genus_only_for_even_betti():
    d = dg.braid_closure(TREFOIL)
    for e in d.edges():
        k = dg.knotoid_cut(d, e)
        b = dg.seifert_betti(k)
        assert b == 3 - dg.seifert_smooth(k).circle_count
        if b % 2:
            with pytest.raises(NonIntegerGenus):
                dg.seifert_genus(k)
        else:
            assert dg.seifert_genus(k) == b // 2


@settings(max_examples=200)
@given(knot_braid())
def test_euler_law(b):
    d = dg.braid_closure(b)
    sd = dg.seifert_smooth(d)
    assert (sd.crossing_count - sd.circle_count + 1) % 2 == 0


@settings(max_examples=200)
@given(knot_braid())
def test_smoothing_invariant_under_reversal(b):
    d = dg.orient(dg.braid_closure(b))
    assert dg.seifert_smooth(d).circle_count == dg.seifert_smooth(dg.reverse(d)).circle_count


@settings(max_examples=200)
@given(knot_braid())
def test_counts_independent_of_crossing_convention(b):
    d = dg.braid_closure(b)
    m = dg.mirror(d)
    assert dg.seifert_smooth(d) == dg.seifert_smooth(m)
    assert dg.writhe(m) == -dg.writhe(d)


# -- 2-bridge diagrams ------------------------------------------------------------------

@pytest.mark.parametrize("e, c", [((2, 4), 6), ((3,), 3), ((4, -4), 8)])
def test_standard_2bridge_examples(e, c):
    d = dg.standard_2bridge_diagram(e)
    assert d.crossing_count == c
    assert dg.component_count(d) == 1
    assert dg.determinant(d) == cf.cf_eval(e).p


def test_standard_2bridge_rejects_links():
    with pytest.raises(NotAKnotSlope):
        dg.standard_2bridge_diagram((2,))


def test_twobridge_braid_matches_kn():
    assert dg.twobridge_braid((2, 4) * 3) == dg.kn_family_braid(3)


def test_even_expansion_genus_all_small():
    for f, e in even_expansions(45):
        d = dg.standard_2bridge_diagram(e)
        assert dg.component_count(d) == 1
        assert dg.seifert_genus(d) == len(e) // 2, (f, e)


def test_genus_matches_alexander_oracle():
    # for 2-bridge knots the Alexander polynomial has breadth 2g
    for f, e in even_expansions(19):
        d = dg.standard_2bridge_diagram(e)
        assert oracles.alexander_breadth(dg.orient(d)) == 2 * cf.genus_2bridge(f), f


def test_determinant_matches_slope():
    rng = random.Random(3)
    for f, e in rng.sample(list(even_expansions(45)), 40):
        assert dg.determinant(dg.standard_2bridge_diagram(e)) == f.p


# -- serialization ---------------------------------------------------------------------

def test_dumps_loads_round_trip():
    for d in (dg.kn_diagram(2), dg.braid_closure(TREFOIL),
              dg.knotoid_cut(dg.braid_closure(TREFOIL), 1), dg.KnotDiagram((), 1)):
        back = dg.loads(dg.dumps(d))
        assert [c.slots for c in back.crossings] == [c.slots for c in d.crossings]
        assert back.loops == d.loops and back.ends == d.ends
        assert dg.seifert_smooth(back) == dg.seifert_smooth(d)


def test_loads_accepts_under_flag():
    text = "DIAGRAM v1 crossings=1 loops=0\n1 2 2 1 0\n"
    d = dg.loads(text)
    assert d.crossings[0].slots == (2, 2, 1, 1)


@pytest.mark.parametrize("text", [
    "",
    "DIAGRAM v9 crossings=0 loops=0\n",
    "DIAGRAM v1 crossings=2 loops=0\n1 2 2 1 1\n",
    "DIAGRAM v1 crossings=1 loops=0\n1 2 3 4 1\n",
    "DIAGRAM v1 crossings=1 loops=0\n1 2 3\n",
])
def test_loads_rejects(text):
    with pytest.raises(ParseError):
        dg.loads(text)
