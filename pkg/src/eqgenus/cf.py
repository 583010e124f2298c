"""Exact continued-fraction machinery for 2-bridge knots.

Expansions use the subtractive convention

    [a1, a2, ..., am] = 1 / (a1 - 1 / (a2 - ... - 1 / am))

and slopes are reduced fractions q/p with 0 < q < p (the unknot is 0/1).
Slopes are classified up to the classical unoriented rule: q/p and q'/p
give the same knot iff q' = q or q q' = 1 (mod p).  Mirror images are kept
apart.
"""

from __future__ import annotations

import re
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import (
    DivisionByZeroInTail,
    EmptyExpansion,
    NotAKnotSlope,
    ParseError,
    TrivialKnot,
)

Expansion = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Slope:
    """Reduced slope q/p of a 2-bridge knot or link."""

    q: int
    p: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"denominator must be positive, got {self.p}")
        if self.p == 1:
            if self.q != 0:
                raise ValueError("the trivial slope is 0/1")
        elif not 0 < self.q < self.p:
            raise ValueError(f"numerator must satisfy 0 < q < p, got {self.q}/{self.p}")
        if gcd(self.q, self.p) != 1:
            raise ValueError(f"{self.q}/{self.p} is not reduced")

    @classmethod
    def from_value(cls, value: Fraction) -> "Slope":
        """Normalize any rational to its slope, taking the numerator mod p."""
        p = value.denominator
        return cls(value.numerator % p, p)

    @property
    def is_knot(self) -> bool:
        return self.p % 2 == 1

    @property
    def is_trivial(self) -> bool:
        return self.p == 1

    def mirror(self) -> "Slope":
        return Slope((-self.q) % self.p, self.p)

    def __str__(self):
        return f"{self.q}/{self.p}"


def parse_slope(text: str) -> Slope:
    m = re.fullmatch(r"\s*(-?\d+)\s*/\s*(\d+)\s*", text)
    if not m:
        raise ParseError(f"expected a fraction 'q/p', got {text!r}")
    q, p = int(m.group(1)), int(m.group(2))
    if p == 0:
        raise ParseError(f"zero denominator in {text!r}")
    if gcd(q, p) != 1:
        raise ParseError(f"fraction {text!r} is not reduced")
    return Slope.from_value(Fraction(q, p))


def parse_expansion(text: str) -> Expansion:
    m = re.fullmatch(r"\s*\[(.*)\]\s*", text)
    if not m:
        raise ParseError(f"expected an expansion like '[2,4]', got {text!r}")
    body = m.group(1).strip()
    if not body:
        return ()
    try:
        return tuple(int(tok) for tok in body.split(","))
    except ValueError:
        raise ParseError(f"non-integer entry in {text!r}") from None


def format_expansion(e: Sequence[int]) -> str:
    return "[" + ",".join(str(a) for a in e) + "]"


def _require_knot(f: Slope):
    if not f.is_knot:
        raise NotAKnotSlope(f"{f} has even denominator and encodes a 2-component link")


# -- evaluation -------------------------------------------------------------

def cf_value(e: Sequence[int]) -> Fraction:
    """Signed exact value of ``e``, evaluated from the innermost entry out."""
    if not e:
        raise EmptyExpansion("cannot evaluate an empty expansion")
    tail = Fraction(0)
    for depth, a in enumerate(reversed(e)):
        denom = a - tail
        if denom == 0:
            raise DivisionByZeroInTail(
                f"tail vanishes at entry {len(e) - depth} of {format_expansion(e)}"
            )
        tail = 1 / denom
    return tail


def cf_eval(e: Sequence[int]) -> Slope:
    return Slope.from_value(cf_value(e))


# -- classification ---------------------------------------------------------

def equivalent(f1: Slope, f2: Slope) -> bool:
    """Same unoriented 2-bridge knot (mirrors are not identified)."""
    if f1.p != f2.p:
        return False
    p = f1.p
    return (f1.q - f2.q) % p == 0 or (f1.q * f2.q - 1) % p == 0


def class_members(f: Slope) -> tuple[Slope, ...]:
    """The slopes with denominator p equivalent to ``f`` (one or two of them)."""
    if f.is_trivial:
        return (f,)
    inv = pow(f.q, -1, f.p)
    return tuple(sorted({f, Slope(inv, f.p)}))


def canonical(f: Slope) -> Slope:
    """Representative with the smallest numerator."""
    return class_members(f)[0]


# -- even expansions and genus ----------------------------------------------

def _nearest_even(x: Fraction) -> int:
    lo = 2 * (x // 2)  # largest even integer <= x
    hi = lo + 2
    d_lo, d_hi = x - lo, hi - x
    if d_lo < d_hi:
        return lo
    if d_hi < d_lo:
        return hi
    # exact tie at an odd integer: keep the entry small
    return lo if abs(lo) <= abs(hi) else hi


def even_expansion(f: Slope) -> Expansion:
    """The all-even expansion whose value is congruent to q mod p.

    Exactly one of q and q - p is even; that signed representative has a
    unique expansion with even entries, found by repeatedly taking the even
    integer nearest to the reciprocal of the remainder.
    """
    _require_knot(f)
    if f.is_trivial:
        return ()
    v = Fraction(f.q if f.q % 2 == 0 else f.q - f.p, f.p)
    out = []
    while v != 0:
        a = _nearest_even(1 / v)
        out.append(a)
        v = a - 1 / v
    return tuple(out)


def genus_2bridge(f: Slope) -> int:
    """Genus of the 2-bridge knot, half the length of its even expansion."""
    return len(even_expansion(f)) // 2


# -- reduced expansions and band number -------------------------------------

def _signed_targets(f: Slope) -> list[tuple[int, int]]:
    # reduced expansions take values strictly inside (-1, 1)
    out = set()
    for m in class_members(f):
        out.add((m.q, m.p))
        out.add((m.q - m.p, m.p))
    return sorted(out)


def _first_entries(x: int, p: int) -> list[tuple[int, tuple[int, int] | None]]:
    """Possible leading entries for the value x/p with |x| < p, x != 0.

    Each option is ``(a, tail)`` where ``tail`` is the remaining value as a
    signed pair ``(x', p')`` or ``None`` when ``a`` is the last entry.
    """
    opts = []
    if abs(x) == 1:
        a = p * x
        if abs(a) >= 2:
            opts.append((a, None))
        return opts
    lo = p // x  # floor(p/x)
    for a in (lo, lo + 1):
        if abs(a) < 2:
            continue
        num = a * x - p  # tail = num / x, |tail| < 1 since a = floor or ceil
        if num == 0:
            continue
        den = abs(x)
        num = num if x > 0 else -num
        opts.append((a, (num, den)))
    return opts


@lru_cache(maxsize=None)
def _tails(x: int, p: int, budget: int) -> tuple[Expansion, ...]:
    found = []
    for a, tail in _first_entries(x, p):
        if tail is None:
            found.append((a,))
        elif budget >= 2:
            found.extend((a,) + rest for rest in _tails(tail[0], tail[1], budget - 1))
    return tuple(found)


def enumerate_reduced_expansions(f: Slope, max_len: int) -> list[Expansion]:
    """Every expansion with all |a_i| >= 2 and length <= max_len whose value
    is equivalent to ``f``, ordered by length then lexicographically.

    Exhaustive depth-first search over tail fractions.  Each step has at
    most two admissible entries (floor or ceiling of the reciprocal), so no
    entry bound is needed; entries never exceed p in absolute value.
    """
    _require_knot(f)
    if f.is_trivial or max_len < 1:
        return []
    found = set()
    for x, p in _signed_targets(f):
        found.update(_tails(x, p, max_len))
    return sorted(found, key=lambda e: (len(e), e))


def band_number(f: Slope) -> int:
    """Minimal first Betti number of a spanning surface of the 2-bridge knot.

    Breadth-first over tail fractions: the first level that contains a
    terminal entry gives the shortest reduced expansion in the class.
    """
    _require_knot(f)
    if f.is_trivial:
        return 0
    level = set(_signed_targets(f))
    length = 1
    while level:
        nxt = set()
        for x, p in level:
            for _, tail in _first_entries(x, p):
                if tail is None:
                    return length
                nxt.add(tail)
        level = nxt
        length += 1
    raise AssertionError(f"no reduced expansion found for {f}")  # pragma: no cover


def minimal_reduced_expansions(f: Slope) -> list[Expansion]:
    """All shortest reduced expansions in the class of ``f``."""
    _require_knot(f)
    if f.is_trivial:
        raise TrivialKnot("the unknot has no reduced expansion")
    return enumerate_reduced_expansions(f, band_number(f))


def ht_minimality_check(e: Sequence[int]) -> bool:
    """Sufficient test that ``e`` is a shortest expansion of its knot.

    ``e`` passes when no entry is 0 or +-1 and it contains neither a run
    2,3,...,3,2 (including 2,2) nor its negative.  A ``False`` answer is
    inconclusive; use :func:`band_number` to decide.
    """
    if not e:
        raise EmptyExpansion("check needs a nonempty expansion")
    if any(abs(a) <= 1 for a in e):
        return False
    n = len(e)
    for i, a in enumerate(e):
        if abs(a) != 2:
            continue
        s = 1 if a > 0 else -1
        j = i + 1
        while j < n and e[j] == 3 * s:
            j += 1
        if j < n and e[j] == 2 * s:
            return False
    return True
