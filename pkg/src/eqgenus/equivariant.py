"""Equivariant genus reports for marked strongly invertible knots.

The inversion itself is never represented.  An input carries the knot (as
a 2-bridge slope or a diagram) and quotient-level data: the slope of the
constituent knot of the quotient theta-curve and, optionally, a band
presentation of a quotient spanning surface.

Lower bounds come from the band number of the quotient knot, upper bounds
from certified surfaces whose preimage is an invariant Seifert surface.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from . import cf, diagrams, surfaces
from .cf import Slope
from .diagrams import KnotDiagram
from .errors import (
    ConditionCFails,
    InconsistentInput,
    NoSurface,
    NonPositiveN,
    ParseError,
    UnknownClass,
    UnknownQuotient,
)
from .surfaces import BandPresentation

SCHEMA_VERSION = 1

KAKIMIZU_NOTE = (
    "exactness for 8_3 needs the classification of its minimal genus Seifert "
    "surfaces (Kakimizu: exactly two of genus 1); this is not computed here"
)

MARKED_COUNTS = {
    "trivial": 1,
    "torus": 2,
    "hyperbolic_no_period2": 2,
    "hyperbolic_cyclic_period2": 4,
    "hyperbolic_free_period2": 2,
    "hyperbolic_2bridge": 4,
}


@dataclass(frozen=True)
class MarkedSIKInput:
    family: str
    n: Optional[int] = None
    knot_slope: Optional[Slope] = None
    knot_diagram: Optional[KnotDiagram] = None
    quotient: Optional[Slope] = None  # None: unknown, 0/1: trivial
    surface: Optional[BandPresentation] = None
    fibered: bool = False
    notes: tuple[str, ...] = ()


@dataclass
class GenusReport:
    usual_genus: int
    eq_lower: Optional[int]
    eq_upper: Optional[int]
    exact: bool
    gap: int
    provenance: list[str] = field(default_factory=list)
    family: str = "custom"
    n: Optional[int] = None

    @property
    def eq_genus(self) -> Optional[int]:
        return self.eq_upper if self.exact else None

    def as_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "family": self.family,
            "n": self.n,
            "usual_genus": self.usual_genus,
            "eq_lower": self.eq_lower,
            "eq_upper": self.eq_upper,
            "exact": self.exact,
            "gap": self.gap,
            "provenance": list(self.provenance),
        }


# -- family inputs --------------------------------------------------------------

def kn_slopes(n: int) -> tuple[Slope, Slope]:
    """Slopes of K_n and of its quotient knot."""
    if n < 1:
        raise NonPositiveN(f"family index must be positive, got {n}")
    return cf.cf_eval((2, 4) * n), cf.cf_eval((4, 2) * n)


def kn_input(n: int) -> MarkedSIKInput:
    k, q = kn_slopes(n)
    bp = surfaces.hiura_construct(surfaces.kn_theta(n))
    return MarkedSIKInput("kn", n, knot_slope=k, quotient=q, surface=bp)


def eight_three_input() -> MarkedSIKInput:
    tq = surfaces.eight_three_theta()
    return MarkedSIKInput(
        "eight_three",
        knot_slope=Slope(4, 17),
        quotient=surfaces.quotient_slope(tq),
        surface=surfaces.hiura_construct(tq),
        notes=(KAKIMIZU_NOTE,),
    )


# -- bounds ----------------------------------------------------------------------

def usual_genus(inp: MarkedSIKInput) -> tuple[int, str]:
    if inp.knot_slope is not None:
        return cf.genus_2bridge(inp.knot_slope), f"usual genus: even expansion of {inp.knot_slope}"
    if inp.knot_diagram is not None:
        g = diagrams.seifert_genus(inp.knot_diagram)
        return g, "usual genus: Seifert algorithm on the supplied diagram (assumed minimal)"
    raise InconsistentInput("no knot slope or diagram supplied for the usual genus")


def eq_genus_lower(inp: MarkedSIKInput) -> int:
    if inp.quotient is None:
        raise UnknownQuotient("the slope of the quotient knot was not supplied")
    return cf.band_number(inp.quotient)


def eq_genus_upper(inp: MarkedSIKInput) -> int:
    if inp.surface is None:
        raise NoSurface("no quotient surface supplied")
    cert = surfaces.lift_certificate(inp.surface)
    if not cert.condition_c:
        raise ConditionCFails("the supplied quotient surface does not lift to an orientable surface")
    return cert.lift_genus


def report(inp: MarkedSIKInput) -> GenusReport:
    usual, how = usual_genus(inp)
    prov = [how]

    lower = None
    if inp.quotient is not None:
        lower = eq_genus_lower(inp)
        prov.append(f"lower bound: band number of quotient knot {inp.quotient}")
    elif not inp.fibered:
        raise UnknownQuotient("the slope of the quotient knot was not supplied")

    upper = None
    if inp.surface is not None:
        upper = eq_genus_upper(inp)
        prov.append(f"upper bound: lifted quotient surface with {len(inp.surface.bands)} bands")

    if upper is not None and upper < usual:
        raise InconsistentInput(f"certified invariant surface of genus {upper} is below the genus {usual}")
    if lower is not None and upper is not None and lower > upper:
        raise InconsistentInput(f"lower bound {lower} exceeds certified upper bound {upper}")

    if inp.fibered:
        if lower is not None and lower > usual:
            raise InconsistentInput(f"fibered knot of genus {usual} with quotient band number {lower}")
        prov.append("fibered rule: equivariant genus equals the genus")
        lower = upper = usual
        exact = True
    else:
        exact = upper is not None and lower == upper
        if exact:
            prov.append("exact: bounds agree")
        else:
            prov.append("inconclusive: bounds disagree and no rule applies")
    prov.extend(inp.notes)

    gap = upper - usual if exact else max(0, lower - usual)
    return GenusReport(usual, lower, upper, exact, gap, prov, inp.family, inp.n)


def marked_sik_count(tag: str) -> int:
    try:
        return MARKED_COUNTS[tag]
    except KeyError:
        raise UnknownClass(f"unknown knot class {tag!r}; expected one of {', '.join(MARKED_COUNTS)}") from None


# -- JSON I/O --------------------------------------------------------------------

INPUT_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "family": {"enum": ["custom", "kn", "eight_three"]},
        "n": {"type": "integer", "minimum": 1},
        "knot": {"type": "string"},
        "braid": {"type": "string"},
        "plat": {"type": "boolean"},
        "quotient": {"type": ["string", "null"]},
        "surface": {"type": "string"},
        "theta": {"type": "string"},
        "fibered": {"type": "boolean"},
    },
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "family", "n", "usual_genus", "eq_lower", "eq_upper",
                 "exact", "gap", "provenance"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "family": {"type": "string"},
        "n": {"type": ["integer", "null"]},
        "usual_genus": {"type": "integer", "minimum": 0},
        "eq_lower": {"type": ["integer", "null"], "minimum": 0},
        "eq_upper": {"type": ["integer", "null"], "minimum": 0},
        "exact": {"type": "boolean"},
        "gap": {"type": "integer", "minimum": 0},
        "provenance": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}


def input_from_dict(data: dict, base: Union[str, Path, None] = None) -> MarkedSIKInput:
    """Build an input from its JSON form.

    ``surface`` and ``theta`` hold a band presentation or a theta normal
    form, either inline or as a path relative to ``base``.
    """
    import jsonschema

    try:
        jsonschema.validate(data, INPUT_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ParseError(f"invalid input record: {exc.message}") from None

    family = data.get("family", "custom")
    if family == "kn":
        if "n" not in data:
            raise ParseError("family 'kn' needs 'n'")
        return kn_input(data["n"])
    if family == "eight_three":
        return eight_three_input()

    def text(key):
        val = data[key]
        if "\n" in val:
            return val
        return (Path(base or ".") / val).read_text()

    knot_slope = cf.parse_slope(data["knot"]) if "knot" in data else None
    diagram = None
    if "braid" in data:
        b = diagrams.parse_braid(data["braid"])
        diagram = diagrams.plat_closure(b) if data.get("plat") else diagrams.braid_closure(b)

    quotient = None
    tq = surfaces.theta_loads(text("theta")) if "theta" in data else None
    q = data.get("quotient")
    if q is not None and q != "unknown":
        quotient = Slope(0, 1) if q == "trivial" else cf.parse_slope(q)
    elif tq is not None:
        quotient = surfaces.quotient_slope(tq)

    surface = None
    if "surface" in data:
        surface = surfaces.loads(text("surface"))
    elif tq is not None:
        surface = surfaces.hiura_construct(tq)

    return MarkedSIKInput("custom", None, knot_slope, diagram, quotient, surface,
                          bool(data.get("fibered", False)))


def load_input(path: Union[str, Path]) -> MarkedSIKInput:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return input_from_dict(data, path.parent)
