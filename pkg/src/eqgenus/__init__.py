"""Equivariant genera of marked strongly invertible knots."""

from .cf import Slope, band_number, cf_eval, even_expansion, genus_2bridge
from .equivariant import eq_genus_lower, eq_genus_upper, marked_sik_count, report
from .errors import EqGenusError
from .surfaces import BandPresentation, Band, hiura_construct, lift_certificate

__version__ = "0.1.0"

__all__ = [
    "Band",
    "BandPresentation",
    "EqGenusError",
    "Slope",
    "band_number",
    "cf_eval",
    "eq_genus_lower",
    "eq_genus_upper",
    "even_expansion",
    "genus_2bridge",
    "hiura_construct",
    "lift_certificate",
    "marked_sik_count",
    "report",
]
