"""Homotopy string links: complete invariants from pure braid words, strand
deletion, Borromean coordinates, geometric realization and closure, and the
little-intervals actions on links and configuration-space maps."""

from .braid import BraidWord, a_ij, crossing_linking, delete_strand, format_braid, parse
from .errors import *  # noqa: F401,F403
from .freewords import FreeWord, artin_image, extract_conjugator
from .magnus import ReducedPolynomial, expand, kill_index
from .report import InvariantReport, build_report
from .stringlink import (
    InvariantVector,
    StringLink,
    borromean_coordinates,
    delta,
    delta_i,
    first_difference,
    identity,
    invariants,
    inverse,
    is_borromean,
    link_homotopy_equal,
    longitude,
    mu,
    stack,
)

__version__ = "0.1.0"
