"""Incompressible surfaces in the torus-product, the solid torus, and lens
spaces.

In all three pieces the nonorientable classes are governed by minimal paths
in the det-two forest: the genus is the edge count of the geodesic between
the boundary slopes (from the meridian slope for the solid torus and lens
spaces), and a lens space contains an incompressible surface exactly when
its order is even.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .graphs import geodesic_in_What, tree_distance
from .slopes import ParityClass, Slope, det_pair, parity_class

MERIDIAN = Slope(1, 0)


@dataclass(frozen=True)
class ProductSurface:
    """A nonorientable class in the thickened torus, pinned by its two
    boundary slopes, its genus, and a residual Z/2 marker.

    The marker distinguishes the two classes sharing the same slopes when
    isotopies fix the boundary; it is carried as a tag only.
    """

    slope0: Slope
    slope1: Slope
    genus: int
    z2_marker: int
    boundary_count: int = 2

    def __post_init__(self) -> None:
        if self.slope0 == self.slope1:
            raise ValueError("the two boundary slopes must differ")
        if det_pair(self.slope0, self.slope1) % 2 != 0:
            raise ValueError("boundary slopes must pair evenly")
        if self.z2_marker not in (0, 1):
            raise ValueError("marker must be 0 or 1")


@dataclass(frozen=True)
class PieceSurface:
    """A classified surface in a solid torus or lens space."""

    slope: Slope
    genus: int
    boundary_count: int
    orientable: bool
    boundary_compressible: bool


def classify_t2xI(s0: Slope, s1: Slope) -> list[ProductSurface]:
    """The nonorientable classes spanning two distinct even-pairing slopes.

    There are exactly two, distinguished by the Z/2 marker; both have genus
    equal to the length of the tree geodesic between the slopes.
    """
    if s0 == s1:
        raise ValueError("the two boundary slopes must differ")
    if det_pair(s0, s1) % 2 != 0:
        raise ValueError(
            "no nonorientable spanning surface: the slopes pair oddly"
        )
    genus = tree_distance(s0, s1)
    return [ProductSurface(s0, s1, genus, marker) for marker in (0, 1)]


def classify_solid_torus(s: Slope) -> PieceSurface:
    """The incompressible, non-boundary-parallel class of one boundary slope.

    Defined for slopes with even denominator; the genus is the distance to
    the meridian disk's slope, and any positive genus forces the surface to
    be nonorientable and boundary-compressible.
    """
    if parity_class(s) is not ParityClass.EVEN_DEN:
        raise ValueError("solid-torus slopes must have even denominator")
    genus = tree_distance(MERIDIAN, s)
    return PieceSurface(
        slope=s,
        genus=genus,
        boundary_count=1,
        orientable=genus == 0,
        boundary_compressible=genus > 0,
    )


def classify_lens(q: int, p: int) -> Optional[PieceSurface]:
    """The unique incompressible surface of L(q, p), if any.

    Odd q admits none; even q admits exactly one, nonorientable, of genus
    equal to the tree distance from the meridian slope to p/q.  The input is
    normalized to 0 < p < q.
    """
    if q < 1:
        raise ValueError("lens order q must be positive")
    p %= q
    if p == 0 and q != 1:
        raise ValueError("lens parameters must be coprime")
    if math.gcd(p, q) != 1:
        raise ValueError("lens parameters must be coprime")
    if q % 2 == 1:
        return None
    slope = Slope(p, q)
    genus = tree_distance(MERIDIAN, slope)
    return PieceSurface(
        slope=slope,
        genus=genus,
        boundary_count=0,
        orientable=False,
        boundary_compressible=False,
    )


def product_geodesic(s0: Slope, s1: Slope):
    """The tree geodesic realizing the product-piece genus, for display."""
    return geodesic_in_What(s0, s1)
