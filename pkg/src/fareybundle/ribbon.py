"""Combinatorial reconstruction of the saddle-built surfaces.

Each surface is rebuilt from its saddle schedule as strand lines (arcs or
circles per level interval) joined by saddle squares and closed up by the
monodromy return map.  Euler characteristic, boundary-circle count, and
orientability are recomputed from this model and compared against the
invariant table in the tests.

Arc endpoints are tracked as exact integer vectors on the fiber boundary;
a saddle slides the moving arc's endpoints to the side of the surviving
obstacles, which pins the transport except for the two one-arc templates,
whose slide side is the defining difference between bit zero and bit one.
The remaining sign freedoms (the mirror of the one-arc templates, the
orientation coupling of the two-arc saddle) are frozen once against the
known table rows.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .families import Family, SurfaceClass
from .slopes import Matrix2, Slope, det_pair

# One-arc saddle: bit one swaps the endpoint pair, bit zero preserves it.
EPS_SWAP_BIT = 1
# Orientation coupling of the two-arc saddle: the square constrains its two
# incoming strands with a flip, while the moving strand's orientation rides
# through unchanged.  Both bits are frozen against the orientation column of
# the invariant table (even-period path surfaces orientable, odd not).
CROSS_FLIP = 1
MOVING_FLIP = 0


class StrandKind(Enum):
    ARC = "arc"
    CIRCLE = "circle"


@dataclass(frozen=True)
class Strand:
    kind: StrandKind
    slope: Slope


class Template(Enum):
    CIRCLE_CIRCLE = "circle-circle"
    ARC_TYPE_0 = "arc-type-0"
    ARC_TYPE_1 = "arc-type-1"
    TWO_ARC_SPECIAL = "two-arc-special"
    ARC_PAIR = "arc-pair"
    PERIPHERAL_ADDING = "peripheral-adding"


@dataclass(frozen=True)
class SaddleEvent:
    """One saddle: the moving strand, its new slope, and the template data.

    ``pivot`` indexes the undisturbed strand whose endpoints (for arcs)
    obstruct the slide; ``bit`` selects between the two one-arc templates.
    A peripheral event moves nothing and spawns a horizontal boundary
    circle.
    """

    template: Template
    moving: Optional[int] = None
    new_slope: Optional[Slope] = None
    pivot: Optional[int] = None
    bit: Optional[int] = None


@dataclass(frozen=True)
class SaddleSchedule:
    """One period of saddles plus the monodromy return map."""

    initial: tuple[Strand, ...]
    events: tuple[SaddleEvent, ...]
    monodromy: Matrix2
    doubled: bool = False

    def saddle_count(self) -> int:
        factor = 2 if self.doubled else 1
        return factor * len(self.events)


@dataclass(frozen=True)
class RibbonSurface:
    """The assembled complex, reduced to its transport data.

    ``gluings`` hold (line, line, flip-bit) orientation identifications;
    ``forced_flip`` records a saddle whose two strands are parallel copies
    of one curve, which makes the complex one-sided outright.
    """

    strip_count: int
    saddle_count: int
    peripheral_count: int
    boundary_cycles: int
    gluings: tuple[tuple[int, int, int], ...]
    line_count: int
    forced_flip: bool
    doubled: bool = False


def _direction_transport(m: Matrix2, v: tuple[int, int]) -> tuple[int, int]:
    """Image of a slope vector under the represented element, sign included."""
    p, q = v
    return (m.sign * (m.a * p + m.b * q), m.sign * (m.c * p + m.d * q))


def _slide_parity_forced(old: Slope, new: Slope, obstacle: Slope) -> int:
    """Side-preserving slide: 0 keeps the canonical endpoint pairing, 1
    swaps it.  The moving endpoints cannot cross the obstacle endpoints, so
    the pairing is the one that keeps each endpoint on its side of the
    obstacle axis."""
    before = det_pair(old, obstacle)
    after = det_pair(new, obstacle)
    if before == 0 or after == 0:
        raise ValueError("saddle strands must have distinct slopes")
    return 0 if (before > 0) == (after > 0) else 1


def assemble(schedule: SaddleSchedule, fault: Optional[str] = None) -> RibbonSurface:
    """Run one period of the schedule and close it with the return map.

    Raises ValueError when the schedule does not close up (the returned
    slopes fail to match the initial ones).  ``fault`` may name a deliberate
    miscalibration; ``mirror-template`` mirrors the two one-arc saddle
    templates, which validation must detect.
    """
    mirror = fault == "mirror-template"
    if fault not in (None, "mirror-template"):
        raise ValueError(f"unknown fault {fault!r}")
    strands = list(schedule.initial)
    lines = list(range(len(strands)))
    next_line = len(strands)
    strip_count = len(strands)
    peripheral = 0
    forced_flip = False
    gluings: list[tuple[int, int, int]] = []
    transports: list[tuple[int, int, int]] = []  # (old line, new line, parity)
    for event in schedule.events:
        if event.template is Template.PERIPHERAL_ADDING:
            peripheral += 1
            continue
        idx = event.moving
        old = strands[idx]
        new = Strand(old.kind, event.new_slope)
        old_line = lines[idx]
        new_line = next_line
        next_line += 1
        strip_count += 1
        if event.template is Template.CIRCLE_CIRCLE:
            # The two saddling strands are a curve and its own translate,
            # which are parallel, so the square glues with a flip.
            forced_flip = True
            parity = 0
        elif event.template in (Template.ARC_TYPE_0, Template.ARC_TYPE_1):
            forced_flip = True  # one arc meets its own translate
            bit = event.bit ^ 1 if mirror else event.bit
            parity = 1 if bit == EPS_SWAP_BIT else 0
        elif event.template is Template.TWO_ARC_SPECIAL:
            forced_flip = True  # the moving arc again meets its translate
            pivot_slope = strands[event.pivot].slope
            parity = _slide_parity_forced(old.slope, new.slope, pivot_slope)
        elif event.template is Template.ARC_PAIR:
            pivot_slope = strands[event.pivot].slope
            parity = _slide_parity_forced(old.slope, new.slope, pivot_slope)
            gluings.append((old_line, lines[event.pivot], CROSS_FLIP))
        else:
            raise AssertionError(f"unhandled template {event.template}")
        orientation_parity = MOVING_FLIP if event.template is Template.ARC_PAIR else parity
        gluings.append((old_line, new_line, orientation_parity))
        transports.append((old_line, new_line, parity))
        strands[idx] = new
        lines[idx] = new_line
    # Return map: every final strand must land on an initial strand.  The
    # sign flag (the elliptic involution) swaps arc endpoints, which the
    # boundary tracing must see, but it does not change sides of the strips,
    # so the orientation gluing uses the entry transport alone.
    inverse = schedule.monodromy.inverse()
    wrap: dict[int, tuple[int, int]] = {}
    matched: set[int] = set()
    for idx, strand in enumerate(strands):
        vec = _direction_transport(inverse, strand.slope.vector())
        glued = Slope(*vec)
        target = next(
            (j for j, init in enumerate(schedule.initial)
             if init.slope == glued and init.kind == strand.kind
             and j not in matched),
            None,
        )
        if target is None:
            raise ValueError("schedule does not close up under the return map")
        matched.add(target)
        parity = 0 if vec == glued.vector() else 1
        orientation_parity = parity if inverse.sign > 0 else parity ^ 1
        wrap[lines[idx]] = (target, parity)
        gluings.append((lines[idx], target, orientation_parity))
    boundary_cycles = _trace_boundary(schedule, transports, wrap)
    surface = RibbonSurface(
        strip_count=strip_count,
        saddle_count=len(schedule.events),
        peripheral_count=peripheral,
        boundary_cycles=boundary_cycles,
        gluings=tuple(gluings),
        line_count=next_line,
        forced_flip=forced_flip,
        doubled=schedule.doubled,
    )
    return surface


def _trace_boundary(
    schedule: SaddleSchedule,
    transports: list[tuple[int, int, int]],
    wrap: dict[int, tuple[int, int]],
) -> int:
    """Count boundary circles by following arc endpoints around the period.

    An endpoint is (line, sign); a saddle consuming its line moves it with
    the slide parity, the return map sends it to the matched initial line
    with the exact transport sign.  Boundary circles are the orbits of the
    composed first-return map.
    """
    arc_indices = [i for i, s in enumerate(schedule.initial)
                   if s.kind is StrandKind.ARC]
    transport_map = {old: (new, parity) for old, new, parity in transports}
    ends = [(i, sign) for i in arc_indices for sign in (1, -1)]

    def first_return(end: tuple[int, int]) -> tuple[int, int]:
        line, sign = end
        while line in transport_map:
            line, parity = transport_map[line][0], transport_map[line][1]
            if parity:
                sign = -sign
        target, parity = wrap[line]
        return (target, -sign if parity else sign)

    remaining = set(ends)
    cycles = 0
    while remaining:
        start = min(remaining)
        current = start
        while True:
            remaining.discard(current)
            current = first_return(current)
            if current == start:
                break
        cycles += 1
    return cycles


def euler_char(surface: RibbonSurface) -> int:
    """Each saddle is an index-one critical point and the schedule has no
    extrema, so one period contributes minus the saddle count."""
    chi = -surface.saddle_count
    return 2 * chi if surface.doubled else chi


def boundary_count(surface: RibbonSurface) -> int:
    base = surface.boundary_cycles + surface.peripheral_count
    # The neighborhood double of a bounded surface doubles every boundary
    # circle: a boundary collar is an annulus, so each circle lifts twice.
    return 2 * base if surface.doubled else base


def is_connected(surface: RibbonSurface) -> bool:
    parent = list(range(surface.line_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, _ in surface.gluings:
        parent[find(a)] = find(b)
    roots = {find(x) for x in range(surface.line_count)}
    return len(roots) <= 1


def is_orientable(surface: RibbonSurface) -> bool:
    """Propagate a transverse orientation across all gluings.

    A forced flip (a saddle whose strands are parallel translates of one
    curve) is an immediate obstruction; otherwise the flip bits must form a
    trivial cocycle, checked by parity union-find.  The orientation double
    used for the neighborhood family is orientable by construction.
    """
    if not is_connected(surface):
        raise ValueError("orientability is defined for connected complexes")
    if surface.doubled:
        return True
    if surface.forced_flip:
        return False
    parent = list(range(surface.line_count))
    parity = [0] * surface.line_count

    def find(x: int) -> tuple[int, int]:
        if parent[x] == x:
            return x, 0
        root, par = find(parent[x])
        parent[x] = root
        parity[x] ^= par
        return root, parity[x]

    for a, b, flip in surface.gluings:
        ra, pa = find(a)
        rb, pb = find(b)
        if ra == rb:
            if pa ^ pb != flip:
                return False
        else:
            parent[ra] = rb
            parity[ra] = pa ^ pb ^ flip
    return True


def schedule_of(sc: SurfaceClass) -> SaddleSchedule:
    """The saddle schedule of a saddle-built surface class.

    Runs the window of the indexing path once; the wrap is the bundle's
    return map.  Trivial families (the boundary torus, the fiber, and the
    boundary annulus) carry no schedule.
    """
    family = sc.family
    if family in (Family.BOUNDARY_TORUS, Family.FIBER, Family.BOUNDARY_ANNULUS):
        raise ValueError(f"{family.value} has no saddle schedule")
    phi = sc.path.monodromy if sc.path is not None else sc.special.monodromy
    if family in (Family.CLOSED_TREE_PATH, Family.HORIZONTAL_TREE_PATH):
        window = sc.path.window
        events = []
        if family is Family.HORIZONTAL_TREE_PATH:
            events.append(SaddleEvent(Template.PERIPHERAL_ADDING))
        for t in range(1, len(window)):
            events.append(SaddleEvent(Template.CIRCLE_CIRCLE, moving=0,
                                      new_slope=window[t]))
        return SaddleSchedule(
            (Strand(StrandKind.CIRCLE, window[0]),), tuple(events), phi)
    if family is Family.ARC_TREE_PATH:
        window = sc.path.window
        events = []
        for t in range(1, len(window)):
            bit = sc.eps.bits[t - 1]
            template = Template.ARC_TYPE_1 if bit else Template.ARC_TYPE_0
            events.append(SaddleEvent(template, moving=0,
                                      new_slope=window[t], bit=bit))
        return SaddleSchedule(
            (Strand(StrandKind.ARC, window[0]),), tuple(events), phi)
    if family in (Family.FAREY_PATH, Family.FAREY_PATH_DOUBLE):
        path = sc.path
        k = path.period
        extended = path.extended(1)  # v_0 .. v_{k+1}
        strands = (Strand(StrandKind.ARC, extended[0]),
                   Strand(StrandKind.ARC, extended[1]))
        events = []
        for t in range(1, k + 1):
            moving = (t - 1) % 2
            pivot = t % 2
            events.append(SaddleEvent(Template.ARC_PAIR, moving=moving,
                                      new_slope=extended[t + 1], pivot=pivot))
        return SaddleSchedule(strands, tuple(events), phi,
                              doubled=family is Family.FAREY_PATH_DOUBLE)
    if family is Family.SPECIAL_PATH:
        sp = sc.special
        window = sp.window
        strands = (Strand(StrandKind.ARC, window[0].first),
                   Strand(StrandKind.ARC, window[0].second))
        events = []
        for t in range(1, len(window)):
            prev, cur = window[t - 1], window[t]
            if prev.first != cur.first:
                events.append(SaddleEvent(Template.TWO_ARC_SPECIAL, moving=0,
                                          new_slope=cur.first, pivot=1))
            else:
                events.append(SaddleEvent(Template.TWO_ARC_SPECIAL, moving=1,
                                          new_slope=cur.second, pivot=0))
        return SaddleSchedule(strands, tuple(events), phi)
    raise ValueError(f"no schedule for family {family}")
