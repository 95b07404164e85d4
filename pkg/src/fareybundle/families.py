"""Surface families of a punctured-torus bundle and their invariants.

Every incompressible class is indexed by path data: closed surfaces and
horizontal-boundary surfaces by tree axes, transverse-boundary surfaces by
minimal invariant Farey paths, by tree axes decorated with a bit vector up
to elementary equivalence, or by reversed special-graph paths.  The genus,
boundary count, slope and orientability of each family follow fixed formulas
in the period, the per-edge sign vector, and the left and right turn totals.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .graphs import Graph, turn_counts
from .paths import (
    InvariantPath,
    SpecialPath,
    SpecialVertex,
    axis_in_tree,
    derived_path,
    enumerate_minimal_invariant_farey,
    enumerate_special_paths,
)
from .slopes import (
    Matrix2,
    ParityClass,
    RLWord,
    Slope,
    TraceClass,
    compare_slopes,
    conjugate_to_nonneg,
    det_pair,
    matrix_power,
    mod2_permutation,
    rl_factorize,
    trace_class,
)


def sigma_vector(gamma: InvariantPath) -> tuple[int, ...]:
    """Per-edge signs of one period: +1 when the slope increases.

    Defined on a window normalized to nonnegative vertices, where the sign
    records whether the edge runs left or right across the diagram.
    """
    if not all(v.is_nonnegative() for v in gamma.window):
        raise ValueError("sign vector needs a nonnegative period window")
    return tuple(
        1 if compare_slopes(gamma.window[t + 1], gamma.window[t]) > 0 else -1
        for t in range(gamma.period)
    )


def fan_coefficient(u: Slope, v: Slope, w: Slope) -> int:
    """The integer kappa with w = +-u + 2*kappa*v as projective vectors.

    u and w must both be det-two neighbors of v; kappa measures how far the
    path swings around the fan of v between them.
    """
    du, dw = det_pair(u, v), det_pair(w, v)
    if abs(du) != 2 or abs(dw) != 2:
        raise ValueError("fan coefficient needs two det-two edges")
    sign = 1 if du == dw else -1
    if v.p != 0:
        kappa, rem = divmod(w.p - sign * u.p, 2 * v.p)
    else:
        kappa, rem = divmod(w.q - sign * u.q, 2 * v.q)
    if rem:
        raise AssertionError("fan relation must be integral")
    other = (w.q - sign * u.q) - 2 * kappa * v.q if v.p != 0 else (
        w.p - sign * u.p) - 2 * kappa * v.p
    if other:
        raise AssertionError("fan relation must hold in both coordinates")
    return kappa


@dataclass(frozen=True)
class EpsilonSymbol:
    """A per-edge bit vector with its sign vector, one period long."""

    bits: tuple[int, ...]
    sigma: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", tuple(self.bits))
        object.__setattr__(self, "sigma", tuple(self.sigma))
        if len(self.bits) != len(self.sigma):
            raise ValueError("bit and sign vectors must have equal length")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")
        if any(s not in (1, -1) for s in self.sigma):
            raise ValueError("signs must be +1 or -1")

    def weighted_sum(self) -> int:
        return sum(s * b for s, b in zip(self.sigma, self.bits))


def _move_junctions(gamma: InvariantPath) -> list[int]:
    """Junction indices (cyclic, by following edge) where the fan relation
    allows an elementary move; the wrap junction uses translated vertices."""
    k = gamma.period
    vs = gamma.window
    junctions = []
    for t in range(k):
        if t == 0:
            prev = gamma.monodromy.inverse()(vs[k - 1])
            triple = (prev, vs[0], vs[1])
        else:
            triple = (vs[t - 1], vs[t], vs[t + 1])
        if abs(fan_coefficient(*triple)) == 1:
            junctions.append(t)
    return junctions


def _apply_moves(bits: tuple[int, ...], sigma: tuple[int, ...],
                 junctions: Sequence[int]) -> list[tuple[int, ...]]:
    """All one-move neighbors of a bit vector.

    A junction couples the bits of its two incident edges: equal bits flip
    together when the incident signs disagree, unequal bits flip together
    when the signs agree.
    """
    k = len(bits)
    out = []
    for t in junctions:
        a, b = (t - 1) % k, t
        equal_bits = bits[a] == bits[b]
        equal_signs = sigma[a] == sigma[b]
        if equal_bits != equal_signs:
            flipped = list(bits)
            flipped[a] ^= 1
            flipped[b] ^= 1
            out.append(tuple(flipped))
    return out


def epsilon_orbits(gamma: InvariantPath) -> list[EpsilonSymbol]:
    """Canonical representatives of bit vectors up to elementary moves.

    Computed by full closure over the 2^k vectors, which stays small at the
    periods this package targets.
    """
    k = gamma.period
    if k > 20:
        raise ValueError("orbit closure over 2^k symbols needs k <= 20")
    sigma = sigma_vector(gamma)
    junctions = _move_junctions(gamma)
    seen: set[tuple[int, ...]] = set()
    reps: list[EpsilonSymbol] = []
    for bits in itertools.product((0, 1), repeat=k):
        if bits in seen:
            continue
        orbit = {bits}
        frontier = [bits]
        while frontier:
            current = frontier.pop()
            for neighbor in _apply_moves(current, sigma, junctions):
                if neighbor not in orbit:
                    orbit.add(neighbor)
                    frontier.append(neighbor)
        seen.update(orbit)
        reps.append(EpsilonSymbol(min(orbit), sigma))
    return sorted(reps, key=lambda sym: sym.bits)


class Family(str, Enum):
    BOUNDARY_TORUS = "boundary_torus"
    FIBER = "fiber"
    BOUNDARY_ANNULUS = "boundary_annulus"
    CLOSED_TREE_PATH = "tree_path_closed"
    HORIZONTAL_TREE_PATH = "tree_path_horizontal"
    ARC_TREE_PATH = "tree_path_arc"
    FAREY_PATH = "farey_path"
    FAREY_PATH_DOUBLE = "farey_path_double"
    SPECIAL_PATH = "special_path"


SADDLE_FAMILIES = {
    Family.CLOSED_TREE_PATH,
    Family.HORIZONTAL_TREE_PATH,
    Family.ARC_TREE_PATH,
    Family.FAREY_PATH,
    Family.FAREY_PATH_DOUBLE,
    Family.SPECIAL_PATH,
}


@dataclass(frozen=True)
class SurfaceClass:
    """One isotopy class: the indexing data plus its numerical invariants."""

    family: Family
    genus: int
    boundary_count: int
    orientable: bool
    slope: Optional[Slope] = None
    path: Optional[InvariantPath] = None
    special: Optional[SpecialPath] = None
    eps: Optional[EpsilonSymbol] = None
    parity: Optional[ParityClass] = None

    @property
    def period(self) -> int:
        if self.path is not None:
            return self.path.period
        if self.special is not None:
            return self.special.period
        return 0

    def saddle_count(self) -> int:
        """Saddles per period of the carrying schedule."""
        if self.family not in SADDLE_FAMILIES:
            return 0
        if self.family is Family.HORIZONTAL_TREE_PATH:
            return self.period + 1
        if self.family is Family.FAREY_PATH_DOUBLE:
            return 2 * self.period
        return self.period

    def key(self) -> tuple:
        path_key: tuple = ()
        if self.path is not None:
            path_key = self.path.canonical().window_key()
        elif self.special is not None:
            path_key = self.special.canonical_key()
        return (
            self.family.value,
            -1 if self.parity is None else int(self.parity),
            path_key,
            () if self.eps is None else self.eps.bits,
        )


def euler_characteristic(sc: SurfaceClass) -> int:
    """2 - 2g - b for orientable surfaces, 2 - g - b for nonorientable."""
    return 2 - (2 if sc.orientable else 1) * sc.genus - sc.boundary_count


def table_invariants(
    family: Family,
    path: InvariantPath | SpecialPath | None,
    eps: EpsilonSymbol | None = None,
    trace_sign: int = 1,
) -> tuple[int, int, Optional[Slope], bool]:
    """Evaluate the invariant table row: (genus, boundary, slope, orientable).

    Turn totals enter the Farey-path and special rows; the bit rows use the
    signed bit sum; negative monodromy trace shifts the turn balance by two
    and the bit sum by one.  Raises on undefined combinations.
    """
    if trace_sign not in (1, -1):
        raise ValueError("trace sign must be +1 or -1")
    shift = 0 if trace_sign > 0 else 1
    if family is Family.CLOSED_TREE_PATH:
        _require_path(path, Graph.DET2)
        return (2 + path.period, 0, None, False)
    if family is Family.HORIZONTAL_TREE_PATH:
        _require_path(path, Graph.DET2)
        return (2 + path.period, 1, Slope(1, 0), False)
    if family is Family.ARC_TREE_PATH:
        _require_path(path, Graph.DET2)
        if eps is None or len(eps.bits) != path.period:
            raise ValueError("bit vector must match the path period")
        n = eps.weighted_sum() + shift
        boundary = math.gcd(n, 2)
        return (path.period + 2 - boundary, boundary, Slope(n, 2), False)
    if family in (Family.FAREY_PATH, Family.FAREY_PATH_DOUBLE):
        _require_path(path, Graph.FAREY)
        left, right = turn_counts(path.window, path.monodromy)
        balance = left - right + 2 * shift
        slope = Slope(balance, 4)
        k = path.period
        if family is Family.FAREY_PATH_DOUBLE:
            if k % 2 == 0:
                raise ValueError("the neighborhood double exists only for odd periods")
            return (k, 2, slope, True)
        if k % 2 == 1:
            return (k + 1, 1, slope, False)
        boundary = math.gcd(balance, 4)
        return (k // 2 - boundary // 2 + 1, boundary, slope, True)
    if family is Family.SPECIAL_PATH:
        if not isinstance(path, SpecialPath):
            raise ValueError("special row needs a special path")
        balance = special_turn_balance(path)
        boundary = math.gcd(balance, 4) // 2
        slope = Slope(balance + 4 * shift, 8)
        return (path.period + 2 - boundary, boundary, slope, False)
    raise ValueError(f"no table row for family {family}")


def _require_path(path, graph: Graph) -> None:
    if not isinstance(path, InvariantPath) or path.graph is not graph:
        raise ValueError(f"this family is indexed by a {graph.value} path")


# Bit carried by the centrally symmetric saddle in an unmirrored frame,
# frozen against the endpoint tracing of the assembled complex.
SPECIAL_LIFT_BIT = 1


def _special_lift_bits(sp: SpecialPath) -> tuple[InvariantPath, tuple[int, ...]]:
    """The lift component of a special surface: its tree path and bit vector.

    Following the first arc through two periods crosses exactly the saddles
    that move the first coordinate; each is the centrally symmetric saddle
    seen in a frame that is either the reference one or its mirror, which
    the determinant signs of (moving, new, pivot) detect.
    """
    k = sp.period
    m2 = sp.monodromy * sp.monodromy
    track = [sp.vertex(0).first]
    bits = []
    for r in range(2 * k):
        a, b = sp.vertex(r), sp.vertex(r + 1)
        if a.first == b.first:
            continue
        u, w, pivot = a.first, b.first, a.second
        alpha_flip = (det_pair(w, pivot) > 0) != (det_pair(u, pivot) > 0)
        beta_flip = (det_pair(u, w) > 0) != (det_pair(u, pivot) > 0)
        mirrored = alpha_flip != beta_flip
        bits.append(SPECIAL_LIFT_BIT ^ (1 if mirrored else 0))
        track.append(w)
    path = InvariantPath(tuple(track), m2, Graph.DET2)
    if path.period != k:
        raise AssertionError("lift track must run one squared-monodromy period")
    return path, tuple(bits)


def special_turn_balance(sp: SpecialPath) -> int:
    """Left minus right turns of the boundary path of a special surface.

    The first-coordinate track, deduplicated, is one period of the squared
    monodromy's axis; the boundary of a neighborhood of the lift component
    is the derived path of that axis with the lift's bit vector.  The turn
    balance is always even.
    """
    path, bits = _special_lift_bits(sp)
    k = path.period
    shifted = None
    for j in range(-(4 * k + 17), 4 * k + 18):
        cand = path.translate(j)
        if all(v.is_nonnegative() for v in cand.window):
            shifted = (cand, j)
            break
    if shifted is None:
        raise ValueError("no nonnegative window for the lift track")
    cand, j = shifted
    rotated = bits[j % k:] + bits[: j % k]
    boundary = derived_path(cand, list(rotated))
    left, right = turn_counts(boundary.window, boundary.monodromy)
    balance = left - right
    if balance % 2:
        raise AssertionError("special turn balance must be even")
    return balance


@dataclass(frozen=True)
class ClassificationReport:
    """The full classification of one bundle, in deterministic order."""

    monodromy: Matrix2
    power: int
    trace_sign: int
    rl_word: RLWord
    mod2: tuple[int, int, int]
    closed: tuple[SurfaceClass, ...]
    horizontal_boundary: tuple[SurfaceClass, ...]
    transverse_boundary: tuple[SurfaceClass, ...]

    def all_surfaces(self) -> tuple[SurfaceClass, ...]:
        return self.closed + self.horizontal_boundary + self.transverse_boundary


def _bundle_monodromy(m: Matrix2, k: int) -> Matrix2:
    phi = matrix_power(m, k)
    if trace_class(phi) is not TraceClass.HYPERBOLIC:
        raise ValueError(
            f"monodromy must be hyperbolic, got {trace_class(phi).value} "
            f"(entry trace {phi.entry_trace()})"
        )
    return phi


def _fixed_classes(phi: Matrix2) -> list[ParityClass]:
    perm = mod2_permutation(phi)
    return [cls for cls in ParityClass if perm[cls] == cls]


def _normalized_axes(phi: Matrix2) -> dict[ParityClass, tuple[InvariantPath, InvariantPath]]:
    """Per fixed parity class: (axis in the input frame, nonnegative-frame
    axis used for sign and bit computations).

    The two frames differ by the conjugator onto the nonnegative form, which
    permutes parity classes by its own mod-2 action.
    """
    phi_n, conj = conjugate_to_nonneg(phi)
    conj_perm = mod2_permutation(conj)
    conj_inv = conj.inverse()
    axes = {}
    for cls in _fixed_classes(phi):
        cls_n = ParityClass(conj_perm[cls])
        axis_n = axis_in_tree(phi_n, cls_n).nonneg_window()
        window_user = tuple(conj_inv(v) for v in axis_n.window)
        axis_user = InvariantPath(window_user, phi, Graph.DET2)
        axes[cls] = (axis_user, axis_n)
    return axes


def classify_closed(m: Matrix2, k: int = 1) -> list[SurfaceClass]:
    """Closed incompressible classes: the boundary torus plus one closed
    nonorientable surface per parity class fixed by the mod-2 action."""
    phi = _bundle_monodromy(m, k)
    out = [SurfaceClass(Family.BOUNDARY_TORUS, genus=1, boundary_count=0,
                        orientable=True)]
    for cls, (axis_user, _) in sorted(_normalized_axes(phi).items()):
        genus, boundary, slope, orientable = table_invariants(
            Family.CLOSED_TREE_PATH, axis_user, trace_sign=phi.trace_sign())
        out.append(SurfaceClass(Family.CLOSED_TREE_PATH, genus, boundary,
                                orientable, slope, path=axis_user, parity=cls))
    return out


def classify_horizontal_boundary(m: Matrix2, k: int = 1) -> list[SurfaceClass]:
    """Classes whose boundary is parallel to the fiber boundary: the fiber,
    the boundary annulus, and one surface per fixed parity class."""
    phi = _bundle_monodromy(m, k)
    out = [
        SurfaceClass(Family.FIBER, genus=1, boundary_count=1, orientable=True,
                     slope=Slope(1, 0)),
        SurfaceClass(Family.BOUNDARY_ANNULUS, genus=0, boundary_count=2,
                     orientable=True),
    ]
    for cls, (axis_user, _) in sorted(_normalized_axes(phi).items()):
        genus, boundary, slope, orientable = table_invariants(
            Family.HORIZONTAL_TREE_PATH, axis_user, trace_sign=phi.trace_sign())
        out.append(SurfaceClass(Family.HORIZONTAL_TREE_PATH, genus, boundary,
                                orientable, slope, path=axis_user, parity=cls))
    return out


def classify_transverse(m: Matrix2, k: int = 1) -> list[SurfaceClass]:
    """Classes with nonempty boundary transverse to every fiber."""
    phi = _bundle_monodromy(m, k)
    tsign = phi.trace_sign()
    out: list[SurfaceClass] = []
    for path in enumerate_minimal_invariant_farey(phi):
        genus, boundary, slope, orientable = table_invariants(
            Family.FAREY_PATH, path, trace_sign=tsign)
        out.append(SurfaceClass(Family.FAREY_PATH, genus, boundary, orientable,
                                slope, path=path))
        if path.period % 2 == 1:
            genus, boundary, slope, orientable = table_invariants(
                Family.FAREY_PATH_DOUBLE, path, trace_sign=tsign)
            out.append(SurfaceClass(Family.FAREY_PATH_DOUBLE, genus, boundary,
                                    orientable, slope, path=path))
    for cls, (axis_user, axis_n) in sorted(_normalized_axes(phi).items()):
        for sym in epsilon_orbits(axis_n):
            genus, boundary, slope, orientable = table_invariants(
                Family.ARC_TREE_PATH, axis_n, eps=sym, trace_sign=tsign)
            out.append(SurfaceClass(Family.ARC_TREE_PATH, genus, boundary,
                                    orientable, slope, path=axis_user,
                                    eps=sym, parity=cls))
    phi_n, conj = conjugate_to_nonneg(phi)
    conj_inv = conj.inverse()
    for sp_n in enumerate_special_paths(phi_n):
        genus, boundary, slope, orientable = table_invariants(
            Family.SPECIAL_PATH, sp_n, trace_sign=tsign)
        window_user = tuple(
            SpecialVertex(conj_inv(v.first), conj_inv(v.second))
            for v in sp_n.window
        )
        sp_user = SpecialPath(window_user, phi)
        out.append(SurfaceClass(Family.SPECIAL_PATH, genus, boundary,
                                orientable, slope, special=sp_user))
    return sorted(out, key=lambda sc: sc.key())


def classify_all(m: Matrix2, k: int = 1) -> ClassificationReport:
    """Assemble the full classification with the no-duplicate invariant."""
    phi = _bundle_monodromy(m, k)
    closed = tuple(classify_closed(m, k))
    horizontal = tuple(classify_horizontal_boundary(m, k))
    transverse = tuple(classify_transverse(m, k))
    keys = [sc.key() for sc in closed + horizontal + transverse]
    if len(keys) != len(set(keys)):
        raise AssertionError("duplicate surface classes in the report")
    return ClassificationReport(
        monodromy=m,
        power=k,
        trace_sign=phi.trace_sign(),
        rl_word=rl_factorize(phi),
        mod2=mod2_permutation(phi),
        closed=closed,
        horizontal_boundary=horizontal,
        transverse_boundary=transverse,
    )
