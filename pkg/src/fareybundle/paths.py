"""Invariant edge-paths of a hyperbolic monodromy.

Three kinds of path index the surface families: translation axes in the
trees of the det-two forest, minimal invariant paths in the Farey diagram
(enumerated by choosing a side of every fan of the word's triangle strip),
and paths in the special graph of slope pairs that the monodromy reverses.
The derived-path construction interleaves a tree path with inserted Farey
vertices selected by a bit per edge.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graphs import (
    EdgePath,
    Graph,
    TREE_ROOTS,
    geodesic_in_What,
    is_minimal,
    tree_distance,
)
from .slopes import (
    Matrix2,
    ParityClass,
    Slope,
    TraceClass,
    det_pair,
    mod2_permutation,
    rl_factorize_with_frame,
    trace_class,
)


@dataclass(frozen=True)
class InvariantPath:
    """One period of a monodromy-invariant edge-path.

    The window holds k+1 vertices whose last entry is the monodromy image of
    the first; the full path is the bi-infinite extension by translation.
    Axes and enumerated Farey paths are minimal including the wrap junction;
    derived paths may not be, so minimality is checked only when requested.
    """

    window: tuple[Slope, ...]
    monodromy: Matrix2
    graph: Graph
    require_minimal: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "window", tuple(self.window))
        if len(self.window) < 2:
            raise ValueError("window needs at least one edge")
        EdgePath(self.window, self.graph)
        if self.monodromy(self.window[0]) != self.window[-1]:
            raise ValueError("window does not close up under the monodromy")
        if self.require_minimal and not self.is_minimal():
            raise ValueError("path is not minimal")

    @property
    def period(self) -> int:
        return len(self.window) - 1

    def vertex(self, i: int) -> Slope:
        """Vertex i of the bi-infinite path, the window translated."""
        k = self.period
        q, r = divmod(i, k)
        return self.monodromy.pow(q)(self.window[r])

    def extended(self, extra: int = 1) -> tuple[Slope, ...]:
        """The window followed by ``extra`` further translated vertices."""
        return tuple(self.vertex(i) for i in range(self.period + 1 + extra))

    def is_minimal(self) -> bool:
        """Minimality of the closed-up path, wrap junction included."""
        closed = EdgePath(self.extended(1), self.graph)
        return is_minimal(closed)

    def translate(self, j: int = 1) -> "InvariantPath":
        k = self.period
        window = tuple(self.vertex(i) for i in range(j, j + k + 1))
        return InvariantPath(window, self.monodromy, self.graph,
                             self.require_minimal)

    def canonical(self) -> "InvariantPath":
        """The translate starting at the smallest vertex of the path.

        Vertex sizes grow in both directions away from a minimal region, so
        scanning a bounded range of translates finds the global minimum.
        """
        k = self.period
        span = 2 * k + 8
        best_j = None
        best_key = None
        for j in range(-span, span + 1):
            v = self.vertex(j)
            key = (max(abs(v.p), abs(v.q)), abs(v.p) + abs(v.q), v.vector())
            if best_key is None or key < best_key:
                best_key, best_j = key, j
        return self.translate(best_j)

    def nonneg_window(self) -> "InvariantPath":
        """The first translate past the canonical one with all vertices in
        [0, infinity], the normalization the sign and bit conventions assume.

        Exists whenever the monodromy has nonnegative entries; raises
        otherwise.
        """
        path = self.canonical()
        for j in range(4 * self.period + 17):
            cand = path.translate(j)
            if all(v.is_nonnegative() for v in cand.window):
                return cand
        raise ValueError("no nonnegative period window found")

    def window_key(self) -> tuple:
        return tuple(v.vector() for v in self.window)


def axis_in_tree(m: Matrix2, cls: ParityClass) -> InvariantPath:
    """The translation axis of a hyperbolic matrix in one parity-class tree.

    Exists iff the mod-2 action fixes the class.  Found by midpoint descent:
    the midpoint of the geodesic from v to m(v) lies on the axis, after
    which the geodesic itself is one period.  The result is canonicalized so
    reruns from any seed agree.
    """
    if trace_class(m) is not TraceClass.HYPERBOLIC:
        raise ValueError("axis requires a hyperbolic matrix")
    if mod2_permutation(m)[cls] != cls:
        raise ValueError(f"mod-2 action does not fix parity class {cls}")
    v = TREE_ROOTS[cls]
    for _ in range(64):
        geo = geodesic_in_What(v, m(v)).vertices
        mid = geo[len(geo) // 2]
        if tree_distance(mid, m(mid)) >= len(geo) - 1:
            break  # no improvement, so v already realizes the minimum
        v = mid
    else:
        raise AssertionError("axis descent did not stabilize")
    window = geodesic_in_What(v, m(v)).vertices
    path = InvariantPath(window, m, Graph.DET2)
    try:
        return path.nonneg_window()
    except ValueError:
        return path.canonical()


@dataclass(frozen=True)
class _Fan:
    center: Slope
    interior: tuple[Slope, ...]


def _strip_fans(word_letters: Sequence[str]) -> list[_Fan]:
    """Fans of the triangle strip of a positive word, one per letter run.

    Walking the strip from the edge (1/0, 0/1), an alpha run fans around the
    current top vertex while the bottom rim advances, a beta run fans around
    the bottom vertex.  Interiors exclude the rim endpoints, which are the
    neighboring fan centers.
    """
    from .slopes import ALPHA, BETA

    top, bottom = Slope(1, 0), Slope(0, 1)
    prefix = Matrix2.identity()
    tops = [top]
    bottoms = [bottom]
    for letter in word_letters:
        prefix = prefix * (ALPHA if letter == "a" else BETA)
        tops.append(prefix(top))
        bottoms.append(prefix(bottom))
    fans = []
    i = 0
    n = len(word_letters)
    while i < n:
        j = i
        while j < n and word_letters[j] == word_letters[i]:
            j += 1
        if word_letters[i] == "a":
            center = tops[i]
            rim = bottoms[i : j + 1]
        else:
            center = bottoms[i]
            rim = tops[i : j + 1]
        fans.append(_Fan(center, tuple(rim[1:-1])))
        i = j
    return fans


def enumerate_minimal_invariant_farey(m: Matrix2) -> list[InvariantPath]:
    """All minimal invariant Farey paths of a hyperbolic matrix.

    Enumerates one side choice per fan of the word's strip (run along the
    fan center or along its rim), keeps the assignments that produce a valid
    minimal closed path, and deduplicates by translation.  Completeness at
    small periods is checked against bounded exhaustive search in the tests.
    """
    if trace_class(m) is not TraceClass.HYPERBOLIC:
        raise ValueError("path enumeration requires a hyperbolic matrix")
    word, frame = rl_factorize_with_frame(m)
    letters = list(word.letters())
    fans = _strip_fans(letters)
    word_matrix = word.matrix()
    results: dict[tuple, InvariantPath] = {}
    for mask in range(1 << len(fans)):
        vertices: list[Slope] = []
        for index, fan in enumerate(fans):
            if mask >> index & 1:
                vertices.extend(fan.interior)
            else:
                vertices.append(fan.center)
        if not vertices:
            continue
        window = [frame(v) for v in vertices]
        window.append(m(window[0]))
        try:
            path = InvariantPath(tuple(window), m, Graph.FAREY)
        except ValueError:
            continue
        key = path.canonical().window_key()
        results.setdefault(key, path.canonical())
    return [results[key] for key in sorted(results)]


@dataclass(frozen=True)
class SpecialVertex:
    """An ordered pair of slopes spanning a Farey edge."""

    first: Slope
    second: Slope

    def __post_init__(self) -> None:
        if abs(det_pair(self.first, self.second)) != 1:
            raise ValueError("special vertex coordinates must span a Farey edge")

    def swapped(self) -> "SpecialVertex":
        return SpecialVertex(self.second, self.first)

    def key(self) -> tuple:
        return (self.first.vector(), self.second.vector())


@dataclass(frozen=True)
class SpecialPath:
    """One period of an invariant path in the special graph, reversed by
    the monodromy.

    Each edge moves exactly one coordinate by a det-two step; the monodromy
    sends the window start to the swapped window end.  Both coordinate
    tracks, after deleting consecutive repeats, must be minimal tree paths.
    """

    window: tuple[SpecialVertex, ...]
    monodromy: Matrix2

    def __post_init__(self) -> None:
        object.__setattr__(self, "window", tuple(self.window))
        if len(self.window) < 2:
            raise ValueError("special window needs at least one edge")
        for a, b in zip(self.window, self.window[1:]):
            first_moves = a.first != b.first
            second_moves = a.second != b.second
            if first_moves == second_moves:
                raise ValueError("each special edge moves exactly one coordinate")
            if first_moves and abs(det_pair(a.first, b.first)) != 2:
                raise ValueError("moving coordinate must take a det-two step")
            if second_moves and abs(det_pair(a.second, b.second)) != 2:
                raise ValueError("moving coordinate must take a det-two step")
        for track in (self.first_track_extended(), self.second_track_extended()):
            deduped = _dedup(track)
            if len(deduped) < 2 or not is_minimal(EdgePath(deduped, Graph.DET2)):
                raise ValueError("coordinate track is not a minimal tree path")
        m = self.monodromy
        start, end = self.window[0], self.window[-1]
        if (m(start.first), m(start.second)) != (end.second, end.first):
            raise ValueError("monodromy must reverse the path with a swap")

    @property
    def period(self) -> int:
        return len(self.window) - 1

    @property
    def swap(self) -> bool:
        """Whether the monodromy reverses the path.  Always true here:
        unreversed invariant special paths carry disconnected surfaces,
        which stay out of scope."""
        return True

    def vertex(self, i: int) -> SpecialVertex:
        """Vertex i of the bi-infinite path via the swap translation."""
        k = self.period
        q, r = divmod(i, k)
        current = self.window[r]
        step = self.monodromy if q >= 0 else self.monodromy.inverse()
        for _ in range(abs(q)):
            current = SpecialVertex(step(current.second), step(current.first))
        return current

    def first_track_extended(self) -> tuple[Slope, ...]:
        """The first-coordinate track over two periods (2k+1 entries)."""
        k = self.period
        return tuple(self.vertex(i).first for i in range(2 * k + 1))

    def second_track_extended(self) -> tuple[Slope, ...]:
        k = self.period
        return tuple(self.vertex(i).second for i in range(2 * k + 1))

    def translate(self, j: int = 1) -> "SpecialPath":
        k = self.period
        window = tuple(self.vertex(i) for i in range(j, j + k + 1))
        return SpecialPath(window, self.monodromy)

    def negated(self) -> "SpecialPath":
        return SpecialPath(tuple(v.swapped() for v in self.window), self.monodromy)

    def window_key(self) -> tuple:
        return tuple(v.key() for v in self.window)

    def canonical_key(self) -> tuple:
        """Least anchored window over translations and the global sign.

        Translated windows never repeat, so the anchor is the vertex of
        least size; sizes grow away from a minimal region, which a bounded
        scan is guaranteed to contain.
        """
        span = 6 * self.period + 24
        best = None
        for base in (self, self.negated()):
            for j in range(-span, span + 1):
                v = base.vertex(j)
                size = max(abs(v.first.p), abs(v.first.q),
                           abs(v.second.p), abs(v.second.q))
                key = (size, base.translate(j).window_key())
                if best is None or key < best:
                    best = key
        return best


def _dedup(track: Sequence[Slope]) -> tuple[Slope, ...]:
    out: list[Slope] = []
    for v in track:
        if not out or out[-1] != v:
            out.append(v)
    return tuple(out)


def enumerate_special_paths(m: Matrix2) -> list[SpecialPath]:
    """All minimal special-graph paths the monodromy reverses, up to
    translation and global sign.

    Such a path interleaves the two axes of m^2 in the pair of parity
    classes the mod-2 action swaps; the swap pins the second track to the
    image of the first, so the search runs over start offsets and
    interleaving orders, pruned by the Farey-pairing condition.
    """
    if trace_class(m) is not TraceClass.HYPERBOLIC:
        raise ValueError("path enumeration requires a hyperbolic matrix")
    perm = mod2_permutation(m)
    swapped = [cls for cls in ParityClass if perm[cls] != cls and perm[perm[cls]] == cls]
    if not swapped:
        return []
    cls_i = min(swapped)
    m2 = m * m
    axis = axis_in_tree(m2, cls_i)
    length = axis.period

    def track_a(s: int) -> Slope:
        return axis.vertex(s)

    def track_b(t: int) -> Slope:
        return m(axis.vertex(t))

    def pair_ok(s: int, t: int) -> bool:
        return abs(det_pair(track_a(s), track_b(t))) == 1

    found: dict[tuple, SpecialPath] = {}
    k = length
    for t0 in range(length):
        for s0 in range(t0, t0 + k + 1):
            if not pair_ok(s0, t0):
                continue
            target = (t0 + k, s0)
            stack = [(s0, t0, [(s0, t0)])]
            while stack:
                s, t, states = stack.pop()
                steps_left = k - (len(states) - 1)
                need_s = target[0] - s
                need_t = target[1] - t
                if need_s < 0 or need_t < 0 or need_s + need_t != steps_left:
                    continue
                if steps_left == 0:
                    window = tuple(
                        SpecialVertex(track_a(si), track_b(ti)) for si, ti in states
                    )
                    try:
                        path = SpecialPath(window, m)
                    except ValueError:
                        continue
                    found.setdefault(path.canonical_key(), path)
                    continue
                if need_s > 0 and pair_ok(s + 1, t):
                    stack.append((s + 1, t, states + [(s + 1, t)]))
                if need_t > 0 and pair_ok(s, t + 1):
                    stack.append((s, t + 1, states + [(s, t + 1)]))
    return [found[key] for key in sorted(found)]


def derived_path(gamma: InvariantPath, eps: Sequence[int]) -> InvariantPath:
    """The invariant Farey path determined by a tree path and a bit vector.

    Between consecutive tree vertices the construction inserts half the
    difference (bit 0) or half the sum (bit 1) of their integer vectors;
    either choice pairs with both endpoints at determinant one.  Valid for
    windows normalized to nonnegative vertices.  The result need not be
    minimal.
    """
    if gamma.graph is not Graph.DET2:
        raise ValueError("derived paths start from a det-two tree path")
    if len(eps) != gamma.period:
        raise ValueError("bit vector length must equal the path period")
    if any(bit not in (0, 1) for bit in eps):
        raise ValueError("bits must be 0 or 1")
    if not all(v.is_nonnegative() for v in gamma.window):
        raise ValueError("window must be normalized to nonnegative vertices")
    vs = gamma.window
    out: list[Slope] = [vs[0]]
    for t in range(gamma.period):
        a, b = vs[t].vector(), vs[t + 1].vector()
        if eps[t] == 0:
            mid = Slope((b[0] - a[0]) // 2, (b[1] - a[1]) // 2)
        else:
            mid = Slope((b[0] + a[0]) // 2, (b[1] + a[1]) // 2)
        out.append(mid)
        out.append(vs[t + 1])
    return InvariantPath(tuple(out), gamma.monodromy, Graph.FAREY,
                         require_minimal=False)


def delete_inserted(path: InvariantPath) -> tuple[Slope, ...]:
    """Drop the odd-index vertices of a derived path, recovering its source."""
    return path.window[::2]


def gamma1_prime(sp: SpecialPath) -> tuple[Slope, ...]:
    """The first-coordinate track over a double period, repeats included.

    The track is invariant under the square of the monodromy; its raw length
    is twice the special period, and deleting consecutive repeats leaves the
    axis of the square (see ``gamma1_prime_path``).
    """
    return sp.first_track_extended()


def gamma2_prime(sp: SpecialPath) -> tuple[Slope, ...]:
    """The companion track, the monodromy image of ``gamma1_prime``."""
    return sp.second_track_extended()


def gamma1_prime_path(sp: SpecialPath) -> InvariantPath:
    """The deduplicated first track as an invariant tree path of m^2."""
    m2 = sp.monodromy * sp.monodromy
    deduped = _dedup(gamma1_prime(sp))
    return InvariantPath(deduped, m2, Graph.DET2)
