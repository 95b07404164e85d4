"""The Farey diagram and its determinant-two forest.

Two graphs share the vertex set Q + {infinity}: the Farey diagram joins
slopes whose pairing has determinant +-1, and the det-two graph joins slopes
with pairing +-2.  The det-two graph splits into three trees, one per parity
class, which makes geodesics unique; they are computed by a Euclidean-style
descent toward small root vertices and cross-checked against a brute-force
breadth-first oracle in the tests.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence

from .slopes import (
    Matrix2,
    ParityClass,
    Slope,
    det_pair,
    parity_class,
)


class Graph(Enum):
    FAREY = "farey"  # determinant +-1 edges
    DET2 = "det2"    # determinant +-2 edges, a forest of three trees


TREE_ROOTS = {
    ParityClass.BOTH_ODD: Slope(1, 1),
    ParityClass.EVEN_DEN: Slope(1, 0),
    ParityClass.EVEN_NUM: Slope(0, 1),
}


def adjacent(s1: Slope, s2: Slope, graph: Graph) -> bool:
    """True iff the two slopes span an edge of the requested graph."""
    target = 1 if graph is Graph.FAREY else 2
    return abs(det_pair(s1, s2)) == target


@dataclass(frozen=True)
class EdgePath:
    """A vertex sequence whose consecutive pairs are edges of one graph.

    Paths in the det-two graph must stay inside a single parity class.
    """

    vertices: tuple[Slope, ...]
    graph: Graph

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("a path needs at least one vertex")
        object.__setattr__(self, "vertices", tuple(self.vertices))
        for u, v in zip(self.vertices, self.vertices[1:]):
            if not adjacent(u, v, self.graph):
                raise ValueError(f"{u} and {v} are not adjacent in {self.graph.value}")
        if self.graph is Graph.DET2:
            classes = {parity_class(v) for v in self.vertices}
            if len(classes) > 1:
                raise ValueError("det-two paths cannot change parity class")

    def __len__(self) -> int:
        """Edge count of the path."""
        return len(self.vertices) - 1

    def reversed(self) -> "EdgePath":
        return EdgePath(tuple(reversed(self.vertices)), self.graph)


def det2_neighbor_base(s: Slope) -> tuple[int, int]:
    """The canonical reduced solution (c0, d0) of p*d - q*c = 2.

    All det-two neighbors of s are (c0 + 2k*p) / (d0 + 2k*q); the base is
    normalized into the window 0 <= d0 < 2q (0 <= c0 < 2p for the slope at
    infinity) and chosen coprime, which determinism requires.
    """
    p, q = s.vector()
    if q == 0:
        return (1, 2)
    # Extended gcd: p*x + q*y = 1, then (c, d) = (-2y, 2x).
    x, y = _bezout(p, q)
    c, d = -2 * y, 2 * x
    t = -(d // q)
    c, d = c + t * p, d + t * q
    if not 0 <= d < 2 * q:
        shift = 1 if d < 0 else -1
        c, d = c + shift * p, d + shift * q
    for cand_c, cand_d in ((c, d), (c + p, d + q)):
        if math.gcd(abs(cand_c), abs(cand_d)) == 1 and 0 <= cand_d < 2 * q:
            return (cand_c, cand_d)
    raise AssertionError(f"no reduced base neighbor for {s}")


def det2_neighbors(s: Slope, ks: Iterable[int]) -> list[Slope]:
    """Det-two neighbors (c0 + 2k*p)/(d0 + 2k*q) for k in the given range."""
    p, q = s.vector()
    c0, d0 = det2_neighbor_base(s)
    return [Slope(c0 + 2 * k * p, d0 + 2 * k * q) for k in ks]


def det2_neighbors_bounded(s: Slope, bound: int) -> list[Slope]:
    """All det-two neighbors with |numerator| and |denominator| <= bound."""
    p, q = s.vector()
    c0, d0 = det2_neighbor_base(s)
    ranges = []
    for base, step in ((c0, 2 * p), (d0, 2 * q)):
        if step != 0:
            lo = -(bound + base) / step
            hi = (bound - base) / step
            if lo > hi:
                lo, hi = hi, lo
            ranges.append((lo, hi))
        elif abs(base) > bound:
            return []
    lo = max(r[0] for r in ranges)
    hi = min(r[1] for r in ranges)
    result = []
    for k in range(math.ceil(lo), math.floor(hi) + 1):
        cand = Slope(c0 + 2 * k * p, d0 + 2 * k * q)
        if abs(cand.p) <= bound and abs(cand.q) <= bound:
            result.append(cand)
    return result


def farey_neighbors_bounded(s: Slope, bound: int) -> list[Slope]:
    """All Farey neighbors of s with |numerator| and |denominator| <= bound.

    The neighbors form the single family (c0 + k*p)/(d0 + k*q); the det -1
    solutions are the projective negatives of the det +1 ones, so one family
    covers both.
    """
    p, q = s.vector()
    x, y = _bezout(p, q)
    c0, d0 = -y, x
    candidates: list[Slope] = []
    if q == 0:
        return [Slope(n, 1) for n in range(-bound, bound + 1)]
    ranges = []
    for base, step in ((c0, p), (d0, q)):
        if step != 0:
            lo, hi = sorted(((-bound - base) / step, (bound - base) / step))
            ranges.append((lo, hi))
        elif abs(base) > bound:
            return []
    lo = max(r[0] for r in ranges)
    hi = min(r[1] for r in ranges)
    for k in range(math.ceil(lo), math.floor(hi) + 1):
        cand = Slope(c0 + k * p, d0 + k * q)
        if abs(cand.p) <= bound and abs(cand.q) <= bound:
            candidates.append(cand)
    return candidates


def _bezout(p: int, q: int) -> tuple[int, int]:
    """Integers (x, y) with p*x + q*y = gcd(p, q) for coprime reduced input."""
    old_r, r = p, q
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_x, x = x, old_x - quotient * x
        old_y, y = y, old_y - quotient * y
    if old_r < 0:
        old_x, old_y = -old_x, -old_y
    return old_x, old_y


def _measure(s: Slope) -> tuple[int, int]:
    return (max(abs(s.p), abs(s.q)), abs(s.p) + abs(s.q))


def _descent_step(s: Slope) -> Slope:
    """The det-two neighbor minimizing (max |entry|, |p| + |q|), tie-broken
    lexicographically on the vector."""
    p, q = s.vector()
    c0, d0 = det2_neighbor_base(s)
    centers = set()
    if p != 0:
        centers.add(round(-c0 / (2 * p)))
    if q != 0:
        centers.add(round(-d0 / (2 * q)))
    best = None
    for center in centers:
        for k in range(center - 3, center + 4):
            cand = Slope(c0 + 2 * k * p, d0 + 2 * k * q)
            key = (_measure(cand), cand.vector())
            if best is None or key < best[0]:
                best = (key, cand)
    assert best is not None
    return best[1]


@lru_cache(maxsize=65536)
def root_path(s: Slope) -> tuple[Slope, ...]:
    """The descent path from s to the root of its parity-class tree.

    Descends strictly in the size measure; the one flat step allowed is the
    hop from the root's mirror (-1/1 in the odd-odd tree) onto the root.
    """
    root = TREE_ROOTS[parity_class(s)]
    path = [s]
    current = s
    while current != root:
        nxt = _descent_step(current)
        if _measure(nxt) >= _measure(current):
            if adjacent(current, root, Graph.DET2):
                path.append(root)
                break
            raise AssertionError(f"descent stalled at {current}")
        path.append(nxt)
        current = nxt
    return tuple(path)


def geodesic_in_What(u: Slope, v: Slope) -> EdgePath:
    """The unique minimal det-two path between two same-class slopes."""
    if parity_class(u) != parity_class(v):
        raise ValueError("slopes lie in different trees of the det-two forest")
    pu, pv = root_path(u), root_path(v)
    # Both descent paths end at the class root; strip the shared suffix but
    # keep the junction vertex, then splice.
    i, j = len(pu), len(pv)
    while i > 1 and j > 1 and pu[i - 2] == pv[j - 2]:
        i -= 1
        j -= 1
    if pu[i - 1] != pv[j - 1]:
        raise AssertionError("root paths must meet at the junction")
    vertices = pu[:i] + tuple(reversed(pv[: j - 1]))
    return EdgePath(vertices, Graph.DET2)


def tree_distance(u: Slope, v: Slope) -> int:
    """Edge count of the unique det-two geodesic."""
    return len(geodesic_in_What(u, v))


def bfs_geodesic_oracle(u: Slope, v: Slope, bound: int) -> EdgePath:
    """Shortest det-two path by breadth-first search on a bounded subgraph.

    Exhaustive over vertices with |p|, |q| <= bound; used as an independent
    oracle for the descent geodesics.  Raises if no path exists in bound.
    """
    if parity_class(u) != parity_class(v):
        raise ValueError("slopes lie in different trees of the det-two forest")
    for s in (u, v):
        if abs(s.p) > bound or abs(s.q) > bound:
            raise ValueError("endpoint outside the bounded subgraph")
    if u == v:
        return EdgePath((u,), Graph.DET2)
    parent: dict[Slope, Slope] = {u: u}
    queue = deque([u])
    while queue:
        current = queue.popleft()
        for nxt in det2_neighbors_bounded(current, bound):
            if nxt in parent:
                continue
            parent[nxt] = current
            if nxt == v:
                path = [v]
                while path[-1] != u:
                    path.append(parent[path[-1]])
                return EdgePath(tuple(reversed(path)), Graph.DET2)
            queue.append(nxt)
    raise ValueError(f"no path from {u} to {v} within bound {bound}")


def is_minimal(path: EdgePath) -> bool:
    """No backtracking; in the Farey diagram also no triangle shortcut.

    A Farey path that visits two vertices of one triangle in consecutive
    edges (|pairing| of the outer pair < 2) can be shortened, so it is not
    minimal.
    """
    vs = path.vertices
    for prev, nxt in zip(vs, vs[2:]):
        if prev == nxt:
            return False
        if path.graph is Graph.FAREY and abs(det_pair(prev, nxt)) < 2:
            return False
    return True


class TurnDirection(Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class Turn:
    direction: TurnDirection
    width: int

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError("turn width must be positive")


def turn_at(u: Slope, v: Slope, w: Slope) -> Turn:
    """Turn direction and fan width of the two-edge Farey path u, v, w.

    Normalizes by the orientation-preserving element sending u to 1/0 and v
    to 0/1; then w lands on +-1/width, and the sign fixes the direction.
    Left is the +1 side, the calibration that makes the slope table agree
    with the derived-path construction.
    """
    if not adjacent(u, v, Graph.FAREY) or not adjacent(v, w, Graph.FAREY):
        raise ValueError("turn needs two consecutive Farey edges")
    if w == u:
        raise ValueError("the two edges backtrack")
    a, c = u.vector()
    b, d = v.vector()
    if a * d - b * c != 1:
        a, c = -a, -c
    # g = [[a, b], [c, d]]^-1 sends u to 1/0 and v to 0/1.
    x = d * w.p - b * w.q
    y = -c * w.p + a * w.q
    image = Slope(x, y)
    if abs(image.p) != 1:
        raise AssertionError("normalized third vertex must be +-1/width")
    direction = TurnDirection.LEFT if image.p > 0 else TurnDirection.RIGHT
    return Turn(direction, image.q)


def turn_counts(window: Sequence[Slope], monodromy: Matrix2) -> tuple[int, int]:
    """Left and right turn totals over one period of an invariant Farey path.

    The window holds one period (k+1 vertices with the last the monodromy
    image of the first); the wrap turn uses the translated second vertex.
    Each vertex counts once, whatever the width of its fan.
    """
    vs = list(window)
    if len(vs) < 2:
        raise ValueError("window must contain at least one edge")
    if monodromy(vs[0]) != vs[-1]:
        raise ValueError("window does not close up under the monodromy")
    extended = vs + [monodromy(vs[1])]
    left = right = 0
    for i in range(1, len(extended) - 1):
        turn = turn_at(extended[i - 1], extended[i], extended[i + 1])
        if turn.direction is TurnDirection.LEFT:
            left += 1
        else:
            right += 1
    return left, right
