"""Exact arithmetic on slopes and on SL(2,Z) matrices with a global sign.

Slopes are reduced fractions p/q together with 1/0 for infinity; they are the
vertices of every graph in this package.  Matrices act on slopes by
(p, q) -> (a*p + b*q, c*p + d*q) followed by renormalization.  Hyperbolic
matrices factor, up to conjugacy and sign, into positive words in the two
standard unipotent generators; the factorization here is exact and returns a
canonical cyclic representative.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import total_ordering
from typing import Iterator


@total_ordering
@dataclass(frozen=True)
class Slope:
    """A reduced slope p/q with q > 0, or the slope 1/0 at infinity.

    The constructor normalizes: it divides out the gcd and fixes the sign of
    the denominator, so two equal projective classes always compare equal.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise ValueError("slope 0/0 is undefined")
        g = math.gcd(abs(p), abs(q))
        p //= g
        q //= g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    def vector(self) -> tuple[int, int]:
        """The canonical integer vector (p, q) of this slope."""
        return (self.p, self.q)

    def is_nonnegative(self) -> bool:
        """True for slopes in [0, +infinity], the normalized strip region."""
        return self.p >= 0

    def __lt__(self, other: "Slope") -> bool:
        # Total order on Q with infinity greatest.
        if self.is_infinity:
            return False
        if other.is_infinity:
            return True
        return self.p * other.q < other.p * self.q

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


INFINITY = Slope(1, 0)
ZERO = Slope(0, 1)
ONE = Slope(1, 1)


def normalize_slope(p: int, q: int) -> Slope:
    """Reduce p/q to the canonical slope; raises on the zero pair."""
    return Slope(p, q)


def det_pair(s1: Slope, s2: Slope) -> int:
    """The pairing p1*q2 - p2*q1, computed on canonical representatives."""
    return s1.p * s2.q - s2.p * s1.q


class ParityClass(IntEnum):
    """The three parity classes of a reduced slope."""

    BOTH_ODD = 0
    EVEN_DEN = 1
    EVEN_NUM = 2


def parity_class(s: Slope) -> ParityClass:
    """Exactly one of: both entries odd, denominator even, numerator even."""
    if s.q % 2 == 0:
        return ParityClass.EVEN_DEN
    if s.p % 2 == 0:
        return ParityClass.EVEN_NUM
    return ParityClass.BOTH_ODD


def compare_slopes(s1: Slope, s2: Slope) -> int:
    """-1, 0 or +1 for the total order on Q + {infinity}, infinity greatest."""
    if s1 == s2:
        return 0
    return -1 if s1 < s2 else 1


class TraceClass(Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class Matrix2:
    """An element +-[[a, b], [c, d]] of SL(2,Z) with an explicit global sign.

    The entry matrix always has determinant one.  Entries are canonicalized
    so that the stored trace is positive (lexicographic tie-break at trace
    zero), moving any flip into the sign flag; the represented group element
    is sign * [[a, b], [c, d]].
    """

    a: int
    b: int
    c: int
    d: int
    sign: int = 1

    def __post_init__(self) -> None:
        if self.det() != 1:
            raise ValueError(f"determinant must be 1, got {self.det()}")
        if self.sign not in (1, -1):
            raise ValueError("sign flag must be +1 or -1")
        entries = (self.a, self.b, self.c, self.d)
        negated = tuple(-x for x in entries)
        tr = self.a + self.d
        if tr < 0 or (tr == 0 and entries < negated):
            for name, value in zip("abcd", negated):
                object.__setattr__(self, name, value)
            object.__setattr__(self, "sign", -self.sign)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def entry_trace(self) -> int:
        """Trace of the canonical entry matrix (always >= 0)."""
        return self.a + self.d

    def trace_sign(self) -> int:
        """Sign of the trace of the represented element."""
        return self.sign

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @staticmethod
    def identity() -> "Matrix2":
        return Matrix2(1, 0, 0, 1)

    def __mul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.sign * other.sign,
        )

    def inverse(self) -> "Matrix2":
        return Matrix2(self.d, -self.b, -self.c, self.a, self.sign)

    def pow(self, k: int) -> "Matrix2":
        """Exact k-th power for any integer k (sign flag raised to k)."""
        if k < 0:
            return self.inverse().pow(-k)
        result = Matrix2.identity()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, s: Slope) -> Slope:
        return apply_matrix(self, s)

    def __str__(self) -> str:
        prefix = "-" if self.sign < 0 else ""
        return f"{prefix}[[{self.a},{self.b}],[{self.c},{self.d}]]"


ALPHA = Matrix2(1, 1, 0, 1)
BETA = Matrix2(1, 0, 1, 1)


def apply_matrix(m: Matrix2, s: Slope) -> Slope:
    """Image of a slope under the matrix action, renormalized.

    The global sign acts trivially on slopes.
    """
    return Slope(m.a * s.p + m.b * s.q, m.c * s.p + m.d * s.q)


def trace_class(m: Matrix2) -> TraceClass:
    t = m.entry_trace()
    if t > 2:
        return TraceClass.HYPERBOLIC
    if t == 2:
        return TraceClass.PARABOLIC
    return TraceClass.ELLIPTIC


def matrix_power(m: Matrix2, k: int) -> Matrix2:
    """Exact k-th power for k >= 1."""
    if k < 1:
        raise ValueError("power must be at least 1")
    return m.pow(k)


def mod2_permutation(m: Matrix2) -> tuple[int, int, int]:
    """The permutation induced on the three parity classes by m mod 2.

    Entry i of the result is the image class of class i, computed by acting
    on the representative vectors (1,1), (1,0), (0,1) over Z/2.
    """
    reps = {ParityClass.BOTH_ODD: (1, 1), ParityClass.EVEN_DEN: (1, 0),
            ParityClass.EVEN_NUM: (0, 1)}

    def class_of(v: tuple[int, int]) -> int:
        if v == (1, 1):
            return ParityClass.BOTH_ODD
        if v == (1, 0):
            return ParityClass.EVEN_DEN
        if v == (0, 1):
            return ParityClass.EVEN_NUM
        raise AssertionError("mod-2 image of a primitive vector is nonzero")

    images = []
    for cls in ParityClass:
        p, q = reps[cls]
        image = ((m.a * p + m.b * q) % 2, (m.c * p + m.d * q) % 2)
        images.append(int(class_of(image)))
    return tuple(images)


def _all_nonnegative(entries: tuple[int, int, int, int]) -> bool:
    return all(x >= 0 for x in entries)


def conjugate_to_nonneg(m: Matrix2) -> tuple[Matrix2, Matrix2]:
    """Conjugate a hyperbolic matrix so all canonical entries are >= 0.

    Returns (m', c) with m' = c * m * c**-1.  The conjugator is found by
    running the integer continued-fraction expansion of the attracting fixed
    point; once the expansion enters its periodic part the conjugated matrix
    is a positive word in the two unipotents, hence nonnegative.  Only even
    expansion depths are accepted so the conjugator stays in SL(2,Z).
    """
    if trace_class(m) is not TraceClass.HYPERBOLIC:
        raise ValueError("only hyperbolic matrices have a nonnegative form")
    a, b, c, d = m.entries()
    if _all_nonnegative((a, b, c, d)):
        return m, Matrix2.identity()
    D = (a + d) ** 2 - 4
    s = math.isqrt(D)
    # Attracting fixed point (P + sqrt(D)) / Q of x -> (ax+b)/(cx+d); the
    # floor of (P + sqrt(D)) / Q equals (P + s) // Q because mQ - P cannot
    # land strictly between s and sqrt(D).
    P, Q = a - d, 2 * c
    cur = (a, b, c, d)
    acc = (1, 0, 0, 1)  # accumulated expansion product, det +-1 in GL(2,Z)
    for step in range(1, 4096):
        n = (P + s) // Q
        # One expansion step x = n + 1/x': conjugate by G = [[n, 1], [1, 0]].
        ca, cb, cc, cd = cur
        # cur * G
        ra, rb = ca * n + cb, ca
        rc, rd = cc * n + cd, cc
        # G^-1 * (cur * G) with G^-1 = [[0, 1], [1, -n]] (det -1 pair).
        cur = (rc, rd, ra - n * rc, rb - n * rd)
        ea, eb, ec, ed = acc
        acc = (ea * n + eb, ea, ec * n + ed, ec)
        P = n * Q - P
        Q = (D - P * P) // Q
        if step % 2 == 0 and _all_nonnegative(cur):
            break
    else:
        raise AssertionError("continued-fraction reduction did not terminate")
    ea, eb, ec, ed = acc
    conj = Matrix2(ea, eb, ec, ed).inverse()
    return Matrix2(*cur, sign=m.sign), conj


@dataclass(frozen=True)
class RLWord:
    """A positive word alpha^a1 beta^b1 ... alpha^an beta^bn, up to rotation.

    ``blocks`` holds the exponent pairs (a_i, b_i), all positive; ``sign`` is
    the trace sign of the factored element.  The stored block list is the
    lexicographically least cyclic rotation, so conjugate hyperbolic elements
    of equal sign produce equal words.
    """

    blocks: tuple[tuple[int, int], ...]
    sign: int = 1

    def __post_init__(self) -> None:
        if not self.blocks:
            raise ValueError("word must be nonempty")
        if any(x < 1 or y < 1 for x, y in self.blocks):
            raise ValueError("all exponents must be positive")
        if self.sign not in (1, -1):
            raise ValueError("sign flag must be +1 or -1")
        object.__setattr__(self, "blocks", _least_rotation(self.blocks))

    def letters(self) -> Iterator[str]:
        """The letter sequence, 'a' for alpha and 'b' for beta."""
        for x, y in self.blocks:
            yield from "a" * x
            yield from "b" * y

    def length(self) -> int:
        return sum(x + y for x, y in self.blocks)

    def matrix(self) -> Matrix2:
        """Recompose the word into a matrix carrying the stored sign."""
        result = Matrix2.identity()
        for x, y in self.blocks:
            result = result * Matrix2(1, x, 0, 1) * Matrix2(1, 0, y, 1)
        return Matrix2(*result.entries(), sign=self.sign)

    def __str__(self) -> str:
        prefix = "-" if self.sign < 0 else ""
        return prefix + "".join(f"a^{x} b^{y} " for x, y in self.blocks).strip()


def _least_rotation(blocks: tuple[tuple[int, int], ...]) -> tuple[tuple[int, int], ...]:
    n = len(blocks)
    rotations = [tuple(blocks[(i + j) % n] for j in range(n)) for i in range(n)]
    return min(rotations)


def _peel_letters(entries: tuple[int, int, int, int]) -> list[str]:
    """Factor a nonnegative hyperbolic entry matrix into unipotent letters."""
    a, b, c, d = entries
    letters: list[str] = []
    while (a, b, c, d) != (1, 0, 0, 1):
        if a >= c and b >= d:
            letters.append("a")
            a, b = a - c, b - d
        elif c >= a and d >= b:
            letters.append("b")
            c, d = c - a, d - b
        else:
            raise AssertionError("nonnegative det-1 matrix failed to peel")
    return letters


def _letters_to_blocks(letters: list[str]) -> tuple[tuple[int, int], ...]:
    runs: list[tuple[str, int]] = []
    for letter in letters:
        if runs and runs[-1][0] == letter:
            runs[-1] = (letter, runs[-1][1] + 1)
        else:
            runs.append((letter, 1))
    assert len(runs) % 2 == 0 and runs[0][0] == "a"
    return tuple((runs[i][1], runs[i + 1][1]) for i in range(0, len(runs), 2))


def _letters_matrix(letters: list[str]) -> Matrix2:
    result = Matrix2.identity()
    for letter in letters:
        result = result * (ALPHA if letter == "a" else BETA)
    return result


def rl_factorize_with_frame(m: Matrix2) -> tuple[RLWord, Matrix2]:
    """Canonical word of a hyperbolic matrix plus the conjugating frame.

    Returns (word, g) with m equal to g * word.matrix() * g**-1 as group
    elements.  The frame composes the nonnegative-form conjugator with the
    rotation that brings the letter sequence to its canonical block form.
    """
    nonneg, conj = conjugate_to_nonneg(m)
    letters = _peel_letters(nonneg.entries())
    if "a" not in letters or "b" not in letters:
        raise AssertionError("hyperbolic word must use both generators")
    # Rotate to a block boundary (an alpha preceded cyclically by a beta) so
    # the run decomposition alternates alpha, beta, ..., beta.
    boundary = next(
        i for i in range(len(letters))
        if letters[i] == "a" and letters[i - 1] == "b"
    )
    prefix = _letters_matrix(letters[:boundary])
    letters = letters[boundary:] + letters[:boundary]
    blocks = _letters_to_blocks(letters)
    # Rotate block-by-block to the canonical representative, tracking the
    # conjugation prefix: w = P * S  ==>  S * P = P^-1 * w * P.
    best = blocks
    best_prefix = Matrix2.identity()
    acc = Matrix2.identity()
    current = blocks
    for _ in range(len(blocks)):
        if current < best:
            best = current
            best_prefix = acc
        x, y = current[0]
        acc = acc * Matrix2(1, x, 0, 1) * Matrix2(1, 0, y, 1)
        current = current[1:] + current[:1]
    word = RLWord(best, sign=m.sign)
    assert word.blocks == best
    frame = conj.inverse() * prefix * best_prefix
    return word, frame


def rl_factorize(m: Matrix2) -> RLWord:
    """Canonical positive-word factorization of a hyperbolic matrix.

    The recomposed word is conjugate in SL(2,Z) to m up to the sign flag.
    """
    word, _ = rl_factorize_with_frame(m)
    return word
