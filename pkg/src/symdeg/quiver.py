"""Symmetric type-A quivers and their interval modules.

A quiver of type A_n has vertices 1..n and one arrow per edge e_k joining k
and k+1.  It is *symmetric* when the involution ``k -> n+1-k`` maps every
arrow to an arrow with reversed direction; for type A this just says that the
edge directions read the same from both ends.

Indecomposable representations are the interval modules U(i, j), 1 <= i <= j
<= n, with a one-dimensional space at every vertex of [i, j] and identity maps
along arrows inside the interval.  They are modelled by :class:`Interval`.

Text syntax for a quiver is ``A<n>:<dirs>``, one character per edge with ``>``
for k -> k+1 and ``<`` for k+1 -> k, for instance ``A4:><>``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

from .errors import IncompatibleOrientation, ParseError


class Direction(enum.Enum):
    RIGHT = ">"  # k -> k+1
    LEFT = "<"  # k+1 -> k


class Interval(NamedTuple):
    """The interval module supported on vertices i..j (inclusive)."""

    i: int
    j: int

    def __str__(self) -> str:
        return f"U[{self.i},{self.j}]"

    def __contains__(self, k: object) -> bool:  # type: ignore[override]
        return isinstance(k, int) and self.i <= k <= self.j

    def dim(self, n: int) -> tuple[int, ...]:
        return tuple(1 if self.i <= k <= self.j else 0 for k in range(1, n + 1))


_QUIVER_RE = re.compile(r"^A(\d+):([<>]*)$")


@dataclass(frozen=True)
class SymmetricQuiver:
    """A symmetric orientation of the Dynkin diagram A_n (n >= 2).

    ``orientation[k - 1]`` is the direction of the edge between k and k+1.
    """

    n: int
    orientation: tuple[Direction, ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ParseError(f"need at least two vertices, got n={self.n}")
        if len(self.orientation) != self.n - 1:
            raise ParseError(f"A{self.n} needs {self.n - 1} edge directions, got {len(self.orientation)}")
        for k in range(1, self.n):
            if self.orientation[k - 1] != self.orientation[self.n - k - 1]:
                raise IncompatibleOrientation(
                    f"edge {k} and edge {self.n - k} must point the same way for the orientation to be symmetric"
                )

    @classmethod
    def parse(cls, text: str) -> "SymmetricQuiver":
        m = _QUIVER_RE.match(text.strip())
        if m is None:
            raise ParseError(f"cannot parse quiver {text!r}; expected e.g. 'A4:><>'")
        return cls(int(m.group(1)), tuple(Direction(c) for c in m.group(2)))

    @classmethod
    def equioriented(cls, n: int) -> "SymmetricQuiver":
        return cls(n, (Direction.RIGHT,) * (n - 1))

    def __str__(self) -> str:
        return f"A{self.n}:" + "".join(d.value for d in self.orientation)

    @property
    def has_fixed_vertex(self) -> bool:
        return self.n % 2 == 1

    @cached_property
    def arrows(self) -> tuple[tuple[int, int], ...]:
        """Arrows as (source, target) pairs, ordered by edge."""
        out = []
        for k, d in enumerate(self.orientation, start=1):
            out.append((k, k + 1) if d is Direction.RIGHT else (k + 1, k))
        return tuple(out)

    def sigma(self, k: int) -> int:
        return self.n + 1 - k

    @cached_property
    def intervals(self) -> tuple[Interval, ...]:
        """All n(n+1)/2 intervals in lexicographic order."""
        return tuple(Interval(i, j) for i in range(1, self.n + 1) for j in range(i, self.n + 1))

    @cached_property
    def index(self) -> dict[Interval, int]:
        return {u: k for k, u in enumerate(self.intervals)}

    def interval(self, i: int, j: int) -> Interval:
        if not 1 <= i <= j <= self.n:
            raise ParseError(f"U[{i},{j}] is not an interval of A{self.n}")
        return Interval(i, j)

    def nabla(self, u: Interval) -> Interval:
        return Interval(self.sigma(u.j), self.sigma(u.i))

    def is_self_dual(self, u: Interval) -> bool:
        return u.i + u.j == self.n + 1

    def projective(self, k: int) -> Interval:
        """Support of P_k: every vertex reachable from k along arrows."""
        r = k
        while r < self.n and self.orientation[r - 1] is Direction.RIGHT:
            r += 1
        l = k
        while l > 1 and self.orientation[l - 2] is Direction.LEFT:
            l -= 1
        return Interval(l, r)

    def injective(self, k: int) -> Interval:
        """Support of I_k: every vertex with a path to k."""
        r = k
        while r < self.n and self.orientation[r - 1] is Direction.LEFT:
            r += 1
        l = k
        while l > 1 and self.orientation[l - 2] is Direction.RIGHT:
            l -= 1
        return Interval(l, r)

    def euler_form(self, e: Sequence[int], d: Sequence[int]) -> int:
        """The Euler form sum_i e_i d_i - sum_{i->j} e_i d_j."""
        return sum(a * b for a, b in zip(e, d)) - sum(e[s - 1] * d[t - 1] for s, t in self.arrows)

    def dim_nabla(self, d: Sequence[int]) -> tuple[int, ...]:
        return tuple(d[self.sigma(k) - 1] for k in range(1, self.n + 1))

    def is_split(self, epsilon: int) -> bool:
        """Whether (self, epsilon) is of split type: (A_odd, -1) or (A_even, +1)."""
        if epsilon not in (1, -1):
            raise ParseError(f"epsilon must be +1 or -1, got {epsilon}")
        return (self.n % 2 == 1) == (epsilon == -1)


def compatible_orientations(n: int) -> list[SymmetricQuiver]:
    """Every symmetric orientation of A_n, in a fixed order."""
    free = n // 2  # edges 1..n//2 determine the rest; for even n the middle edge is its own mirror
    out = []
    for mask in range(1 << free):
        dirs = [Direction.RIGHT] * (n - 1)
        for k in range(1, free + 1):
            d = Direction.LEFT if mask >> (k - 1) & 1 else Direction.RIGHT
            dirs[k - 1] = d
            dirs[n - k - 1] = d
        out.append(SymmetricQuiver(n, tuple(dirs)))
    return out
