"""Auslander-Reiten quiver of a type-A quiver, built by knitting.

Vertices are the interval modules.  The knitting starts from the projectives,
arranged as a copy of the opposite quiver (an arrow ``P_t -> P_s`` for every
arrow ``s -> t``), and repeatedly applies the mesh rule

    dim tau^-(X) = sum of dim Y over arrows X -> Y  -  dim X

until the right-hand side stops being a dimension vector, which happens
exactly at the injectives.

Each vertex has a *level* in 1..n (the projective P_k and its whole tau-orbit
sit at level k, so P_1 is drawn on top) and a horizontal coordinate ``x``
growing by one along every arrow.  An arrow is NE when it goes up a level and
SE when it goes down.  Paths that never turn are the sectional paths.

All combinatorial Hom computations here use only the shape of the quiver:
a Hom space between intervals is one-dimensional exactly when the target is
reachable from the source and no path between them runs through a mesh with
a single middle term.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Literal, Mapping, Optional

from .errors import InternalError, ParseError, PreconditionViolated
from .quiver import Interval, SymmetricQuiver

NE = "NE"
SE = "SE"
Slope = Literal["NE", "SE"]


@dataclass(frozen=True)
class SectionalPath:
    """A path that never turns.  ``direction`` is None for the trivial path."""

    vertices: tuple[Interval, ...]
    direction: Optional[Slope]

    @property
    def source(self) -> Interval:
        return self.vertices[0]

    @property
    def target(self) -> Interval:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.vertices) - 1


def _as_interval(dim: tuple[int, ...]) -> Optional[Interval]:
    """Read a 0/1 vector with contiguous support back as an interval."""
    support = [k for k, v in enumerate(dim, start=1) if v]
    if not support or any(v not in (0, 1) for v in dim):
        return None
    if support[-1] - support[0] + 1 != len(support):
        return None
    return Interval(support[0], support[-1])


class ARQuiver:
    """The knitted AR quiver together with its reachability data."""

    def __init__(self, quiver: SymmetricQuiver):
        self.quiver = quiver
        n = quiver.n
        self.vertices: list[Interval] = []
        self.succ: dict[Interval, list[Interval]] = {}
        self.pred: dict[Interval, list[Interval]] = {}
        self.level: dict[Interval, int] = {}
        self.slice: dict[Interval, int] = {}
        self.x: dict[Interval, int] = {}
        self.tau: dict[Interval, Interval] = {}
        self.tau_inv: dict[Interval, Interval] = {}
        self.projectives = tuple(quiver.projective(k) for k in range(1, n + 1))
        self.injectives = tuple(quiver.injective(k) for k in range(1, n + 1))
        self._knit()
        self._order = {v: k for k, v in enumerate(self.vertices)}
        self._reach = self._reachability()
        self._coreach = self._coreachability()

    # -- construction ---------------------------------------------------------

    def _add_vertex(self, v: Interval, level: int, slice_: int) -> None:
        if v in self.level:
            raise InternalError(f"knitting produced {v} twice")
        self.vertices.append(v)
        self.succ[v] = []
        self.pred[v] = []
        self.level[v] = level
        self.slice[v] = slice_

    def _add_arrow(self, a: Interval, b: Interval) -> None:
        if abs(self.level[a] - self.level[b]) != 1:
            raise InternalError(f"arrow {a} -> {b} does not change level by one")
        self.succ[a].append(b)
        self.pred[b].append(a)

    def _knit(self) -> None:
        q = self.quiver
        n = q.n
        for k, p in enumerate(self.projectives, start=1):
            self._add_vertex(p, k, 0)
        for s, t in q.arrows:
            self._add_arrow(self.projectives[t - 1], self.projectives[s - 1])

        # horizontal coordinates of the projective slice, one step per arrow
        self.x[self.projectives[0]] = 0
        for k in range(1, n):
            a, b = self.projectives[k - 1], self.projectives[k]
            self.x[b] = self.x[a] + (1 if b in self.succ[a] else -1)
        lo = min(self.x.values())
        for p in self.projectives:
            self.x[p] -= lo

        processed: set[Interval] = set()
        while True:
            ready = [v for v in self.vertices if v not in processed and all(u in processed for u in self.pred[v])]
            if not ready:
                break
            v = min(ready, key=lambda u: (self.x[u], self.level[u]))
            processed.add(v)
            self.succ[v].sort(key=self.level.__getitem__)
            total = [0] * n
            for w in self.succ[v]:
                for k, c in enumerate(w.dim(n)):
                    total[k] += c
            candidate = tuple(t - c for t, c in zip(total, v.dim(n)))
            nxt = _as_interval(candidate) if min(candidate) >= 0 else None
            if nxt is None:
                if v not in self.injectives:
                    raise InternalError(f"knitting stopped at {v}, which is not injective")
                continue
            if v in self.injectives:
                raise InternalError(f"knitting continued past the injective {v}")
            self._add_vertex(nxt, self.level[v], self.slice[v] + 1)
            self.x[nxt] = self.x[v] + 2
            self.tau[nxt] = v
            self.tau_inv[v] = nxt
            for w in self.succ[v]:
                self._add_arrow(w, nxt)
        if len(self.vertices) != n * (n + 1) // 2:
            raise InternalError(f"knitting found {len(self.vertices)} vertices, expected {n * (n + 1) // 2}")
        self.vertices.sort(key=lambda u: (self.x[u], self.level[u]))

    def _reachability(self) -> dict[Interval, int]:
        reach: dict[Interval, int] = {}
        for v in reversed(self.vertices):  # vertices are sorted by x, a topological order
            bits = 1 << self._order[v]
            for w in self.succ[v]:
                bits |= reach[w]
            reach[v] = bits
        return reach

    def _coreachability(self) -> dict[Interval, int]:
        reach: dict[Interval, int] = {}
        for v in self.vertices:
            bits = 1 << self._order[v]
            for w in self.pred[v]:
                bits |= reach[w]
            reach[v] = bits
        return reach

    # -- basic queries --------------------------------------------------------

    @property
    def arrows(self) -> list[tuple[Interval, Interval]]:
        return [(v, w) for v in self.vertices for w in self.succ[v]]

    def is_projective(self, v: Interval) -> bool:
        return v not in self.tau

    def is_injective(self, v: Interval) -> bool:
        return v not in self.tau_inv

    def mesh_middle(self, v: Interval) -> list[Interval]:
        """Middle term of the almost split sequence ending in v (or rad v for projectives)."""
        return list(self.pred[v])

    def slope(self, a: Interval, b: Interval) -> Slope:
        return NE if self.level[b] < self.level[a] else SE

    def precedes(self, a: Interval, b: Interval) -> bool:
        """Whether there is a (possibly trivial) path from a to b."""
        return bool(self._reach[a] >> self._order[b] & 1)

    def successors_closure(self, v: Interval) -> list[Interval]:
        bits = self._reach[v]
        return [w for w in self.vertices if bits >> self._order[w] & 1]

    def predecessors_closure(self, v: Interval) -> list[Interval]:
        bits = self._coreach[v]
        return [w for w in self.vertices if bits >> self._order[w] & 1]

    @cached_property
    def _zero_relations(self) -> list[tuple[Interval, Interval]]:
        """Pairs (tau V, V) whose mesh has a single middle term."""
        return [(self.tau[v], v) for v in self.vertices if v in self.tau and len(self.pred[v]) == 1]

    def hom_dim(self, a: Interval, b: Interval) -> int:
        """dim Hom(a, b): 1 iff b is reachable and no path from a to b is a zero relation."""
        if not self.precedes(a, b):
            return 0
        for start, end in self._zero_relations:
            if self.precedes(a, start) and self.precedes(end, b):
                return 0
        return 1

    @cached_property
    def hom_table(self) -> dict[tuple[Interval, Interval], int]:
        return {(a, b): self.hom_dim(a, b) for a in self.vertices for b in self.vertices}

    def hammock(self, v: Interval) -> frozenset[Interval]:
        """All E with Hom(v, E) nonzero."""
        return self._hammocks[v]

    def cohammock(self, v: Interval) -> frozenset[Interval]:
        """All E with Hom(E, v) nonzero."""
        return self._cohammocks[v]

    @cached_property
    def _hammocks(self) -> dict[Interval, frozenset[Interval]]:
        t = self.hom_table
        return {a: frozenset(b for b in self.vertices if t[a, b]) for a in self.vertices}

    @cached_property
    def _cohammocks(self) -> dict[Interval, frozenset[Interval]]:
        t = self.hom_table
        return {b: frozenset(a for a in self.vertices if t[a, b]) for b in self.vertices}

    def ext_dim(self, a: Interval, b: Interval) -> int:
        """dim Ext^1(a, b) via the Auslander-Reiten formula Ext^1(a, b) = D Hom(b, tau a)."""
        ta = self.tau.get(a)
        return 0 if ta is None else self.hom_dim(b, ta)

    # -- order-theoretic helpers ---------------------------------------------

    def join(self, a: Interval, b: Interval) -> Optional[Interval]:
        """The least common successor of a and b, if there is one."""
        return self._least(self._reach[a] & self._reach[b], self._reach)

    def meet(self, a: Interval, b: Interval) -> Optional[Interval]:
        """The greatest common predecessor of a and b, if there is one."""
        return self._least(self._coreach[a] & self._coreach[b], self._coreach)

    def _least(self, common: int, cone: dict[Interval, int]) -> Optional[Interval]:
        for v in self.vertices:
            if common >> self._order[v] & 1 and cone[v] & common == common:
                return v
        return None

    def minimal(self, vs: Iterable[Interval]) -> list[Interval]:
        """The minimal elements of vs for the path order."""
        vs = list(dict.fromkeys(vs))
        return [v for v in vs if not any(w != v and self.precedes(w, v) for w in vs)]

    def maximal(self, vs: Iterable[Interval]) -> list[Interval]:
        vs = list(dict.fromkeys(vs))
        return [v for v in vs if not any(w != v and self.precedes(v, w) for w in vs)]

    # -- sectional paths ------------------------------------------------------

    def ray(self, v: Interval, direction: Slope, forward: bool = True) -> Iterator[Interval]:
        """Vertices met walking from v in a fixed slope, v excluded.

        Backward rays (``forward=False``) walk against the arrows; ``direction``
        is then the slope of the arrows being walked along.
        """
        step = -1 if direction == NE else 1
        cur = v
        while True:
            nbrs = self.succ[cur] if forward else self.pred[cur]
            want = self.level[cur] + (step if forward else -step)
            nxt = next((w for w in nbrs if self.level[w] == want), None)
            if nxt is None:
                return
            yield nxt
            cur = nxt

    def sectional_path(self, a: Interval, b: Interval) -> Optional[SectionalPath]:
        """The sectional path from a to b, if any (the trivial path when a == b)."""
        if a == b:
            return SectionalPath((a,), None)
        for d in (NE, SE):
            walked = [a]
            for w in self.ray(a, d):
                walked.append(w)
                if w == b:
                    return SectionalPath(tuple(walked), d)
        return None

    def has_sectional_path(self, a: Interval, b: Interval, direction: Slope) -> bool:
        """Sectional path from a to b with the given slope; the trivial path counts for both."""
        p = self.sectional_path(a, b)
        return p is not None and p.direction in (None, direction)

    def sectional_cokernel(self, src: Interval, dst: Interval) -> Optional[Interval]:
        """Cokernel of a monomorphism src -> dst between indecomposables.

        It is the first vertex outside the hammock of src met on a sectional
        path leaving dst, or None (zero cokernel) when no such vertex exists.
        """
        if self.sectional_path(src, dst) is None:
            raise PreconditionViolated(f"no monomorphism {src} -> {dst}")
        hammock = self.hammock(src)
        found = []
        for d in (NE, SE):
            for w in self.ray(dst, d):
                if w not in hammock:
                    found.append(w)
                    break
        return self._unique_extreme(found, minimal=True)

    def sectional_kernel(self, src: Interval, dst: Interval) -> Optional[Interval]:
        """Kernel of an epimorphism src -> dst between indecomposables (dual of the cokernel)."""
        if self.sectional_path(src, dst) is None:
            raise PreconditionViolated(f"no epimorphism {src} -> {dst}")
        cohammock = self.cohammock(dst)
        found = []
        for d in (NE, SE):
            for w in self.ray(src, d, forward=False):
                if w not in cohammock:
                    found.append(w)
                    break
        return self._unique_extreme(found, minimal=False)

    def _unique_extreme(self, found: list[Interval], minimal: bool) -> Optional[Interval]:
        if not found:
            return None
        best = self.minimal(found) if minimal else self.maximal(found)
        if len(best) != 1:
            raise InternalError(f"ambiguous sectional (co)kernel candidates {found}")
        return best[0]

    def rectangle(self, sub: Interval, quot: Interval) -> Optional[tuple[Interval, ...]]:
        """Middle summands of the nonsplit extension 0 -> sub -> F -> quot -> 0.

        Returns None when Ext^1(quot, sub) = 0.  One summand means the
        rectangle is degenerate (a broken line), two mean a genuine rectangle.
        """
        if self.ext_dim(quot, sub) == 0:
            return None
        corners = []
        for f in self.vertices:
            if f in (sub, quot):
                continue
            p = self.sectional_path(sub, f)
            q = self.sectional_path(f, quot)
            if p and q and p.direction and q.direction and p.direction != q.direction:
                corners.append(f)
        if len(corners) not in (1, 2):
            raise InternalError(f"extension of {quot} by {sub} has {len(corners)} corners")
        return tuple(sorted(corners, key=self.level.__getitem__))

    # -- output ---------------------------------------------------------------

    def to_dot(self) -> str:
        lines = [f'digraph "AR({self.quiver})" {{', "  node [shape=plaintext];"]
        for v in self.vertices:
            lines.append(f'  "{v}" [pos="{self.x[v]},{-self.level[v]}!"];')
        for a, b in self.arrows:
            lines.append(f'  "{a}" -> "{b}";')
        for v in self.vertices:
            if v in self.tau:
                lines.append(f'  "{v}" -> "{self.tau[v]}" [style=dashed, constraint=false];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def grid(self, labels: Mapping[Interval, object], blank: str = ".") -> str:
        """Text drawing with ``labels[v]`` at the position of v (level down, x across)."""
        xs = [self.x[v] for v in self.vertices]
        lo = min(xs)
        cells = {(self.level[v], self.x[v] - lo): str(labels.get(v, blank)) for v in self.vertices}
        width = max(len(c) for c in cells.values())
        lines = []
        for lev in range(1, self.quiver.n + 1):
            row = [" " * width] * (max(xs) - lo + 1)
            for (l, c), text in cells.items():
                if l == lev:
                    row[c] = text.rjust(width)
            lines.append(" ".join(row).rstrip())
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        pair = lambda v: [v.i, v.j]  # noqa: E731
        return {
            "quiver": str(self.quiver),
            "vertices": [pair(v) for v in self.vertices],
            "arrows": [[pair(a), pair(b)] for a, b in self.arrows],
            "tau": [[pair(v), pair(self.tau[v])] for v in self.vertices if v in self.tau],
            "level": [self.level[v] for v in self.vertices],
            "slice": [self.slice[v] for v in self.vertices],
            "x": [self.x[v] for v in self.vertices],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ARQuiver":
        """Re-knit the quiver named in ``obj`` and insist that the stored data agree with it."""
        try:
            g = ar_quiver(SymmetricQuiver.parse(obj["quiver"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed AR quiver JSON: {exc}") from exc
        if g.to_json() != obj:
            raise ParseError(f"AR quiver JSON does not match the knitted quiver of {obj['quiver']}")
        return g


@lru_cache(maxsize=None)
def ar_quiver(quiver: SymmetricQuiver) -> ARQuiver:
    """Knitted AR quiver, memoised per quiver."""
    return ARQuiver(quiver)
