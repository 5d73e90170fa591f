"""Isoclasses of representations as multisets of intervals.

A representation of a type-A quiver is determined up to isomorphism by how
often each interval module occurs in it, so :class:`RepClass` is just a
vector of multiplicities indexed by the intervals in lexicographic order.

Hom dimensions between intervals come from a tiny linear system solved by
union-find (one unknown scalar per common vertex); everything else is
bilinear extension plus the Euler form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Optional

import numpy as np

from .arquiver import ar_quiver
from .errors import ParseError, PreconditionViolated
from .quiver import Interval, SymmetricQuiver


@lru_cache(maxsize=None)
def intervals_of(n: int) -> tuple[Interval, ...]:
    return tuple(Interval(i, j) for i in range(1, n + 1) for j in range(i, n + 1))


@lru_cache(maxsize=None)
def interval_index(n: int) -> dict[Interval, int]:
    return {u: k for k, u in enumerate(intervals_of(n))}


class RepClass:
    """Isoclass of a representation of A_n, stored as interval multiplicities."""

    __slots__ = ("n", "counts", "_hash")

    def __init__(self, n: int, counts: Iterable[int]):
        counts = tuple(counts)
        if len(counts) != n * (n + 1) // 2:
            raise ParseError(f"A{n} has {n * (n + 1) // 2} intervals, got {len(counts)} multiplicities")
        if any(c < 0 for c in counts):
            raise PreconditionViolated("multiplicities must be non-negative")
        self.n = n
        self.counts = counts
        self._hash = hash((n, counts))

    @classmethod
    def zero(cls, n: int) -> "RepClass":
        return cls(n, (0,) * (n * (n + 1) // 2))

    @classmethod
    def of(cls, n: int, *summands: Interval) -> "RepClass":
        """Direct sum of the given intervals (repeat an interval for multiplicity)."""
        counts = [0] * (n * (n + 1) // 2)
        idx = interval_index(n)
        for u in summands:
            if u not in idx:
                raise ParseError(f"{u} is not an interval of A{n}")
            counts[idx[u]] += 1
        return cls(n, counts)

    @classmethod
    def from_mapping(cls, n: int, mults: Mapping[Interval, int]) -> "RepClass":
        counts = [0] * (n * (n + 1) // 2)
        idx = interval_index(n)
        for u, m in mults.items():
            u = Interval(*u)
            if u not in idx:
                raise ParseError(f"{u} is not an interval of A{n}")
            counts[idx[u]] += m
        return cls(n, counts)

    @classmethod
    def from_json(cls, n: int, obj: Mapping) -> "RepClass":
        """Parse ``{"rep": [{"i": 1, "j": 3, "mult": 2}, ...]}``."""
        try:
            entries = obj["rep"]
            mults: dict[Interval, int] = {}
            for e in entries:
                u = Interval(int(e["i"]), int(e["j"]))
                m = int(e.get("mult", 1))
                if m < 0:
                    raise ParseError(f"negative multiplicity for {u}")
                mults[u] = mults.get(u, 0) + m
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed representation JSON: {exc}") from exc
        return cls.from_mapping(n, mults)

    def to_json(self) -> dict:
        return {"rep": [{"i": u.i, "j": u.j, "mult": m} for u, m in self.items()]}

    # -- multiset operations ----------------------------------------------

    def mult(self, u: Interval) -> int:
        return self.counts[interval_index(self.n)[u]]

    __getitem__ = mult

    def items(self) -> list[tuple[Interval, int]]:
        return [(u, c) for u, c in zip(intervals_of(self.n), self.counts) if c]

    def summands(self) -> list[Interval]:
        """Distinct indecomposable summands in lexicographic order."""
        return [u for u, c in zip(intervals_of(self.n), self.counts) if c]

    def __iter__(self) -> Iterator[Interval]:
        for u, c in self.items():
            for _ in range(c):
                yield u

    def num_summands(self) -> int:
        return sum(self.counts)

    def dim(self) -> tuple[int, ...]:
        d = [0] * self.n
        for u, c in self.items():
            for k in range(u.i - 1, u.j):
                d[k] += c
        return tuple(d)

    def __add__(self, other: "RepClass") -> "RepClass":
        self._check_same(other)
        return RepClass(self.n, (a + b for a, b in zip(self.counts, other.counts)))

    def __sub__(self, other: "RepClass") -> "RepClass":
        self._check_same(other)
        diff = tuple(a - b for a, b in zip(self.counts, other.counts))
        if min(diff, default=0) < 0:
            raise PreconditionViolated(f"{other} is not a direct summand of {self}")
        return RepClass(self.n, diff)

    def __mul__(self, k: int) -> "RepClass":
        return RepClass(self.n, (k * c for c in self.counts))

    __rmul__ = __mul__

    def contains(self, other: "RepClass") -> bool:
        """Whether other is a direct summand of self."""
        self._check_same(other)
        return all(a >= b for a, b in zip(self.counts, other.counts))

    def _check_same(self, other: "RepClass") -> None:
        if not isinstance(other, RepClass) or other.n != self.n:
            raise PreconditionViolated("representations of different quivers")

    def __bool__(self) -> bool:
        return any(self.counts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RepClass) and self.n == other.n and self.counts == other.counts

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "RepClass") -> bool:
        return (self.n, self.counts) < (other.n, other.counts)

    def __str__(self) -> str:
        if not self:
            return "0"
        return " + ".join(str(u) if c == 1 else f"{u}^{c}" for u, c in self.items())

    def __repr__(self) -> str:
        return f"RepClass({self})"


@dataclass(frozen=True)
class EpsilonContext:
    """A symmetric quiver together with the sign of the form (+1 or -1)."""

    quiver: SymmetricQuiver
    epsilon: int

    def __post_init__(self) -> None:
        if self.epsilon not in (1, -1):
            raise ParseError(f"epsilon must be +1 or -1, got {self.epsilon}")

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def split(self) -> bool:
        return self.quiver.is_split(self.epsilon)

    def __str__(self) -> str:
        return f"{self.quiver} eps={self.epsilon:+d}"


# -- Hom and Ext -------------------------------------------------------------


def hom_dim_linear(quiver: SymmetricQuiver, u: Interval, v: Interval) -> int:
    """dim Hom(u, v) from the commutativity constraints on common vertices.

    A morphism is one scalar per vertex of supp u ∩ supp v.  Arrows inside both
    supports force neighbouring scalars to agree; an arrow leaving the
    intersection into v only, or entering it from u only, kills a scalar.
    """
    common = [k for k in range(1, quiver.n + 1) if k in u and k in v]
    if not common:
        return 0
    parent = {k: k for k in common}
    dead: set[int] = set()

    def find(k: int) -> int:
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for s, t in quiver.arrows:
        s_both, t_both = s in parent, t in parent
        if s_both and t_both:
            parent[find(s)] = find(t)
        elif s_both and t in v:
            dead.add(s)
        elif t_both and s in u:
            dead.add(t)
    roots = {find(k) for k in common}
    dead_roots = {find(k) for k in dead}
    return len(roots - dead_roots)


class _Tables:
    """Hom and Ext between all pairs of intervals as integer matrices."""

    def __init__(self, quiver: SymmetricQuiver):
        ivs = intervals_of(quiver.n)
        self.hom = np.array([[hom_dim_linear(quiver, a, b) for b in ivs] for a in ivs], dtype=np.int64)
        dims = np.array([u.dim(quiver.n) for u in ivs], dtype=np.int64)
        adj = np.zeros((quiver.n, quiver.n), dtype=np.int64)
        for s, t in quiver.arrows:
            adj[s - 1, t - 1] += 1
        euler = dims @ (np.eye(quiver.n, dtype=np.int64) - adj) @ dims.T
        self.ext = self.hom - euler
        self.hom.setflags(write=False)
        self.ext.setflags(write=False)


@lru_cache(maxsize=None)
def tables(quiver: SymmetricQuiver) -> _Tables:
    return _Tables(quiver)


def hom_dim(quiver: SymmetricQuiver, m: RepClass, n: RepClass) -> int:
    return int(np.asarray(m.counts) @ tables(quiver).hom @ np.asarray(n.counts))


def ext_dim(quiver: SymmetricQuiver, m: RepClass, n: RepClass) -> int:
    """dim Ext^1(m, n) = [m, n] - <dim m, dim n>."""
    return hom_dim(quiver, m, n) - quiver.euler_form(m.dim(), n.dim())


def hom_interval(quiver: SymmetricQuiver, a: Interval, b: Interval) -> int:
    idx = interval_index(quiver.n)
    return int(tables(quiver).hom[idx[a], idx[b]])


def ext_interval(quiver: SymmetricQuiver, a: Interval, b: Interval) -> int:
    idx = interval_index(quiver.n)
    return int(tables(quiver).ext[idx[a], idx[b]])


def hom_vector(quiver: SymmetricQuiver, m: RepClass) -> np.ndarray:
    """The vector ([m, E])_E over all intervals E."""
    return np.asarray(m.counts, dtype=np.int64) @ tables(quiver).hom


def leq_hom(quiver: SymmetricQuiver, m: RepClass, n: RepClass) -> bool:
    """m <= n in the Hom order: same dimension vector and [m, E] <= [n, E] for every E."""
    if m.dim() != n.dim():
        return False
    return bool(np.all(hom_vector(quiver, m) <= hom_vector(quiver, n)))


# -- duality -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _nabla_permutation(n: int) -> tuple[int, ...]:
    idx = interval_index(n)
    return tuple(idx[Interval(n + 1 - u.j, n + 1 - u.i)] for u in intervals_of(n))


def nabla_rep(m: RepClass) -> RepClass:
    """The twisted dual, interval by interval."""
    perm = _nabla_permutation(m.n)
    counts = [0] * len(m.counts)
    for k, c in enumerate(m.counts):
        counts[perm[k]] = c
    return RepClass(m.n, counts)


def epsilon_summand(ctx: EpsilonContext, u: Interval) -> RepClass:
    """The smallest ε-admissible class containing u: u + ∇u, or u (twice in split type) if self-dual."""
    q = ctx.quiver
    if q.is_self_dual(u):
        return RepClass.of(q.n, *([u, u] if ctx.split else [u]))
    return RepClass.of(q.n, u, q.nabla(u))


def is_epsilon_admissible(ctx: EpsilonContext, m: RepClass) -> bool:
    """Whether m carries an ε-form: self-dual, with even self-dual multiplicities in split type."""
    if m.n != ctx.n or nabla_rep(m) != m:
        return False
    if ctx.split:
        q = ctx.quiver
        return all(c % 2 == 0 for u, c in m.items() if q.is_self_dual(u))
    return True


# -- delta and multiplicities -------------------------------------------------


def delta(quiver: SymmetricQuiver, m: RepClass, n: RepClass, e: Interval) -> int:
    """[n, e] - [m, e]."""
    e_rep = RepClass.of(quiver.n, e)
    return hom_dim(quiver, n, e_rep) - hom_dim(quiver, m, e_rep)


def is_delta_fixed(quiver: SymmetricQuiver, e: Interval) -> bool:
    """Whether e is isomorphic to tau of its twisted dual."""
    return ar_quiver(quiver).tau.get(quiver.nabla(e)) == e


def multiplicity(
    quiver: SymmetricQuiver,
    m: RepClass,
    e: Interval,
    hom_oracle: Optional[Callable[[Interval], int]] = None,
) -> int:
    """Multiplicity of e in m computed from Hom dimensions only.

    ``hom_oracle(E)`` must return dim Hom(m, E); by default it is read off the
    multiplicities.  For non-projective e this is [m, e] - [m, F] + [m, tau e]
    with F the middle of the mesh ending at e; for projective e it is
    [m, e] - [m, rad e].
    """
    if hom_oracle is None:
        vec = hom_vector(quiver, m)
        idx = interval_index(quiver.n)
        hom_oracle = lambda x: int(vec[idx[x]])  # noqa: E731
    g = ar_quiver(quiver)
    value = hom_oracle(e) - sum(hom_oracle(f) for f in g.mesh_middle(e))
    if e in g.tau:
        value += hom_oracle(g.tau[e])
    return value


class HomProfile:
    """Cached Hom vectors for many classes of one quiver (used in sweeps)."""

    def __init__(self, quiver: SymmetricQuiver):
        self.quiver = quiver
        self._cache: dict[RepClass, np.ndarray] = {}

    def __call__(self, m: RepClass) -> np.ndarray:
        v = self._cache.get(m)
        if v is None:
            v = hom_vector(self.quiver, m)
            self._cache[m] = v
        return v

    def leq(self, m: RepClass, n: RepClass) -> bool:
        return m.dim() == n.dim() and bool(np.all(self(m) <= self(n)))
