"""Explicit representations ("points") and matrix-level Hom computations.

This is the slow, independent route.  A :class:`PointRep` stores an honest
matrix for every arrow, and Hom spaces are nullspaces of the intertwining
equations ``h_t · X_a = Y_a · h_s``.  Decomposing a point into intervals
uses nothing but these Hom dimensions and the mesh relations of the AR
quiver.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..arquiver import ar_quiver
from ..errors import InconsistentPoint, InternalError, PreconditionViolated
from ..quiver import Interval, SymmetricQuiver
from ..rep import EpsilonContext, RepClass, intervals_of, multiplicity
from . import linalg as la

Arrow = tuple[int, int]


@dataclass
class PointRep:
    """A representation given by matrices.  ``maps[(s, t)]`` has shape dims[t] x dims[s]."""

    quiver: SymmetricQuiver
    dims: tuple[int, ...]
    maps: dict[Arrow, la.Matrix]
    blocks: Optional[list[Interval]] = field(default=None, compare=False)

    def dim(self, k: int) -> int:
        return self.dims[k - 1]

    def check(self) -> None:
        for s, t in self.quiver.arrows:
            a = self.maps[(s, t)]
            if len(a) != self.dim(t) or any(len(row) != self.dim(s) for row in a):
                raise InternalError(f"map on arrow {s}->{t} has the wrong shape")


def realize(quiver: SymmetricQuiver, m: RepClass) -> PointRep:
    """Block direct sum of interval modules with identity maps, in lexicographic order."""
    blocks = list(m)
    n = quiver.n
    pos: list[dict[int, int]] = [dict() for _ in range(n + 1)]
    for b, u in enumerate(blocks):
        for k in range(u.i, u.j + 1):
            pos[k][b] = len(pos[k])
    dims = tuple(len(pos[k]) for k in range(1, n + 1))
    maps: dict[Arrow, la.Matrix] = {}
    for s, t in quiver.arrows:
        a = la.zeros(dims[t - 1], dims[s - 1])
        for b, u in enumerate(blocks):
            if s in u and t in u:
                a[pos[t][b]][pos[s][b]] = Fraction(1)
        maps[(s, t)] = a
    return PointRep(quiver, dims, maps, blocks)


def block_positions(point: PointRep) -> list[dict[int, int]]:
    """For a realized point, ``pos[k][b]`` is the basis index at vertex k of block b."""
    if point.blocks is None:
        raise PreconditionViolated("point was not produced by realize()")
    pos: list[dict[int, int]] = [dict() for _ in range(point.quiver.n + 1)]
    for b, u in enumerate(point.blocks):
        for k in range(u.i, u.j + 1):
            pos[k][b] = len(pos[k])
    return pos


def _hom_system(x: PointRep, y: PointRep) -> tuple[la.Matrix, list[tuple[int, int, int]]]:
    n = x.quiver.n
    variables: list[tuple[int, int, int]] = []  # (vertex, row, col) of h_vertex
    offset = {}
    for k in range(1, n + 1):
        offset[k] = len(variables)
        variables.extend((k, r, c) for r in range(y.dim(k)) for c in range(x.dim(k)))
    rows = []
    for s, t in x.quiver.arrows:
        xa, ya = x.maps[(s, t)], y.maps[(s, t)]
        for r in range(y.dim(t)):
            for c in range(x.dim(s)):
                eq = [0] * len(variables)
                # (h_t · X_a)[r, c] - (Y_a · h_s)[r, c]
                for p in range(x.dim(t)):
                    if xa[p][c]:
                        eq[offset[t] + r * x.dim(t) + p] += xa[p][c]
                for q in range(y.dim(s)):
                    if ya[r][q]:
                        eq[offset[s] + q * x.dim(s) + c] -= ya[r][q]
                if any(eq):
                    rows.append(eq)
    return rows, variables


def hom_dim_points(x: PointRep, y: PointRep) -> int:
    """dim Hom(x, y) as the nullity of the intertwiner system."""
    rows, variables = _hom_system(x, y)
    return len(variables) - (la.rank(rows) if rows else 0)


def hom_basis(x: PointRep, y: PointRep) -> list[dict[int, la.Matrix]]:
    """A basis of Hom(x, y); each element maps vertex k to a dims_y[k] x dims_x[k] matrix."""
    rows, variables = _hom_system(x, y)
    basis = la.nullspace(rows, cols=len(variables))
    out = []
    for v in basis:
        h = {k: la.zeros(y.dim(k), x.dim(k)) for k in range(1, x.quiver.n + 1)}
        for value, (k, r, c) in zip(v, variables):
            h[k][r][c] = value
        out.append(h)
    return out


def decompose(point: PointRep) -> RepClass:
    """Isoclass of a point: Hom into every interval, then mesh-wise multiplicities."""
    q = point.quiver
    cache: dict[Interval, int] = {}

    def hom_into(e: Interval) -> int:
        if e not in cache:
            cache[e] = hom_dim_points(point, realize(q, RepClass.of(q.n, e)))
        return cache[e]

    counts = [multiplicity(q, RepClass.zero(q.n), e, hom_oracle=hom_into) for e in intervals_of(q.n)]
    if any(c < 0 for c in counts):
        raise InconsistentPoint(f"negative multiplicity while decomposing a point: {counts}")
    result = RepClass(q.n, counts)
    if result.dim() != point.dims:
        raise InconsistentPoint("decomposition does not account for the whole dimension vector")
    return result


# -- forms ---------------------------------------------------------------------


EpsilonForm = dict[int, la.Matrix]  # vertex k -> Gram matrix between V_k and V_{sigma(k)}


def epsilon_form(ctx: EpsilonContext, point: PointRep) -> EpsilonForm:
    """An ε-form on a realized ε-admissible point.

    Blocks U and ∇U (or two copies of a self-dual U in split type) are paired
    hyperbolically; a lone self-dual U carries a form on itself.  Signs
    alternate along the interval so the identity maps become compatible.
    """
    q = ctx.quiver
    n = q.n
    blocks = point.blocks
    if blocks is None:
        raise PreconditionViolated("epsilon_form needs a realized point")
    pos = block_positions(point)
    partner: dict[int, int] = {}
    first: set[int] = set()
    by_interval: dict[Interval, list[int]] = {}
    for b, u in enumerate(blocks):
        by_interval.setdefault(u, []).append(b)
    for u, bs in by_interval.items():
        dual = q.nabla(u)
        if dual != u:
            others = by_interval.get(dual, [])
            if len(others) != len(bs):
                raise PreconditionViolated(f"{u} and its dual {dual} occur with different multiplicities")
            for b, c in zip(bs, others):
                partner[b] = c
                if u < dual:
                    first.add(b)
        elif ctx.split:
            if len(bs) % 2:
                raise PreconditionViolated(f"self-dual {u} needs even multiplicity in split type")
            for b, c in zip(bs[::2], bs[1::2]):
                partner[b], partner[c] = c, b
                first.add(b)
        else:
            for b in bs:
                partner[b] = b
                first.add(b)

    gram = {k: la.zeros(point.dim(k), point.dim(q.sigma(k))) for k in range(1, n + 1)}
    for b, u in enumerate(blocks):
        if b not in first:
            continue
        c = partner[b]
        for k in range(u.i, u.j + 1):
            sk = q.sigma(k)
            sign = Fraction((-1) ** k)
            gram[k][pos[k][b]][pos[sk][c]] = sign
            if c != b:
                gram[sk][pos[sk][c]][pos[k][b]] = ctx.epsilon * sign
    return gram


def check_epsilon_point(ctx: EpsilonContext, point: PointRep, gram: EpsilonForm) -> Optional[str]:
    """None if (point, gram) is an ε-representation, otherwise a reason."""
    q = ctx.quiver
    for k in range(1, q.n + 1):
        g, gs = gram[k], gram[q.sigma(k)]
        if la.transpose(g, point.dim(q.sigma(k))) != [[ctx.epsilon * x for x in row] for row in gs]:
            return f"form is not ε-symmetric at vertex {k}"
        if point.dim(k) != point.dim(q.sigma(k)) or (point.dim(k) and la.rank(g) != point.dim(k)):
            return f"form is degenerate at vertex {k}"
    for s, t in q.arrows:
        a = point.maps[(s, t)]
        b = point.maps[(q.sigma(t), q.sigma(s))]
        lhs = la.matmul(la.transpose(a, point.dim(s)), gram[t], cols=point.dim(q.sigma(t)))
        rhs = la.matmul(gram[s], b, cols=point.dim(q.sigma(t)))
        if any(x + y for r1, r2 in zip(lhs, rhs) for x, y in zip(r1, r2)):
            return f"maps are not skew-adjoint for arrow {s}->{t}"
    return None


# -- subquotients --------------------------------------------------------------


def _coordinates(basis_cols: list[list], dim: int) -> la.Matrix:
    """Inverse of the matrix whose columns are basis_cols (a basis of the whole space)."""
    if dim == 0:
        return []
    return la.inverse(la.from_columns(basis_cols, dim))


def subquotient(
    point: PointRep, outer: dict[int, list[list]], inner: dict[int, list[list]]
) -> tuple[PointRep, dict[int, list[list]]]:
    """outer / inner for nested subrepresentations given by spanning column vectors.

    Returns the induced point and, per vertex, the vectors of ``outer`` chosen
    as a basis of the quotient.
    """
    q = point.quiver
    comp: dict[int, list[list]] = {}
    inv: dict[int, la.Matrix] = {}
    base: dict[int, int] = {}
    for k in range(1, q.n + 1):
        d = point.dim(k)
        ib = la.extend_basis([], inner[k], d)
        cb = la.extend_basis(ib, outer[k], d)
        rest = la.extend_basis(ib + cb, la.standard_basis(d), d)
        comp[k] = cb
        base[k] = len(ib)
        inv[k] = _coordinates(ib + cb + rest, d)
    dims = tuple(len(comp[k]) for k in range(1, q.n + 1))
    maps = {}
    for s, t in q.arrows:
        a = point.maps[(s, t)]
        cols = []
        for v in comp[s]:
            w = [sum((a[r][c] * v[c] for c in range(point.dim(s)) if a[r][c] and v[c]), Fraction(0)) for r in range(point.dim(t))]
            coords = [sum((inv[t][r][c] * w[c] for c in range(point.dim(t)) if w[c]), Fraction(0)) for r in range(point.dim(t))]
            lo, hi = base[t], base[t] + len(comp[t])
            if any(coords[hi:]):
                raise InternalError(f"subspace is not stable under arrow {s}->{t}")
            cols.append(coords[lo:hi])
        maps[(s, t)] = la.from_columns(cols, dims[t - 1]) if cols else [[] for _ in range(dims[t - 1])]
    return PointRep(q, dims, maps), comp


def image_columns(h: dict[int, la.Matrix], dims: Sequence[int]) -> dict[int, list[list]]:
    """Columns of a per-vertex map, as spanning vectors of its image."""
    return {k: la.transpose(mat, dims[k - 1]) if mat and mat[0] else [] for k, mat in h.items()}


def is_injective(h: dict[int, la.Matrix], source_dims: Sequence[int]) -> bool:
    return all(source_dims[k - 1] == 0 or la.rank(mat) == source_dims[k - 1] for k, mat in h.items())


def cokernel(point: PointRep, h: dict[int, la.Matrix], source_dims: Sequence[int]) -> PointRep:
    """point / image(h) for a morphism h into point."""
    full = {k: la.standard_basis(point.dim(k)) for k in range(1, point.quiver.n + 1)}
    quotient, _ = subquotient(point, full, image_columns(h, source_dims))
    return quotient
