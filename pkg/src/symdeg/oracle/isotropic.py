"""Isotropic embeddings, ε-subquotients and one-parameter degenerations on points.

Given an ε-representation (X, Ψ) and an interval L, a generic element of
Hom(L, X) is drawn with large random integer coefficients.  When the form can
be nonzero on its image (non-split types), the random element is moved along a
random line until the isotropy condition, a quadratic in one parameter,
holds.  This may require adjoining a square root of the discriminant.

For an isotropic embedding ι the flag ι(L) ⊂ ι(L)^⊥ ⊂ X gives a basis in
which the arrows are block upper triangular and the form is anti-diagonal.
The cocharacter diag(t, 1, 1/t) on that basis is an isometry, and its limit
at t = 0 splits off L ⊕ ∇L from the subquotient.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import InternalError, NegativeWeightEntry, NoRealPoint, NotEmbeddable, NotIsotropic
from ..quiver import Interval
from ..rep import EpsilonContext, RepClass
from . import linalg as la
from .field import sqrt_in_field
from .points import EpsilonForm, PointRep, hom_basis, image_columns, is_injective, realize, subquotient

Embedding = dict[int, la.Matrix]  # vertex -> dims_X[k] x dims_L[k]


def _combine(basis: list[Embedding], coeffs, dims_x, dims_l) -> Embedding:
    out = {}
    for k in basis[0]:
        mat = la.zeros(dims_x[k - 1], dims_l[k - 1])
        for h, c in zip(basis, coeffs):
            if not c:
                continue
            for r, row in enumerate(h[k]):
                for col, x in enumerate(row):
                    if x:
                        mat[r][col] = mat[r][col] + c * x
        out[k] = mat
    return out


def _pairing(ctx: EpsilonContext, gram: EpsilonForm, u: Embedding, v: Embedding, k: int) -> list:
    """Entries of u_k^T G_k v_{σk} (L is thin, so at most one entry)."""
    q = ctx.quiver
    uk, vs = u[k], v[q.sigma(k)]
    if not uk or not uk[0] or not vs or not vs[0]:
        return []
    left = la.matmul(la.transpose(uk), gram[k], cols=len(gram[k][0]) if gram[k] else 0)
    return [x for row in la.matmul(left, vs) for x in row]


def isotropy_defect(ctx: EpsilonContext, gram: EpsilonForm, iota: Embedding) -> list:
    """All entries of ∇ι ∘ Ψ ∘ ι; the embedding is isotropic iff they vanish."""
    return [x for k in range(1, ctx.n + 1) for x in _pairing(ctx, gram, iota, iota, k)]


def find_isotropic_embedding(
    ctx: EpsilonContext,
    point: PointRep,
    gram: EpsilonForm,
    l: Interval,
    rng: Optional[random.Random] = None,
    tries: int = 8,
    spread: int = 10**6,
) -> Embedding:
    """A generic injective isotropic map L -> point."""
    rng = rng or random.Random(0)
    q = ctx.quiver
    lpoint = realize(q, RepClass.of(q.n, l))
    basis = hom_basis(lpoint, point)
    if not basis:
        raise NotEmbeddable(f"Hom({l}, X) = 0")
    dx, dl = point.dims, lpoint.dims
    h = len(basis)

    def draw():
        return [Fraction(rng.randint(-spread, spread)) for _ in range(h)]

    for _ in range(tries):
        a = draw()
        iota = _combine(basis, a, dx, dl)
        if not any(isotropy_defect(ctx, gram, iota)):
            if is_injective(iota, dl):
                return iota
            continue
        # walk along a random line a + t b until the form vanishes on the image
        b = draw()
        ib = _combine(basis, b, dx, dl)
        polys = []
        for k in range(1, q.n + 1):
            p_aa = _pairing(ctx, gram, iota, iota, k)
            if not p_aa:
                continue
            p_ab = _pairing(ctx, gram, iota, ib, k)[0] + _pairing(ctx, gram, ib, iota, k)[0]
            p_bb = _pairing(ctx, gram, ib, ib, k)[0]
            polys.append((p_aa[0], p_ab, p_bb))
        alpha, beta, gamma = next(p for p in polys if any(p))
        if gamma == 0:
            if beta == 0:
                continue
            t = -alpha / beta
        else:
            root = sqrt_in_field(beta * beta - 4 * alpha * gamma)
            t = (root - beta) / (2 * gamma)
        cand = _combine(basis, [x + t * y for x, y in zip(a, b)], dx, dl)
        if not any(isotropy_defect(ctx, gram, cand)) and is_injective(cand, dl):
            return cand
    raise NoRealPoint(f"no isotropic embedding of {l} found after {tries} attempts")


def perp_space(ctx: EpsilonContext, point: PointRep, gram: EpsilonForm, iota: Embedding) -> dict[int, list[list]]:
    """Per vertex, a basis of ι(L)^⊥."""
    q = ctx.quiver
    out = {}
    for k in range(1, q.n + 1):
        sk = q.sigma(k)
        rows = []
        for w in image_columns({sk: iota[sk]}, point.dims)[sk]:
            gw = [sum((gram[k][r][c] * w[c] for c in range(point.dim(sk)) if w[c] and gram[k][r][c]), Fraction(0)) for r in range(point.dim(k))]
            rows.append(gw)
        out[k] = la.nullspace(rows, cols=point.dim(k))
    return out


def perp_subquotient(
    ctx: EpsilonContext, point: PointRep, gram: EpsilonForm, iota: Embedding
) -> tuple[PointRep, EpsilonForm]:
    """ι(L)^⊥ / ι(L) with its induced ε-form."""
    q = ctx.quiver
    if any(isotropy_defect(ctx, gram, iota)):
        raise NotIsotropic("the form does not vanish on the image of the embedding")
    perp = perp_space(ctx, point, gram, iota)
    inner = image_columns(iota, point.dims)
    y, comp = subquotient(point, perp, inner)
    induced = {}
    for k in range(1, q.n + 1):
        sk = q.sigma(k)
        ck = la.from_columns(comp[k], point.dim(k)) if comp[k] else []
        cs = la.from_columns(comp[sk], point.dim(sk)) if comp[sk] else []
        if not ck or not cs or not ck[0] or not cs[0]:
            induced[k] = [[] for _ in range(len(comp[k]))] if not comp[sk] else la.zeros(len(comp[k]), len(comp[sk]))
            continue
        induced[k] = la.matmul(la.matmul(la.transpose(ck), gram[k]), cs)
    return y, induced


@dataclass
class AdaptedPoint:
    """A point written in a basis adapted to ι(L) ⊂ ι(L)^⊥, with weights +1, 0, -1."""

    point: PointRep
    gram: EpsilonForm
    weights: dict[int, list[int]]


def adapted_basis(ctx: EpsilonContext, point: PointRep, gram: EpsilonForm, iota: Embedding) -> AdaptedPoint:
    """Change basis so that the flag is standard and the form is anti-diagonal in blocks."""
    q = ctx.quiver
    n = q.n
    ell = image_columns(iota, point.dims)
    perp = perp_space(ctx, point, gram, iota)
    mid = {k: la.extend_basis(ell[k], perp[k], point.dim(k)) for k in range(1, n + 1)}

    def pair(k: int, u: list, v: list):
        return sum(
            (u[r] * gram[k][r][c] * v[c] for r in range(len(u)) if u[r] for c in range(len(v)) if v[c] and gram[k][r][c]),
            Fraction(0),
        )

    top: dict[int, list[list]] = {}
    for k in range(1, n + 1):
        sk = q.sigma(k)
        if k > sk:
            continue
        zs = {}
        for a, b in ((k, sk), (sk, k)):
            rows = [[sum((gram[a][r][c] * w[c] for c in range(point.dim(b)) if w[c]), Fraction(0)) for r in range(point.dim(a))] for w in mid[b] + ell[b]]
            vecs = []
            for idx in range(len(ell[b])):
                rhs = [Fraction(0)] * len(mid[b]) + [Fraction(int(idx == j)) for j in range(len(ell[b]))]
                z = la.solve(rows, rhs)
                if z is None:
                    raise InternalError(f"form is degenerate on the flag at vertex {a}")
                vecs.append(z)
            zs[a] = vecs
        zk, zs_ = zs[k], zs[sk]
        c = [[pair(k, u, v) for v in zs_] for u in zk]
        if k == sk:
            half = [[x / 2 for x in row] for row in c]
            fixed = []
            for col in range(len(zk)):
                v = list(zk[col])
                for a_idx, lv in enumerate(ell[k]):
                    coef = half[a_idx][col]
                    if coef:
                        v = [x - coef * y for x, y in zip(v, lv)]
                fixed.append(v)
            top[k] = fixed
        else:
            top[k] = zk
            fixed = []
            for col in range(len(zs_)):
                v = list(zs_[col])
                for a_idx, lv in enumerate(ell[sk]):
                    coef = c[a_idx][col]
                    if coef:
                        v = [x - coef * y for x, y in zip(v, lv)]
                fixed.append(v)
            top[sk] = fixed

    bases = {k: ell[k] + mid[k] + top[k] for k in range(1, n + 1)}
    weights = {k: [1] * len(ell[k]) + [0] * len(mid[k]) + [-1] * len(top[k]) for k in range(1, n + 1)}
    mats = {}
    invs = {}
    for k in range(1, n + 1):
        if len(bases[k]) != point.dim(k):
            raise InternalError(f"adapted basis at vertex {k} has the wrong size")
        mats[k] = la.from_columns(bases[k], point.dim(k)) if point.dim(k) else []
        invs[k] = la.inverse(mats[k]) if point.dim(k) else []
    maps = {}
    for s, t in q.arrows:
        if point.dim(s) == 0 or point.dim(t) == 0:
            maps[(s, t)] = [[Fraction(0)] * point.dim(s) for _ in range(point.dim(t))]
            continue
        maps[(s, t)] = la.matmul(la.matmul(invs[t], point.maps[(s, t)]), mats[s])
    new_gram = {}
    for k in range(1, n + 1):
        sk = q.sigma(k)
        if point.dim(k) == 0:
            new_gram[k] = []
            continue
        new_gram[k] = la.matmul(la.matmul(la.transpose(mats[k]), gram[k]), mats[sk])
    return AdaptedPoint(PointRep(q, point.dims, maps), new_gram, weights)


def cocharacter_is_isometry(ctx: EpsilonContext, adapted: AdaptedPoint) -> bool:
    """diag(t, 1, 1/t) preserves the form iff it only pairs weights w and -w."""
    q = ctx.quiver
    for k in range(1, q.n + 1):
        wk, ws = adapted.weights[k], adapted.weights[q.sigma(k)]
        for r, row in enumerate(adapted.gram[k]):
            for c, x in enumerate(row):
                if x and wk[r] + ws[c] != 0:
                    return False
    return True


def one_param_limit(adapted: AdaptedPoint) -> PointRep:
    """Limit at t = 0 of λ(t)·X with λ(t) = t^weight on each basis vector."""
    point = adapted.point
    maps = {}
    for (s, t), mat in point.maps.items():
        ws, wt = adapted.weights[s], adapted.weights[t]
        out = []
        for r, row in enumerate(mat):
            new = []
            for c, x in enumerate(row):
                e = wt[r] - ws[c]
                if e < 0 and x:
                    raise NegativeWeightEntry(f"arrow {s}->{t} entry ({r},{c}) scales by t^{e}")
                new.append(x if e == 0 else Fraction(0))
            out.append(new)
        maps[(s, t)] = out
    return PointRep(point.quiver, point.dims, maps)
