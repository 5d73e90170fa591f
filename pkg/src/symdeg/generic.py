"""Generic quotients, generic kernels and generic ε-subquotients.

Everything here is read off the AR quiver.  To quotient a class M by a
generic copy of an interval L, look at the summands of M that receive a
nonzero map from L.  Take the path-minimal ones T0_1, ..., T0_r, listed from
the top level down.  A generic embedding of L hits exactly these.  The
cokernel on that part is

* the joins T0_i v T0_{i+1} between consecutive summands,
* plus at most one extra summand at each end, where the NE (top) or SE
  (bottom) sectional ray leaves the hammock of L.

The remaining summands of M pass through unchanged.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .arquiver import NE, SE, ar_quiver
from .errors import InternalError, NoSurjection, NotEmbeddable, ParseError, PreconditionViolated
from .quiver import Interval, SymmetricQuiver
from .rep import EpsilonContext, RepClass, ext_dim, hom_interval, is_epsilon_admissible, nabla_rep


class Embeddability(enum.Enum):
    YES = "yes"
    NO = "no"
    HYPOTHESES_FAIL = "hypotheses-fail"


@dataclass(frozen=True)
class GenericQuotient:
    """Result of quotienting M by a generic copy of L."""

    quotient: RepClass
    hit: tuple[Interval, ...]  # T0, top to bottom
    produced: tuple[Optional[Interval], ...]  # T1_0 .. T1_r, None for a zero end
    untouched: RepClass  # M with one copy of each hit summand removed

    def hit_class(self) -> RepClass:
        return RepClass.of(self.quotient.n, *self.hit)

    def produced_class(self) -> RepClass:
        return RepClass.of(self.quotient.n, *(u for u in self.produced if u is not None))

    def to_json(self) -> dict:
        return {
            "quotient": self.quotient.to_json(),
            "hit": [[u.i, u.j] for u in self.hit],
            "produced": [None if u is None else [u.i, u.j] for u in self.produced],
            "untouched": self.untouched.to_json(),
        }

    @classmethod
    def from_json(cls, n: int, obj: dict) -> "GenericQuotient":
        try:
            return cls(
                RepClass.from_json(n, obj["quotient"]),
                tuple(Interval(int(i), int(j)) for i, j in obj["hit"]),
                tuple(None if u is None else Interval(int(u[0]), int(u[1])) for u in obj["produced"]),
                RepClass.from_json(n, obj["untouched"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed generic quotient JSON: {exc}") from exc


def _dim_sum(n: int, us) -> list[int]:
    d = [0] * n
    for u in us:
        for k in range(u.i - 1, u.j):
            d[k] += 1
    return d


def generic_quotient(quiver: SymmetricQuiver, m: RepClass, l: Interval) -> GenericQuotient:
    """Isoclass of M / L for a generic embedding of L into M.

    Raises NotEmbeddable when L admits no embedding into M.
    """
    g = ar_quiver(quiver)
    n = quiver.n
    hammock = g.hammock(l)
    touched = [u for u in m.summands() if u in hammock]
    if not touched:
        raise NotEmbeddable(f"no nonzero map {l} -> {m}")
    hit = sorted(g.minimal(touched), key=g.level.__getitem__)

    spare = [a - b for a, b in zip(_dim_sum(n, hit), _dim_sum(n, [l]))]
    if min(spare) < 0:
        raise NotEmbeddable(f"{l} does not embed into {m}")

    produced: list[Optional[Interval]] = []
    if g.has_sectional_path(l, hit[0], NE):
        produced.append(None)
    else:
        top = next((w for w in g.ray(hit[0], NE) if w not in hammock), None)
        if top is None:
            raise NotEmbeddable(f"{l} does not embed into {m} (top end)")
        produced.append(top)
    for a, b in zip(hit, hit[1:]):
        j = g.join(a, b)
        if j is None:
            raise NotEmbeddable(f"{a} and {b} have no join")
        produced.append(j)
    if g.has_sectional_path(l, hit[-1], SE):
        produced.append(None)
    else:
        bottom = next((w for w in g.ray(hit[-1], SE) if w not in hammock), None)
        if bottom is None:
            raise NotEmbeddable(f"{l} does not embed into {m} (bottom end)")
        produced.append(bottom)

    made = [u for u in produced if u is not None]
    if _dim_sum(n, made) != spare:
        raise InternalError(f"generic quotient of {m} by {l}: dimension check failed")
    untouched = m - RepClass.of(n, *hit)
    quotient = untouched + RepClass.of(n, *made)
    return GenericQuotient(quotient, tuple(hit), tuple(produced), untouched)


def generic_kernel(quiver: SymmetricQuiver, m: RepClass, q: Interval) -> RepClass:
    """Isoclass of the kernel of a generic epimorphism M -> Q, by duality."""
    try:
        dual = generic_quotient(quiver, nabla_rep(m), quiver.nabla(q))
    except NotEmbeddable as exc:
        raise NoSurjection(f"{m} does not map onto {q}") from exc
    return nabla_rep(dual.quotient)


def can_embed_isotropically(ctx: EpsilonContext, m: RepClass, l: Interval) -> Embeddability:
    """Decide whether a generic embedding of L into the ε-class M can be made isotropic.

    In split types every embedding works.  Otherwise the answer is YES when
    Hom(L, ∇L) = 0, or when the generic quotient Q still maps onto ∇L with a
    kernel K satisfying Ext^1(L, K) = 0.  Outside those sufficient conditions
    the answer is HYPOTHESES_FAIL rather than NO.
    """
    if not is_epsilon_admissible(ctx, m):
        raise PreconditionViolated(f"{m} is not {ctx.epsilon:+d}-admissible")
    q = ctx.quiver
    try:
        gq = generic_quotient(q, m, l)
    except NotEmbeddable:
        return Embeddability.NO
    if ctx.split:
        return Embeddability.YES
    dual = q.nabla(l)
    if hom_interval(q, l, dual) == 0:
        return Embeddability.YES
    try:
        k = generic_kernel(q, gq.quotient, dual)
    except NoSurjection:
        return Embeddability.HYPOTHESES_FAIL
    if ext_dim(q, RepClass.of(q.n, l), k) == 0:
        return Embeddability.YES
    return Embeddability.HYPOTHESES_FAIL


def generic_epsilon_subquotient(ctx: EpsilonContext, m: RepClass, l: Interval) -> RepClass:
    """Isoclass of ι(L)^⊥ / ι(L) for a generic isotropic embedding ι of L into M."""
    verdict = can_embed_isotropically(ctx, m, l)
    if verdict is not Embeddability.YES:
        raise PreconditionViolated(f"{l} has no certified isotropic embedding into {m} ({verdict.value})")
    q = ctx.quiver
    gq = generic_quotient(q, m, l)
    if ctx.split:
        hit = gq.hit_class()
        try:
            rest = m - hit - nabla_rep(hit)
        except PreconditionViolated as exc:
            raise PreconditionViolated(f"{m} does not contain the hit summands {hit} together with their duals") from exc
        made = gq.produced_class()
        y = made + nabla_rep(made) + rest
    else:
        y = generic_quotient(q, nabla_rep(gq.quotient), l).quotient
    dl = l.dim(q.n)
    expected = tuple(a - b - c for a, b, c in zip(m.dim(), dl, q.dim_nabla(dl)))
    if y.dim() != expected or not is_epsilon_admissible(ctx, y):
        raise InternalError(f"ε-subquotient {y} of {m} by {l} is inconsistent")
    return y
