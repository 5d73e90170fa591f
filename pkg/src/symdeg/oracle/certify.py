"""Matrix-level certificates for the reduction steps of a chain.

For each isotropic reduction, the working part of the class is realized with
its standard ε-form.  A generic isotropic copy of L is found, and two
decompositions are checked: ι(L)^⊥/ι(L) must give Y, and the limit of the
cocharacter must give L ⊕ ∇L ⊕ Y.  The fixed part is not touched and sits in
the weight-zero block.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from ..chain import Chain, ChainStep, StepKind
from ..errors import NegativeWeightEntry, NoRealPoint, NotEmbeddable
from ..rep import EpsilonContext, RepClass
from .isotropic import (
    adapted_basis,
    cocharacter_is_isometry,
    find_isotropic_embedding,
    isotropy_defect,
    one_param_limit,
    perp_subquotient,
)
from .points import check_epsilon_point, decompose, epsilon_form, realize


@dataclass(frozen=True)
class StepCertificate:
    index: int
    kind: StepKind
    ok: bool
    reason: str
    subquotient: Optional[RepClass] = None
    limit: Optional[RepClass] = None
    extended_field: bool = False

    def to_json(self) -> dict:
        out = {"step": self.index, "kind": self.kind.value, "ok": self.ok, "reason": self.reason}
        if self.subquotient is not None:
            out["subquotient"] = self.subquotient.to_json()
        if self.limit is not None:
            out["limit"] = self.limit.to_json()
        if self.kind is StepKind.ISOTROPIC_REDUCTION:
            out["extended_field"] = self.extended_field
        return out


def _uses_sqrt(iota) -> bool:
    return any(not hasattr(x, "denominator") for mat in iota.values() for row in mat for x in row)


def certify_step(ctx: EpsilonContext, step: ChainStep, index: int = 0, rng: Optional[random.Random] = None) -> StepCertificate:
    """Check one step on explicit matrices."""
    if step.kind is StepKind.SPLIT_OFF:
        return StepCertificate(index, step.kind, True, "common summand set aside")
    q = ctx.quiver

    def fail(reason: str, **kw) -> StepCertificate:
        return StepCertificate(index, step.kind, False, reason, **kw)

    point = realize(q, step.working)
    gram = epsilon_form(ctx, point)
    bad = check_epsilon_point(ctx, point, gram)
    if bad:
        return fail(f"realized form is invalid: {bad}")
    try:
        iota = find_isotropic_embedding(ctx, point, gram, step.l, rng=rng)
    except (NotEmbeddable, NoRealPoint) as exc:
        return fail(str(exc))
    sqrt = _uses_sqrt(iota)
    if any(isotropy_defect(ctx, gram, iota)):
        return fail("embedding is not isotropic", extended_field=sqrt)
    y_point, _ = perp_subquotient(ctx, point, gram, iota)
    y = decompose(y_point)
    if y != step.y:
        return fail(f"perp quotient is {y}, expected {step.y}", subquotient=y, extended_field=sqrt)
    adapted = adapted_basis(ctx, point, gram, iota)
    if not cocharacter_is_isometry(ctx, adapted):
        return fail("cocharacter does not preserve the form", subquotient=y, extended_field=sqrt)
    counts = tuple(
        (w.count(1), w.count(0) + f, w.count(-1))
        for w, f in zip((adapted.weights[k] for k in range(1, q.n + 1)), step.fixed.dim())
    )
    if counts != step.lambda_blocks:
        return fail(f"weight blocks {counts} differ from {step.lambda_blocks}", subquotient=y, extended_field=sqrt)
    try:
        limit = decompose(one_param_limit(adapted))
    except NegativeWeightEntry as exc:
        return fail(str(exc), subquotient=y, extended_field=sqrt)
    expected = RepClass.of(ctx.n, step.l, q.nabla(step.l)) + step.y
    if limit != expected:
        return fail(f"limit is {limit}, expected {expected}", subquotient=y, limit=limit, extended_field=sqrt)
    return StepCertificate(index, step.kind, True, "limit splits as L + dual(L) + Y", y, limit, sqrt)


def verify_chain(chain: Chain, rng: Optional[random.Random] = None) -> list[StepCertificate]:
    rng = rng or random.Random(0)
    return [certify_step(chain.ctx, s, k, rng) for k, s in enumerate(chain.steps)]
