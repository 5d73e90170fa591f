"""Degeneration chains between ε-classes, and the Hasse diagram of the Hom order.

For ε-classes M <= N (Hom order), :func:`build_chain` walks from M to N.
Every step does one of two things:

* It splits off an ε-summand shared by the current class and the target.
* It reduces isotropically: embed the path-minimal summand L of the target
  isotropically into the current class, and replace the class by
  L ⊕ ∇L ⊕ L^⊥/L.

Shared summands are moved into a fixed part that is carried along.  Every
recorded intermediate is therefore a full ε-class with the same dimension
vector as M.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .arquiver import ar_quiver
from .errors import InternalError, NotDegeneration, ParseError, PreconditionViolated, SymdegError
from .generic import Embeddability, can_embed_isotropically, generic_epsilon_subquotient, generic_quotient
from .quiver import Interval, SymmetricQuiver
from .rep import EpsilonContext, RepClass, epsilon_summand, hom_dim, is_epsilon_admissible, leq_hom, tables


class StepKind(enum.Enum):
    SPLIT_OFF = "split-off"
    ISOTROPIC_REDUCTION = "isotropic-reduction"


@dataclass(frozen=True)
class ChainStep:
    kind: StepKind
    l: Interval
    before: RepClass  # full class before the step
    after: RepClass  # full class after the step (equal to before for a split-off)
    fixed: RepClass  # part already set aside before the step
    working: RepClass  # before - fixed
    goal: RepClass  # what the working part still has to reach
    removed: RepClass  # the summand set aside by this step
    y: Optional[RepClass] = None  # L^⊥/L, for reductions
    lambda_blocks: Optional[tuple[tuple[int, int, int], ...]] = None

    def to_json(self) -> dict:
        out = {
            "kind": self.kind.value,
            "L": {"i": self.l.i, "j": self.l.j},
            "before": self.before.to_json(),
            "after": self.after.to_json(),
            "removed": self.removed.to_json(),
            "fixed": self.fixed.to_json(),
            "goal": self.goal.to_json(),
        }
        if self.y is not None:
            out["Y"] = self.y.to_json()
            out["lambda_blocks"] = [list(b) for b in self.lambda_blocks or ()]
        return out

    @classmethod
    def from_json(cls, n: int, obj: dict) -> "ChainStep":
        try:
            rep = lambda key: RepClass.from_json(n, obj[key])  # noqa: E731
            before, fixed = rep("before"), rep("fixed")
            y = rep("Y") if "Y" in obj else None
            blocks = tuple(tuple(int(x) for x in b) for b in obj["lambda_blocks"]) if y is not None else None
            return cls(
                StepKind(obj["kind"]), Interval(int(obj["L"]["i"]), int(obj["L"]["j"])), before, rep("after"),
                fixed, before - fixed, rep("goal"), rep("removed"), y, blocks,
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SymdegError):
                raise
            raise ParseError(f"malformed chain step: {exc}") from exc


@dataclass(frozen=True)
class Chain:
    ctx: EpsilonContext
    source: RepClass
    target: RepClass
    steps: tuple[ChainStep, ...]

    @property
    def reductions(self) -> list[ChainStep]:
        return [s for s in self.steps if s.kind is StepKind.ISOTROPIC_REDUCTION]

    @property
    def intermediates(self) -> list[RepClass]:
        """M(0), ..., M(h): the source followed by the class after each reduction."""
        return [self.source] + [s.after for s in self.reductions]

    def __len__(self) -> int:
        return len(self.reductions)

    def to_json(self) -> dict:
        return {
            "quiver": str(self.ctx.quiver),
            "epsilon": self.ctx.epsilon,
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "length": len(self),
            "intermediates": [m.to_json() for m in self.intermediates],
            "steps": [s.to_json() for s in self.steps],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Chain":
        """Inverse of :meth:`to_json`; the redundant fields are not trusted, see :func:`validate_chain`."""
        try:
            q = SymmetricQuiver.parse(obj["quiver"])
            ctx = EpsilonContext(q, int(obj["epsilon"]))
            steps = tuple(ChainStep.from_json(q.n, s) for s in obj["steps"])
            return cls(ctx, RepClass.from_json(q.n, obj["source"]), RepClass.from_json(q.n, obj["target"]), steps)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SymdegError):
                raise
            raise ParseError(f"malformed chain: {exc}") from exc

    def to_table(self) -> str:
        """Each intermediate as multiplicities drawn on the AR quiver."""
        g = ar_quiver(self.ctx.quiver)
        draw = lambda m: g.grid(dict(m.items()), blank="0")  # noqa: E731
        lines = [f"# {self.ctx}: {len(self)} reduction step(s)", "", f"M(0) = {self.source}", draw(self.source)]
        k = 0
        for s in self.steps:
            if s.kind is StepKind.SPLIT_OFF:
                lines.append(f"(set aside {s.removed})\n")
            else:
                k += 1
                lines += [f"M({k}) = {s.after}   reducing by {s.l}, Y = {s.y}", draw(s.after)]
        return "\n".join(lines)


def _check_inputs(ctx: EpsilonContext, m: RepClass, n: RepClass) -> None:
    for name, x in (("source", m), ("target", n)):
        if x.n != ctx.n:
            raise PreconditionViolated(f"{name} lives on A{x.n}, not A{ctx.n}")
        if not is_epsilon_admissible(ctx, x):
            raise PreconditionViolated(f"{name} {x} is not {ctx.epsilon:+d}-admissible")


def _lambda_blocks(ctx: EpsilonContext, full: RepClass, l: Interval) -> tuple[tuple[int, int, int], ...]:
    dl = l.dim(ctx.n)
    dn = ctx.quiver.dim_nabla(dl)
    return tuple((a, d - a - b, b) for d, a, b in zip(full.dim(), dl, dn))


def _common_summands(ctx: EpsilonContext, a: RepClass, b: RepClass) -> list[tuple[Interval, RepClass]]:
    q = ctx.quiver
    out = []
    for u in a.summands():
        dual = q.nabla(u)
        if dual < u:
            continue
        k = min(a.mult(u), b.mult(u))
        if q.is_self_dual(u) and ctx.split:
            k //= 2  # self-dual summands come in pairs here
        if k:
            out.append((u, epsilon_summand(ctx, u) * k))
    return out


def choose_summand(ctx: EpsilonContext, target: RepClass) -> Interval:
    """The path-minimal summand of ``target``, lexicographically first among ties."""
    g = ar_quiver(ctx.quiver)
    return min(g.minimal(target.summands()))


def _strip_common(ctx, steps, fixed, cur, goal):
    for u, e in _common_summands(ctx, cur, goal):
        full = fixed + cur
        steps.append(ChainStep(StepKind.SPLIT_OFF, u, full, full, fixed, cur, goal, e))
        fixed, cur, goal = fixed + e, cur - e, goal - e
    return fixed, cur, goal


def _try_reduce(ctx: EpsilonContext, cur: RepClass, goal: RepClass, l: Interval) -> Optional[tuple[RepClass, RepClass]]:
    """(Y, remaining goal) if reducing by L is certified and stays above the goal, else None."""
    q = ctx.quiver
    if q.is_self_dual(l):
        return None
    if can_embed_isotropically(ctx, cur, l) is not Embeddability.YES:
        return None
    y = generic_epsilon_subquotient(ctx, cur, l)
    rest = goal - RepClass.of(ctx.n, l, q.nabla(l))
    if not leq_hom(q, y, rest):
        return None
    return y, rest


def reduction_candidates(ctx: EpsilonContext, cur: RepClass, goal: RepClass) -> list[Interval]:
    """Summands L of the goal that M maps onto as well as the goal does: [L, goal] = [L, cur]."""
    q = ctx.quiver
    out = []
    for l in goal.summands():
        lr = RepClass.of(ctx.n, l)
        if not q.is_self_dual(l) and hom_dim(q, lr, goal) == hom_dim(q, lr, cur):
            out.append(l)
    return out


def _shortest_plan(ctx: EpsilonContext, m: RepClass, n: RepClass) -> list[Interval]:
    """Sequence of reducing summands giving the fewest reductions (lexicographically least among ties)."""

    @lru_cache(maxsize=None)
    def best(cur: RepClass, goal: RepClass) -> Optional[tuple[Interval, ...]]:
        for _, e in _common_summands(ctx, cur, goal):
            cur, goal = cur - e, goal - e
        if cur == goal:
            return ()
        found: Optional[tuple[Interval, ...]] = None
        for l in reduction_candidates(ctx, cur, goal):
            step = _try_reduce(ctx, cur, goal, l)
            if step is None:
                continue
            tail = best(*step)
            if tail is None:
                continue
            plan = (l,) + tail
            if found is None or (len(plan), plan) < (len(found), found):
                found = plan
        return found

    plan = best(m, n)
    if plan is None:
        raise InternalError(f"no reduction sequence from {m} to {n}")
    return list(plan)


def build_chain(ctx: EpsilonContext, m: RepClass, n: RepClass, strategy: str = "minimal") -> Chain:
    """A chain of split-offs and isotropic reductions from M to N.

    ``strategy="minimal"`` always reduces by the path-minimal summand of what
    is left of N (lexicographically first among ties).  ``strategy="shortest"``
    searches over every summand L with [L, N'] = [L, M'] and keeps a chain with
    the fewest reductions.

    Raises NotDegeneration when N is not below M in the Hom order.
    """
    if strategy not in ("minimal", "shortest"):
        raise PreconditionViolated(f"unknown strategy {strategy!r}")
    _check_inputs(ctx, m, n)
    q = ctx.quiver
    if not leq_hom(q, m, n):
        raise NotDegeneration(f"{n} is not a degeneration of {m}")
    plan = _shortest_plan(ctx, m, n) if strategy == "shortest" else None
    steps: list[ChainStep] = []
    fixed = RepClass.zero(ctx.n)
    cur, goal = m, n
    while True:
        fixed, cur, goal = _strip_common(ctx, steps, fixed, cur, goal)
        if cur == goal:
            break
        l = plan.pop(0) if plan is not None else choose_summand(ctx, goal)
        if q.is_self_dual(l):
            raise InternalError(f"self-dual minimal summand {l} of {goal} is missing from {cur}")
        reduced = _try_reduce(ctx, cur, goal, l)
        if reduced is None:
            raise InternalError(f"reduction of {cur} by {l} towards {goal} is not certified")
        y, rest = reduced
        pair = RepClass.of(ctx.n, l, q.nabla(l))
        before = fixed + cur
        steps.append(
            ChainStep(
                StepKind.ISOTROPIC_REDUCTION, l, before, fixed + pair + y, fixed, cur, goal, pair, y,
                _lambda_blocks(ctx, before, l),
            )
        )
        fixed, cur, goal = fixed + pair, y, rest
    return Chain(ctx, m, n, tuple(steps))


def validate_chain(chain: Chain, ctx: Optional[EpsilonContext] = None) -> tuple[bool, str]:
    """Re-check every step of a chain independently of how it was built."""
    ctx = ctx or chain.ctx
    q = ctx.quiver
    d = chain.source.dim()
    fixed = RepClass.zero(ctx.n)
    cur, goal = chain.source, chain.target
    prev_full = chain.source
    for k, s in enumerate(chain.steps):
        where = f"step {k} ({s.kind.value}, L={s.l})"
        if s.before != prev_full or s.fixed != fixed or s.working != cur or s.goal != goal:
            return False, f"{where}: bookkeeping does not continue the previous step"
        if s.before != fixed + cur:
            return False, f"{where}: class is not fixed part plus working part"
        if s.after.dim() != d:
            return False, f"{where}: dimension vector changed"
        if not is_epsilon_admissible(ctx, s.after):
            return False, f"{where}: {s.after} is not ε-admissible"
        if s.kind is StepKind.SPLIT_OFF:
            if not is_epsilon_admissible(ctx, s.removed) or not s.removed:
                return False, f"{where}: removed part {s.removed} is not an ε-class"
            if not cur.contains(s.removed) or not goal.contains(s.removed):
                return False, f"{where}: {s.removed} is not common to {cur} and {goal}"
            if s.after != s.before:
                return False, f"{where}: a split-off must not change the class"
            fixed, cur, goal = fixed + s.removed, cur - s.removed, goal - s.removed
        else:
            try:
                generic_quotient(q, cur, s.l)
            except Exception as exc:  # noqa: BLE001
                return False, f"{where}: generic quotient fails ({exc})"
            if can_embed_isotropically(ctx, cur, s.l) is not Embeddability.YES:
                return False, f"{where}: isotropic embedding not certified"
            y = generic_epsilon_subquotient(ctx, cur, s.l)
            if s.y != y:
                return False, f"{where}: recorded Y={s.y} but the ε-subquotient is {y}"
            pair = RepClass.of(ctx.n, s.l, q.nabla(s.l))
            if s.removed != pair or s.after != fixed + pair + y:
                return False, f"{where}: class after the step is inconsistent"
            if not goal.contains(pair):
                return False, f"{where}: {pair} is not part of the remaining target"
            lr = RepClass.of(ctx.n, s.l)
            if hom_dim(q, lr, goal) != hom_dim(q, lr, cur):
                return False, f"{where}: Hom from L to the class and to the target differ"
            if not leq_hom(q, s.before, s.after):
                return False, f"{where}: {s.after} is not a degeneration of {s.before}"
            if s.lambda_blocks != _lambda_blocks(ctx, s.before, s.l):
                return False, f"{where}: cocharacter blocks are wrong"
            fixed, cur, goal = fixed + pair, y, goal - pair
        prev_full = s.after
    if prev_full != chain.target or cur != goal:
        return False, f"chain ends at {prev_full}, not at {chain.target}"
    return True, "ok"


# -- Hasse diagram ---------------------------------------------------------------


@dataclass(frozen=True)
class HasseDiagram:
    ctx: EpsilonContext
    dim: tuple[int, ...]
    nodes: tuple[RepClass, ...]
    covers: tuple[tuple[int, int], ...]  # (a, b): nodes[b] covers nodes[a], i.e. a degenerates to b

    def to_json(self) -> dict:
        return {
            "quiver": str(self.ctx.quiver),
            "epsilon": self.ctx.epsilon,
            "dim": list(self.dim),
            "nodes": [{"id": k, **m.to_json()} for k, m in enumerate(self.nodes)],
            "covers": [list(c) for c in self.covers],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "HasseDiagram":
        try:
            q = SymmetricQuiver.parse(obj["quiver"])
            nodes = tuple(RepClass.from_json(q.n, m) for m in sorted(obj["nodes"], key=lambda m: m["id"]))
            covers = tuple((int(a), int(b)) for a, b in obj["covers"])
            return cls(EpsilonContext(q, int(obj["epsilon"])), tuple(int(x) for x in obj["dim"]), nodes, covers)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SymdegError):
                raise
            raise ParseError(f"malformed Hasse diagram: {exc}") from exc

    def to_dot(self) -> str:
        lines = [f'digraph "Hasse({self.ctx.quiver}, eps={self.ctx.epsilon:+d})" {{', "  rankdir=TB;"]
        for k, m in enumerate(self.nodes):
            lines.append(f'  n{k} [label="{m}"];')
        for a, b in self.covers:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        lines = [f"# {self.ctx}, dim {list(self.dim)}: {len(self.nodes)} classes, {len(self.covers)} covers"]
        lines += [f"{k}: {m}" for k, m in enumerate(self.nodes)]
        lines += [f"{a} -> {b}" for a, b in self.covers]
        return "\n".join(lines) + "\n"


def hom_order_matrix(ctx: EpsilonContext, nodes: Sequence[RepClass]) -> np.ndarray:
    """leq[a, b] is True when nodes[a] <= nodes[b] in the Hom order (all of one dimension vector)."""
    h = tables(ctx.quiver).hom
    vecs = np.array([m.counts for m in nodes], dtype=np.int64).reshape(len(nodes), -1) @ h
    return np.all(vecs[:, None, :] <= vecs[None, :, :], axis=2)


def covering_relations(leq: np.ndarray, rows: Optional[Iterable[int]] = None) -> list[tuple[int, int]]:
    """Pairs (a, b) with a < b and nothing strictly between, for the given rows a (default all)."""
    strict = leq & ~np.eye(len(leq), dtype=bool)
    covers = []
    for a in range(len(leq)) if rows is None else rows:
        for b in np.flatnonzero(strict[a]):
            between = strict[a] & strict[:, b]
            if not between.any():
                covers.append((a, int(b)))
    return covers


def hasse(ctx: EpsilonContext, dim: Sequence[int]) -> HasseDiagram:
    """Covering relations of the Hom order on the ε-classes of dimension ``dim``."""
    from .oracle.enumeration import enumerate_epsilon_classes

    dim = tuple(dim)
    if dim != ctx.quiver.dim_nabla(dim):
        raise PreconditionViolated(f"dimension vector {list(dim)} is not symmetric")
    nodes = tuple(enumerate_epsilon_classes(ctx, dim))
    leq = hom_order_matrix(ctx, nodes) if nodes else np.zeros((0, 0), dtype=bool)
    return HasseDiagram(ctx, dim, nodes, tuple(covering_relations(leq)))


def chain_json(chain: Chain) -> str:
    return json.dumps(chain.to_json(), indent=2, sort_keys=True)
