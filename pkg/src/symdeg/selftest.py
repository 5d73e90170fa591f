"""Exhaustive invariant suites over small symmetric quivers.

Each suite is split into independent tasks (one per quiver, or per quiver and
sign), so that ``run_suites(parallel=True)`` can fan them out to worker
processes.  Results are merged in task order, which keeps the output
independent of scheduling.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .arquiver import ar_quiver
from .chain import build_chain, validate_chain
from .errors import NotDegeneration, SymdegError
from .quiver import SymmetricQuiver, compatible_orientations
from .oracle.enumeration import count_classes, enumerate_classes, enumerate_epsilon_classes, symmetric_dims
from .oracle.points import hom_dim_points, realize
from .rep import EpsilonContext, HomProfile, RepClass, delta, hom_dim_linear, is_delta_fixed, is_epsilon_admissible

MAX_REPORTED = 20


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self, timings: bool = False) -> dict:
        out = {"suite": self.name, "checked": self.checked, "failures": len(self.failures), "examples": self.failures[:MAX_REPORTED]}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


Outcome = tuple[int, list[str]]


def _quivers(n_max: int, n_min: int = 2) -> list[SymmetricQuiver]:
    return [q for n in range(n_min, n_max + 1) for q in compatible_orientations(n)]


# -- interval suites -----------------------------------------------------------


def hom_three_way(text: str) -> Outcome:
    """Hom by AR-quiver paths, by linear constraints and by matrices agree."""
    q = SymmetricQuiver.parse(text)
    g = ar_quiver(q)
    points = {u: realize(q, RepClass.of(q.n, u)) for u in q.intervals}
    bad, checked = [], 0
    for a in q.intervals:
        for b in q.intervals:
            values = (g.hom_dim(a, b), hom_dim_linear(q, a, b), hom_dim_points(points[a], points[b]))
            checked += 1
            if len(set(values)) != 1:
                bad.append(f"{q}: Hom({a},{b}) path/linear/points = {values}")
    return checked, bad


def one_dimensional(text: str) -> Outcome:
    """Hom and Ext between intervals are at most one-dimensional and never both nonzero."""
    q = SymmetricQuiver.parse(text)
    g = ar_quiver(q)
    bad, checked = [], 0
    for a in q.intervals:
        for b in q.intervals:
            h, e = g.hom_dim(a, b), g.ext_dim(a, b)
            checked += 1
            if h > 1 or e > 1 or h * e:
                bad.append(f"{q}: [{a},{b}] = {h}, ext = {e}")
    return checked, bad


def ar_euler(text: str) -> Outcome:
    """Ext from the AR formula matches Hom minus the Euler form."""
    q = SymmetricQuiver.parse(text)
    g = ar_quiver(q)
    bad, checked = [], 0
    for a in q.intervals:
        for b in q.intervals:
            checked += 1
            euler = q.euler_form(a.dim(q.n), b.dim(q.n))
            if g.hom_dim(a, b) - g.ext_dim(a, b) != euler:
                bad.append(f"{q}: [{a},{b}] - ext != <dim,dim> = {euler}")
    return checked, bad


# -- class suites ---------------------------------------------------------------


def enumeration(text: str, eps: int, max_total: int) -> Outcome:
    """Class enumeration is complete and the ε-filter agrees with admissibility."""
    q = SymmetricQuiver.parse(text)
    ctx = EpsilonContext(q, eps)
    bad, checked = [], 0
    for d in symmetric_dims(q.n, max_total):
        every = enumerate_classes(q.n, d)
        checked += 1
        if len(every) != count_classes(q.n, d) or len(set(every)) != len(every):
            bad.append(f"{q} {d}: {len(every)} classes, expected {count_classes(q.n, d)}")
        if enumerate_epsilon_classes(ctx, d) != [m for m in every if is_epsilon_admissible(ctx, m)]:
            bad.append(f"{ctx} {d}: ε-filter disagrees")
    return checked, bad


def chain_round_trip(text: str, eps: int, max_total: int) -> Outcome:
    """A chain exists exactly for Hom-ordered pairs, and every chain validates."""
    q = SymmetricQuiver.parse(text)
    ctx = EpsilonContext(q, eps)
    prof = HomProfile(q)
    bad, checked = [], 0
    for d in symmetric_dims(q.n, max_total):
        classes = enumerate_epsilon_classes(ctx, d)
        for m in classes:
            for n in classes:
                checked += 1
                le = prof.leq(m, n)
                try:
                    ok, why = validate_chain(build_chain(ctx, m, n))
                except NotDegeneration:
                    if le:
                        bad.append(f"{ctx}: no chain for {m} <= {n}")
                    continue
                except SymdegError as exc:
                    bad.append(f"{ctx}: {m} -> {n} raised {exc!r}")
                    continue
                if not le:
                    bad.append(f"{ctx}: chain built for {m} not <= {n}")
                elif not ok:
                    bad.append(f"{ctx}: {m} -> {n}: {why}")
    return checked, bad


def delta_parity(text: str, eps: int, max_total: int) -> Outcome:
    """In split types, [N,F] - [M,F] is even for every δ-fixed F."""
    q = SymmetricQuiver.parse(text)
    ctx = EpsilonContext(q, eps)
    if not ctx.split:
        return 0, []
    fixed = [f for f in q.intervals if is_delta_fixed(q, f)]
    bad, checked = [], 0
    for d in symmetric_dims(q.n, max_total):
        classes = enumerate_epsilon_classes(ctx, d)
        for m in classes:
            for n in classes:
                for f in fixed:
                    checked += 1
                    if delta(q, m, n, f) % 2:
                        bad.append(f"{ctx}: delta({m}, {n}, {f}) is odd")
    return checked, bad


def isodeg_limits(text: str, eps: int, max_total: int, samples: int, seed: int) -> Outcome:
    """Sampled chain steps certified on matrices: the perp quotient and the cocharacter limit."""
    from .oracle.certify import verify_chain

    q = SymmetricQuiver.parse(text)
    ctx = EpsilonContext(q, eps)
    prof = HomProfile(q)
    pairs = []
    for d in symmetric_dims(q.n, max_total):
        classes = enumerate_epsilon_classes(ctx, d)
        pairs += [(m, n) for m in classes for n in classes if m != n and prof.leq(m, n)]
    rng = random.Random(seed)
    picked = rng.sample(pairs, min(samples, len(pairs)))
    bad, checked = [], 0
    for m, n in picked:
        for cert in verify_chain(build_chain(ctx, m, n), rng):
            checked += 1
            if not cert.ok:
                bad.append(f"{ctx}: {m} -> {n} step {cert.index}: {cert.reason}")
    return checked, bad


# -- driver -----------------------------------------------------------------------


def _call(job: tuple[Callable[..., Outcome], tuple]) -> tuple[Outcome, float]:
    fn, args = job
    t = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t


def suite_jobs(n_max: int, max_total: int, samples: int = 10, seed: int = 0) -> dict[str, list[tuple[Callable[..., Outcome], tuple]]]:
    quivers = [str(q) for q in _quivers(n_max)]
    signed = [(t, e) for t in quivers for e in (1, -1)]
    return {
        "hom-three-way": [(hom_three_way, (t,)) for t in quivers],
        "one-dimensional": [(one_dimensional, (t,)) for t in quivers],
        "ar-euler": [(ar_euler, (t,)) for t in quivers],
        "enumeration": [(enumeration, (t, e, max_total)) for t, e in signed],
        "chain-round-trip": [(chain_round_trip, (t, e, max_total)) for t, e in signed],
        "delta-parity": [(delta_parity, (t, e, max_total)) for t, e in signed],
        "isodeg-limits": [(isodeg_limits, (t, e, min(max_total, 6), samples, seed)) for t, e in signed if SymmetricQuiver.parse(t).n <= 4],
    }


def run_suites(
    n_max: int = 5, max_total: int = 12, only: Iterable[str] | None = None, parallel: bool = False, workers: int | None = None
) -> list[SuiteResult]:
    jobs = suite_jobs(n_max, max_total)
    names = [s for s in jobs if only is None or s in set(only)]
    flat = [(name, job) for name in names for job in jobs[name]]
    if parallel:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outs = list(pool.map(_call, [job for _, job in flat]))
    else:
        outs = [_call(job) for _, job in flat]
    results = {name: SuiteResult(name) for name in names}
    for (name, _), ((checked, bad), secs) in zip(flat, outs):
        r = results[name]
        r.checked += checked
        r.failures.extend(bad)
        r.seconds += secs
    return [results[name] for name in names]
