"""Enumerate isoclasses with a given dimension vector (Kostant partitions)."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

from ..quiver import Interval
from ..rep import EpsilonContext, RepClass, interval_index, is_epsilon_admissible


def _partitions(d: list[int], n: int) -> Iterator[dict[Interval, int]]:
    start = next((k for k in range(n) if d[k]), None)
    if start is None:
        yield {}
        return
    i = start + 1  # leftmost vertex still to cover; every interval through it starts at i

    def choose(j: int, tail: int, chosen: dict[Interval, int]) -> Iterator[dict[Interval, int]]:
        # pick the multiplicity of [i, j]; ``tail`` counts chosen intervals reaching past j
        if j == i:
            c = d[i - 1] - tail
            if c < 0:
                return
            part = dict(chosen)
            if c:
                part[Interval(i, i)] = c
            rest = list(d)
            for u, m in part.items():
                for k in range(u.i - 1, u.j):
                    rest[k] -= m
            for more in _partitions(rest, n):
                yield {**part, **more}
            return
        for c in range(min(d[j - 1], d[i - 1]) - tail, -1, -1):
            nxt = dict(chosen)
            if c:
                nxt[Interval(i, j)] = c
            yield from choose(j - 1, tail + c, nxt)

    yield from choose(n, 0, {})


def enumerate_classes(n: int, dim: Sequence[int]) -> list[RepClass]:
    """Every isoclass of A_n-representations with dimension vector ``dim``, sorted."""
    if len(dim) != n or any(x < 0 for x in dim):
        raise ValueError(f"bad dimension vector {dim} for A{n}")
    idx = interval_index(n)
    out = set()
    for part in _partitions(list(dim), n):
        counts = [0] * len(idx)
        for u, c in part.items():
            counts[idx[u]] = c
        rc = RepClass(n, counts)
        if rc.dim() == tuple(dim):
            out.add(rc)
    return sorted(out)


def enumerate_epsilon_classes(ctx: EpsilonContext, dim: Sequence[int]) -> list[RepClass]:
    """The ε-admissible isoclasses with dimension vector ``dim``, sorted."""
    return [m for m in enumerate_classes(ctx.n, dim) if is_epsilon_admissible(ctx, m)]


def count_classes(n: int, dim: Sequence[int]) -> int:
    """Number of isoclasses with dimension vector ``dim``, by a separate interval-by-interval count."""
    ivs = [Interval(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]

    @lru_cache(maxsize=None)
    def count(k: int, rest: tuple[int, ...]) -> int:
        if k == len(ivs):
            return int(not any(rest))
        u = ivs[k]
        top = min(rest[u.i - 1 : u.j])
        total = 0
        for c in range(top + 1):
            left = tuple(x - c if u.i <= v + 1 <= u.j else x for v, x in enumerate(rest))
            total += count(k + 1, left)
        return total

    return count(0, tuple(dim))


def symmetric_dims(n: int, max_total: int) -> Iterator[tuple[int, ...]]:
    """Nonzero dimension vectors with d_k = d_{n+1-k} and total at most ``max_total``."""
    half = (n + 1) // 2
    for head in itertools.product(range(max_total + 1), repeat=half):
        d = head + tuple(reversed(head[: n // 2]))
        if 0 < sum(d) <= max_total:
            yield d
