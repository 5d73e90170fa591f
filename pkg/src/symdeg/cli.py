"""Command-line interface: ``symdeg <command> ...``.

Representations are given as JSON, either inline or as a path to a file:
``{"rep": [{"i": 1, "j": 2, "mult": 2}]}``.  Intervals are written ``i,j``
and may stand in for a representation with a single summand.
Output goes to stdout unless ``--out`` names a file.

Exit status: 0 on success, 1 for a negative domain answer (no degeneration,
no embedding, failed verification), 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import __version__
from .arquiver import ar_quiver
from .chain import Chain, HasseDiagram, build_chain, covering_relations, hasse, hom_order_matrix, validate_chain
from .errors import (
    IncompatibleOrientation,
    NotEmbeddable,
    ParseError,
    PreconditionViolated,
    SymdegError,
)
from .generic import Embeddability, can_embed_isotropically, generic_epsilon_subquotient, generic_quotient
from .quiver import Interval, SymmetricQuiver
from .rep import EpsilonContext, RepClass, ext_dim, hom_dim, is_epsilon_admissible, leq_hom

USAGE_ERRORS = (ParseError, IncompatibleOrientation, PreconditionViolated)
_INTERVAL_RE = re.compile(r"^\s*(?:U\[)?\s*(\d+)\s*,\s*(\d+)\s*\]?\s*$")


class Failure(Exception):
    """A well-formed request whose answer is negative (exit status 1)."""


# -- argument parsing helpers ---------------------------------------------------


def load_json(arg: str):
    text = arg if arg.lstrip().startswith(("{", "[")) else _read(arg)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {arg[:40]!r}: {exc}") from exc


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def parse_rep(q: SymmetricQuiver, arg: str) -> RepClass:
    if _INTERVAL_RE.match(arg):
        return RepClass.of(q.n, parse_interval(q, arg))
    return RepClass.from_json(q.n, load_json(arg))


def parse_interval(q: SymmetricQuiver, arg: str) -> Interval:
    m = _INTERVAL_RE.match(arg)
    if not m:
        raise ParseError(f"expected an interval as 'i,j', got {arg!r}")
    return q.interval(int(m.group(1)), int(m.group(2)))


def parse_epsilon(arg: str) -> int:
    if arg.strip() not in ("1", "+1", "-1"):
        raise ParseError(f"epsilon must be 1 or -1, got {arg!r}")
    return int(arg)


def parse_dims(q: SymmetricQuiver, arg: str) -> tuple[int, ...]:
    text = arg.strip()
    try:
        values = json.loads(text) if text.startswith("[") else [int(x) for x in text.split(",") if x.strip()]
        dims = tuple(int(x) for x in values)
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise ParseError(f"expected a dimension vector like '2,2', got {arg!r}") from exc
    if len(dims) != q.n or any(x < 0 for x in dims):
        raise ParseError(f"dimension vector {list(dims)} does not fit A{q.n}")
    return dims


def _context(args) -> EpsilonContext:
    return EpsilonContext(SymmetricQuiver.parse(args.quiver), parse_epsilon(args.epsilon))


def _admissible(ctx: EpsilonContext, *reps: RepClass) -> None:
    for m in reps:
        if not is_epsilon_admissible(ctx, m):
            raise PreconditionViolated(f"{m} is not an {ctx.epsilon:+d}-class on {ctx.quiver}")
    if len({m.dim() for m in reps}) > 1:
        raise PreconditionViolated("classes have different dimension vectors")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# -- commands ---------------------------------------------------------------------


def cmd_ar(args) -> str:
    g = ar_quiver(SymmetricQuiver.parse(args.quiver))
    if args.format == "json":
        return _dump(g.to_json())
    if args.format == "table":
        return g.grid({v: f"{v.i}{v.j}" if g.quiver.n < 10 else f"{v.i},{v.j}" for v in g.vertices})
    return g.to_dot()


def _pairwise(args, fn: Callable[[SymmetricQuiver, RepClass, RepClass], int], key: str) -> str:
    q = SymmetricQuiver.parse(args.quiver)
    value = fn(q, parse_rep(q, args.a), parse_rep(q, args.b))
    return f"{value}\n" if args.format == "table" else _dump({key: value})


def cmd_hom(args) -> str:
    return _pairwise(args, hom_dim, "hom")


def cmd_ext(args) -> str:
    return _pairwise(args, ext_dim, "ext")


def cmd_decide(args) -> str:
    ctx = _context(args)
    a, b = parse_rep(ctx.quiver, args.a), parse_rep(ctx.quiver, args.b)
    _admissible(ctx, a, b)
    return _dump(leq_hom(ctx.quiver, a, b))


def _draw(q: SymmetricQuiver, m: RepClass) -> str:
    return f"{m}\n" + ar_quiver(q).grid(dict(m.items()), blank="0")


def cmd_genquot(args) -> str:
    q = SymmetricQuiver.parse(args.quiver)
    m, l = parse_rep(q, args.m), parse_interval(q, args.l)
    res = generic_quotient(q, m, l)
    return _draw(q, res.quotient) if args.format == "table" else _dump(res.to_json())


def cmd_subquot(args) -> str:
    ctx = _context(args)
    m, l = parse_rep(ctx.quiver, args.m), parse_interval(ctx.quiver, args.l)
    _admissible(ctx, m)
    verdict = can_embed_isotropically(ctx, m, l)
    if verdict is not Embeddability.YES:
        raise NotEmbeddable(f"{l} does not embed isotropically into {m} ({verdict.value})")
    y = generic_epsilon_subquotient(ctx, m, l)
    return _draw(ctx.quiver, y) if args.format == "table" else _dump(y.to_json())


def cmd_chain(args) -> str:
    ctx = _context(args)
    m, n = parse_rep(ctx.quiver, args.m), parse_rep(ctx.quiver, args.n)
    chain = build_chain(ctx, m, n, strategy=args.strategy)
    return chain.to_table() if args.format == "table" else _dump(chain.to_json())


def _cover_rows(job: tuple[np.ndarray, range]) -> list[tuple[int, int]]:
    return covering_relations(*job)


def cmd_hasse(args) -> str:
    ctx = _context(args)
    dims = parse_dims(ctx.quiver, args.dims)
    diagram = hasse(ctx, dims) if not args.parallel else _hasse_parallel(ctx, dims, args.workers)
    if args.format == "dot":
        return diagram.to_dot()
    if args.format == "table":
        return diagram.to_table()
    return _dump(diagram.to_json())


def _hasse_parallel(ctx: EpsilonContext, dims: tuple[int, ...], workers: Optional[int]) -> HasseDiagram:
    from .oracle.enumeration import enumerate_epsilon_classes

    if dims != ctx.quiver.dim_nabla(dims):
        raise PreconditionViolated(f"dimension vector {list(dims)} is not symmetric")
    nodes = tuple(enumerate_epsilon_classes(ctx, dims))
    leq = hom_order_matrix(ctx, nodes)
    size = max(1, len(nodes) // 16)
    jobs = [(leq, range(k, min(k + size, len(nodes)))) for k in range(0, len(nodes), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        covers = [c for part in pool.map(_cover_rows, jobs) for c in part]
    return HasseDiagram(ctx, dims, nodes, tuple(covers))


def cmd_verify(args) -> str:
    from .oracle.certify import verify_chain

    ctx = _context(args)
    chain = Chain.from_json(load_json(args.chain))
    if chain.ctx != ctx:
        raise PreconditionViolated(f"chain is for {chain.ctx}, not {ctx}")
    ok, reason = validate_chain(chain, ctx)
    certs = verify_chain(chain) if ok else []
    report = {
        "valid": ok,
        "reason": reason,
        "certified": ok and all(c.ok for c in certs),
        "steps": [c.to_json() for c in certs],
    }
    text = _dump(report)
    if not report["certified"]:
        raise Failure(text)
    return text


def cmd_selftest(args) -> str:
    from .selftest import run_suites, suite_jobs

    names = list(suite_jobs(1, 0))
    unknown = set(args.suite or ()) - set(names)
    if unknown:
        raise ParseError(f"unknown suite(s) {sorted(unknown)}; choose from {names}")
    if args.n_max < 2:
        raise ParseError("--n-max must be at least 2")
    results = run_suites(args.n_max, args.max_total, only=args.suite, parallel=args.parallel, workers=args.workers)
    if args.format == "table":
        text = "".join(f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.checked} checks, {len(r.failures)} failures\n" for r in results)
        text += "".join(f"  {msg}\n" for r in results for msg in r.failures[:5])
    else:
        text = _dump([r.to_json() for r in results])
    if not all(r.ok for r in results):
        raise Failure(text)
    return text


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symdeg", description="Symmetric degenerations of type-A quiver representations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, fn, help: str, formats=("json", "table"), default="json"):
        p = sub.add_parser(name, help=help, description=help)
        p.set_defaults(func=fn)
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", metavar="PATH", help="write the output to PATH instead of stdout")
        return p

    p = add("ar", cmd_ar, "AR quiver of a symmetric quiver", ("dot", "json", "table"), "dot")
    p.add_argument("quiver", help="e.g. A3:>>")

    for name, fn, what in (("hom", cmd_hom, "dim Hom(A, B)"), ("ext", cmd_ext, "dim Ext^1(A, B)")):
        p = add(name, fn, what)
        p.add_argument("quiver")
        p.add_argument("a", metavar="A", help="representation (JSON or file)")
        p.add_argument("b", metavar="B", help="representation (JSON or file)")

    p = add("decide", cmd_decide, "whether B is a symmetric degeneration of A")
    p.add_argument("quiver")
    p.add_argument("epsilon", help="1 (orthogonal) or -1 (symplectic)")
    p.add_argument("a", metavar="A")
    p.add_argument("b", metavar="B")

    p = add("genquot", cmd_genquot, "generic quotient of M by an interval L")
    p.add_argument("quiver")
    p.add_argument("m", metavar="M")
    p.add_argument("l", metavar="L", help="interval as i,j")

    p = add("subquot", cmd_subquot, "generic isotropic subquotient L^perp/L of an ε-class M")
    p.add_argument("quiver")
    p.add_argument("epsilon")
    p.add_argument("m", metavar="M")
    p.add_argument("l", metavar="L", help="interval as i,j")

    p = add("chain", cmd_chain, "degeneration chain from M to N")
    p.add_argument("quiver")
    p.add_argument("epsilon")
    p.add_argument("m", metavar="M")
    p.add_argument("n", metavar="N")
    p.add_argument("--strategy", choices=("minimal", "shortest"), default="minimal", help="choice of the reducing summand")

    p = add("hasse", cmd_hasse, "Hasse diagram of the degeneration order for a dimension vector", ("json", "dot", "table"))
    p.add_argument("quiver")
    p.add_argument("epsilon")
    p.add_argument("dims", metavar="D", help="dimension vector, e.g. 2,2")
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--workers", type=int)

    p = add("verify", cmd_verify, "check a chain JSON step by step, including on explicit matrices")
    p.add_argument("quiver")
    p.add_argument("epsilon")
    p.add_argument("chain", help="chain JSON (inline or file)")

    p = add("selftest", cmd_selftest, "run the exhaustive invariant suites", ("json", "table"), "table")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--max-total", type=int, default=8, help="largest total dimension in class sweeps")
    p.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--workers", type=int)
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _emit(args.func(args), args.out)
    except Failure as exc:
        _emit(str(exc), args.out)
        return 1
    except USAGE_ERRORS as exc:
        print(f"symdeg {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except SymdegError as exc:
        print(f"symdeg {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
