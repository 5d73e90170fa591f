import dataclasses
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symdeg import (
    Chain,
    EpsilonContext,
    HasseDiagram,
    Interval,
    NotDegeneration,
    PreconditionViolated,
    RepClass,
    StepKind,
    build_chain,
    hasse,
    leq_hom,
    validate_chain,
)
from symdeg.oracle.enumeration import enumerate_epsilon_classes, symmetric_dims
from symdeg.rep import epsilon_summand

from conftest import A2, A3, A4_ALT, contexts, epsilon_classes, rep

U = Interval


def test_a2_symplectic_chain():
    ctx = EpsilonContext(A2, -1)
    c = build_chain(ctx, rep(2, (1, 2), (1, 2)), rep(2, (1, 1), (1, 1), (2, 2), (2, 2)))
    assert len(c) == 2
    assert [s.l for s in c.reductions] == [U(2, 2), U(2, 2)]
    assert c.intermediates == [
        rep(2, (1, 2), (1, 2)),
        rep(2, (1, 1), (1, 2), (2, 2)),
        rep(2, (1, 1), (1, 1), (2, 2), (2, 2)),
    ]
    assert validate_chain(c) == (True, "ok")


def test_a3_orthogonal_chain():
    ctx = EpsilonContext(A3, 1)
    c = build_chain(ctx, rep(3, (1, 3)), rep(3, (1, 1), (2, 2), (3, 3)))
    assert len(c) == 1
    (step,) = c.reductions
    assert step.l == U(3, 3) and step.y == rep(3, (2, 2))
    assert validate_chain(c)[0]


def test_trivial_chain():
    ctx = EpsilonContext(A3, 1)
    m = rep(3, (1, 3))
    c = build_chain(ctx, m, m)
    assert len(c) == 0 and c.intermediates == [m] and validate_chain(c)[0]


def test_not_degeneration_and_bad_inputs():
    ctx = EpsilonContext(A2, -1)
    with pytest.raises(NotDegeneration):
        build_chain(ctx, rep(2, (1, 1), (1, 1), (2, 2), (2, 2)), rep(2, (1, 2), (1, 2)))
    with pytest.raises(PreconditionViolated):
        build_chain(EpsilonContext(A2, 1), rep(2, (1, 2)), rep(2, (1, 2)))  # odd self-dual multiplicity
    with pytest.raises(PreconditionViolated):
        build_chain(EpsilonContext(A3, 1), rep(3, (1, 3)), rep(3, (1, 3)), strategy="fastest")


def test_validate_rejects_odd_fixed_multiplicity():
    ctx = EpsilonContext(A2, 1)
    assert ctx.split
    c = build_chain(ctx, rep(2, (1, 2), (1, 2)), rep(2, (1, 1), (1, 1), (2, 2), (2, 2)))
    s = c.steps[0]
    broken = dataclasses.replace(s, after=rep(2, (1, 1), (1, 2), (2, 2)))
    ok, why = validate_chain(dataclasses.replace(c, steps=(broken,) + c.steps[1:]))
    assert not ok and "step 0" in why


def test_validate_rejects_wrong_end():
    ctx = EpsilonContext(A2, -1)
    c = build_chain(ctx, rep(2, (1, 2), (1, 2)), rep(2, (1, 1), (1, 1), (2, 2), (2, 2)))
    ok, why = validate_chain(dataclasses.replace(c, steps=c.steps[:1]))
    assert not ok and "ends at" in why
    ok, _ = validate_chain(dataclasses.replace(c, target=rep(2, (1, 2), (1, 1), (2, 2))))
    assert not ok


def test_split_off_step():
    # the shared self-dual summand is set aside before reducing
    ctx = EpsilonContext(A3, 1)
    f = rep(3, (2, 2))
    c = build_chain(ctx, rep(3, (1, 3)) + f, rep(3, (1, 1), (2, 2), (3, 3)) + f)
    kinds = [s.kind for s in c.steps]
    assert StepKind.SPLIT_OFF in kinds and len(c) == 1
    assert validate_chain(c)[0]


def test_hasse_examples():
    h = hasse(EpsilonContext(A2, -1), (2, 2))
    assert len(h.nodes) == 3 and len(h.covers) == 2
    ranks = {m.mult(U(1, 2)) for m in h.nodes}
    assert ranks == {0, 1, 2}
    for a, b in h.covers:
        assert h.nodes[a].mult(U(1, 2)) == h.nodes[b].mult(U(1, 2)) + 1
    zero = hasse(EpsilonContext(A2, -1), (0, 0))
    assert len(zero.nodes) == 1 and zero.covers == ()
    h3 = hasse(EpsilonContext(A3, 1), (1, 1, 1))
    assert set(h3.nodes) == {rep(3, (1, 3)), rep(3, (1, 1), (2, 2), (3, 3))}
    assert len(h3.covers) == 1
    with pytest.raises(PreconditionViolated):
        hasse(EpsilonContext(A3, 1), (1, 2, 3))


def test_hasse_json_round_trip():
    h = hasse(EpsilonContext(A4_ALT, -1), (2, 2, 2, 2))
    assert HasseDiagram.from_json(json.loads(json.dumps(h.to_json()))) == h
    assert h.to_dot().count("->") == len(h.covers)


@given(contexts(4), st.data())
@settings(max_examples=60)
def test_chain_properties(ctx, data):
    m = data.draw(epsilon_classes(ctx))
    n = data.draw(epsilon_classes(ctx))
    if m.dim() != n.dim():
        return
    q = ctx.quiver
    try:
        c = build_chain(ctx, m, n)
    except NotDegeneration:
        assert not leq_hom(q, m, n)
        return
    assert leq_hom(q, m, n)
    assert validate_chain(c)[0]
    assert len(c) <= sum(n.counts)
    mids = c.intermediates
    assert all(leq_hom(q, a, b) for a, b in zip(mids, mids[1:]))
    assert Chain.from_json(json.loads(json.dumps(c.to_json()))) == c
    short = build_chain(ctx, m, n, strategy="shortest")
    assert validate_chain(short)[0] and len(short) <= len(c)


@given(contexts(5), st.data())
@settings(max_examples=60)
def test_transitivity_witness(ctx, data):
    dims = list(symmetric_dims(ctx.n, 8))
    nodes = enumerate_epsilon_classes(ctx, data.draw(st.sampled_from(dims)))
    if not nodes:
        return
    m, p, n = (data.draw(st.sampled_from(nodes)) for _ in range(3))
    q = ctx.quiver
    try:
        first, second = build_chain(ctx, m, p), build_chain(ctx, p, n)
    except NotDegeneration:
        return
    whole = build_chain(ctx, m, n)
    assert validate_chain(whole)[0]
    mids = first.intermediates + second.intermediates[1:]
    assert all(leq_hom(q, a, b) for a, b in zip(mids, mids[1:]))


def test_transitivity_on_a_hasse_diagram():
    ctx = EpsilonContext(A4_ALT, -1)
    h = hasse(ctx, (2, 2, 2, 2))
    q = ctx.quiver
    nodes = h.nodes
    for m in nodes:
        for p in nodes:
            if not leq_hom(q, m, p):
                continue
            for n in nodes:
                if leq_hom(q, p, n):
                    assert validate_chain(build_chain(ctx, m, n))[0]


def test_chain_json_rejects_garbage():
    from symdeg import ParseError

    with pytest.raises(ParseError):
        Chain.from_json({"quiver": "A2:>", "epsilon": -1})
    with pytest.raises(ParseError):
        Chain.from_json({"quiver": "A2:>", "epsilon": -1, "source": {"rep": []}, "target": {"rep": []}, "steps": [{"kind": "nope"}]})


def test_epsilon_summand_helper_is_admissible():
    from symdeg import is_epsilon_admissible

    for eps in (1, -1):
        ctx = EpsilonContext(A4_ALT, eps)
        for u in A4_ALT.intervals:
            assert is_epsilon_admissible(ctx, epsilon_summand(ctx, u))
