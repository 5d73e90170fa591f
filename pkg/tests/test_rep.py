import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symdeg import (
    EpsilonContext,
    Interval,
    ParseError,
    PreconditionViolated,
    RepClass,
    ar_quiver,
    delta,
    ext_dim,
    hom_dim,
    is_delta_fixed,
    is_epsilon_admissible,
    leq_hom,
    multiplicity,
    nabla_rep,
)
from symdeg.oracle.enumeration import enumerate_epsilon_classes, symmetric_dims
from symdeg.rep import hom_dim_linear, tables

from conftest import A2, A3, A4, classes, contexts, epsilon_classes, quivers, rep

U = Interval


def test_hom_linear_examples():
    assert hom_dim_linear(A3, U(1, 3), U(1, 1)) == 1
    assert hom_dim_linear(A3, U(1, 1), U(1, 3)) == 0
    assert all(hom_dim_linear(A3, u, u) == 1 for u in A3.intervals)


def test_ext_examples():
    assert ext_dim(A2, rep(2, (1, 1)), rep(2, (2, 2))) == 1
    assert ext_dim(A4, rep(4, (1, 2)), rep(4, (3, 4))) == 1
    for q in (A2, A3, A4):
        assert all(ext_dim(q, RepClass.of(q.n, u), RepClass.of(q.n, u)) == 0 for u in q.intervals)


def test_hom_is_bilinear():
    m, n = rep(3, (1, 3), (2, 2), (2, 2)), rep(3, (1, 1), (2, 3))
    expected = sum(a * b * hom_dim_linear(A3, u, v) for u, a in m.items() for v, b in n.items())
    assert hom_dim(A3, m, n) == expected


def test_nabla_examples():
    assert nabla_rep(rep(3, (1, 2), (3, 3))) == rep(3, (2, 3), (1, 1))
    assert nabla_rep(RepClass.zero(3)) == RepClass.zero(3)


def test_admissibility_examples():
    plus, minus = EpsilonContext(A3, 1), EpsilonContext(A3, -1)
    assert is_epsilon_admissible(plus, rep(3, (1, 3)))
    assert not is_epsilon_admissible(minus, rep(3, (1, 3)))
    assert is_epsilon_admissible(minus, rep(3, (1, 3), (1, 3)))
    assert not is_epsilon_admissible(plus, rep(3, (1, 2)))


def test_leq_examples():
    top, bottom = rep(2, (1, 2), (1, 2)), rep(2, (1, 1), (1, 1), (2, 2), (2, 2))
    assert leq_hom(A2, top, bottom) and not leq_hom(A2, bottom, top)
    assert leq_hom(A2, top, top)
    assert leq_hom(A2, rep(2, (1, 2)), rep(2, (1, 1), (2, 2)))
    assert not leq_hom(A2, rep(2, (1, 2)), rep(2, (1, 1)))


def test_delta_examples():
    p2 = U(2, 3)
    assert is_delta_fixed(A3, p2)
    m = rep(3, (1, 3), (1, 3))
    n = rep(3, (1, 1), (1, 1), (2, 2), (2, 2), (3, 3), (3, 3))
    assert delta(A3, m, n, p2) == 2
    assert delta(A3, m, m, p2) == 0


def test_multiplicity_examples():
    m = rep(3, (1, 3), (2, 2))
    assert multiplicity(A3, m, U(2, 2)) == 1
    assert all(multiplicity(A3, RepClass.zero(3), e) == 0 for e in A3.intervals)


@given(quivers(6), st.data())
def test_multiplicity_recovers_counts(q, data):
    m = data.draw(classes(q))
    assert all(multiplicity(q, m, e) == m.mult(e) for e in q.intervals)


def test_repclass_arithmetic():
    a = rep(3, (1, 2), (1, 2), (3, 3))
    assert a.mult(U(1, 2)) == 2 and a.num_summands() == 3
    assert a.dim() == (2, 2, 1)
    assert a - rep(3, (1, 2)) == rep(3, (1, 2), (3, 3))
    with pytest.raises(PreconditionViolated):
        a - rep(3, (1, 1))
    assert a * 2 == a + a
    assert a.contains(rep(3, (3, 3))) and not a.contains(rep(3, (3, 3), (3, 3)))
    assert str(a) == "U[1,2]^2 + U[3,3]"
    assert str(RepClass.zero(3)) == "0"


def test_repclass_json():
    a = rep(4, (1, 3), (2, 4), (2, 4))
    obj = json.loads(json.dumps(a.to_json()))
    assert obj == {"rep": [{"i": 1, "j": 3, "mult": 1}, {"i": 2, "j": 4, "mult": 2}]}
    assert RepClass.from_json(4, obj) == a
    with pytest.raises(ParseError):
        RepClass.from_json(4, {"rep": [{"i": 3, "j": 1}]})
    with pytest.raises(ParseError):
        RepClass.from_json(4, {"rep": [{"i": 1, "j": 5}]})
    with pytest.raises(ParseError):
        RepClass.from_json(4, {"rep": [{"i": 1, "j": 2, "mult": -1}]})
    with pytest.raises(ParseError):
        RepClass.from_json(4, {"intervals": []})


# -- properties ----------------------------------------------------------------


@given(quivers(6), st.data())
def test_nabla_is_an_involution(q, data):
    m = data.draw(classes(q))
    assert nabla_rep(nabla_rep(m)) == m
    assert nabla_rep(m).dim() == q.dim_nabla(m.dim())


@given(quivers(6), st.data())
def test_hom_duality_and_ext_nonnegative(q, data):
    m, n = data.draw(classes(q)), data.draw(classes(q))
    assert hom_dim(q, m, n) == hom_dim(q, nabla_rep(n), nabla_rep(m))
    assert ext_dim(q, m, n) >= 0


@given(quivers(5), st.data())
def test_hom_order_is_a_partial_order(q, data):
    d = data.draw(st.sampled_from([d for d in symmetric_dims(q.n, 5)]))
    from symdeg.oracle.enumeration import enumerate_classes

    cls = enumerate_classes(q.n, d)
    trio = [data.draw(st.sampled_from(cls)) for _ in range(3)]
    a, b, c = trio
    assert leq_hom(q, a, a)
    if leq_hom(q, a, b) and leq_hom(q, b, a):
        assert a == b
    if leq_hom(q, a, b) and leq_hom(q, b, c):
        assert leq_hom(q, a, c)


@pytest.mark.parametrize("n", range(2, 9))
def test_ext_table_matches_ar_formula(n):
    from symdeg import compatible_orientations

    for q in compatible_orientations(n):
        g = ar_quiver(q)
        t = tables(q)
        ivs = q.intervals
        ar_ext = np.array([[g.ext_dim(a, b) for b in ivs] for a in ivs])
        assert (t.ext == ar_ext).all()


@given(contexts(5), st.data())
def test_delta_is_self_dual(ctx, data):
    q = ctx.quiver
    m = data.draw(epsilon_classes(ctx))
    pool = [x for x in enumerate_epsilon_classes(ctx, m.dim())]
    n = data.draw(st.sampled_from(pool))
    g = ar_quiver(q)
    for e in q.intervals:
        t = g.tau.get(q.nabla(e))
        if t is not None:
            assert delta(q, m, n, e) == delta(q, m, n, t)


@given(contexts(5), st.data())
def test_generated_classes_are_admissible(ctx, data):
    assert is_epsilon_admissible(ctx, data.draw(epsilon_classes(ctx)))


def test_enumeration_examples():
    from symdeg.oracle.enumeration import enumerate_classes

    assert len(enumerate_classes(2, (2, 2))) == 3
    assert enumerate_classes(3, (0, 0, 0)) == [RepClass.zero(3)]
    assert len(enumerate_epsilon_classes(EpsilonContext(A2, -1), (2, 2))) == 3


@settings(max_examples=40)
@given(st.integers(2, 4), st.data())
def test_enumeration_by_brute_force(n, data):
    from symdeg.oracle.enumeration import enumerate_classes

    d = tuple(data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n)))
    ivs = [U(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    brute = set()
    for mults in itertools.product(range(3), repeat=len(ivs)):
        m = RepClass(n, list(mults))
        if m.dim() == d:
            brute.add(m)
    assert enumerate_classes(n, d) == sorted(brute)
