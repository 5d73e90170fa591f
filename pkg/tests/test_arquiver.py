import json

import pytest
from hypothesis import given

from symdeg import Interval, SymmetricQuiver, ar_quiver, compatible_orientations
from symdeg.arquiver import NE, SE, ARQuiver
from symdeg.oracle.points import hom_basis, realize
from symdeg.rep import RepClass, hom_dim_linear, is_delta_fixed

from conftest import A2, A3, A4, A4_ALT, A5_ZIG, quivers

U = Interval
S1, S2, S3 = U(1, 1), U(2, 2), U(3, 3)
P1, P2 = U(1, 3), U(2, 3)
I2 = U(1, 2)


def test_a3_matches_drawing():
    g = ar_quiver(A3)
    assert set(g.vertices) == set(A3.intervals)
    assert set(g.arrows) == {(S3, P2), (P2, P1), (P2, S2), (P1, I2), (S2, I2), (I2, S1)}
    assert g.tau == {S2: S3, I2: P2, S1: S2}
    assert [g.level[v] for v in (P1, P2, S3)] == [1, 2, 3]


def test_a2():
    g = ar_quiver(A2)
    assert set(g.arrows) == {(S2, U(1, 2)), (U(1, 2), S1)}
    assert g.tau == {S1: S2}


def test_other_drawn_quivers():
    g = ar_quiver(A4_ALT)
    assert A4_ALT.projective(3) == U(2, 4) and g.level[U(2, 4)] == 3
    assert g.projectives == tuple(A4_ALT.projective(k) for k in range(1, 5))
    assert ar_quiver(A5_ZIG).grid({v: f"{v.i}{v.j}" for v in ar_quiver(A5_ZIG).vertices}).splitlines()[0].split() == ["11", "24", "55"]


def test_precedes_and_hom():
    g = ar_quiver(A3)
    assert g.precedes(S3, S1) and not g.precedes(S1, S3) and g.precedes(S2, S2)
    assert g.hom_dim(S3, S2) == 0
    assert g.hom_dim(P2, S2) == 1
    assert all(g.hom_dim(v, v) == 1 for v in g.vertices)


def test_joins():
    g = ar_quiver(A4)
    assert g.join(U(2, 4), U(3, 3)) == U(2, 3)
    assert g.join(U(2, 4), U(2, 4)) == U(2, 4)
    g2 = ar_quiver(A2)
    assert g2.join(S2, S1) == S1
    assert g2.meet(S2, S1) == S2


def test_sectional_paths():
    g = ar_quiver(A3)
    p = g.sectional_path(S3, P1)
    assert p.vertices == (S3, P2, P1) and p.direction == NE
    assert g.sectional_path(S3, S1) is None
    trivial = g.sectional_path(S2, S2)
    assert trivial.vertices == (S2,) and trivial.direction is None
    assert g.has_sectional_path(S2, S2, NE) and g.has_sectional_path(S2, S2, SE)


def test_sectional_cokernels():
    assert ar_quiver(A4).sectional_cokernel(U(3, 4), U(2, 4)) == U(2, 2)
    g2 = ar_quiver(A2)
    assert g2.sectional_cokernel(U(1, 2), S1) is None
    assert g2.sectional_cokernel(S1, S1) is None


def test_rectangles():
    assert ar_quiver(A2).rectangle(S2, S1) == (U(1, 2),)
    assert ar_quiver(A4).rectangle(U(3, 4), U(1, 2)) == (U(1, 4),)
    g = ar_quiver(A4)
    assert all(g.rectangle(v, v) is None for v in g.vertices)
    assert set(g.rectangle(U(3, 3), U(2, 2))) == {U(2, 3)}
    assert g.rectangle(U(4, 4), U(2, 3)) == (U(2, 4),)


def test_hammocks():
    assert ar_quiver(A3).hammock(S3) == {S3, P2, P1}
    assert ar_quiver(A2).hammock(S2) == {S2, U(1, 2)}



@pytest.mark.parametrize("q", [A3, A4_ALT, A5_ZIG], ids=str)
def test_hammocks_of_projectives(q):
    # Hom(P_k, E) is the space of E at k, and Hom(E, I_k) is its dual
    g = ar_quiver(q)
    for k in range(1, q.n + 1):
        assert g.hammock(q.projective(k)) == {e for e in g.vertices if k in e}
        assert g.cohammock(q.injective(k)) == {e for e in g.vertices if k in e}


def test_delta_fixed():
    assert [e for e in A3.intervals if is_delta_fixed(A3, e)] == [P2]
    assert [e for e in A4_ALT.intervals if is_delta_fixed(A4_ALT, e)] == [U(1, 2), U(2, 4)]
    assert [e for e in A5_ZIG.intervals if is_delta_fixed(A5_ZIG, e)] == [U(1, 4), U(3, 5)]


# -- invariants ------------------------------------------------------------------


def _all_quivers(max_n):
    return [q for n in range(2, max_n + 1) for q in compatible_orientations(n)]


@pytest.mark.parametrize("q", _all_quivers(8), ids=str)
def test_structure(q):
    g = ar_quiver(q)
    n = q.n
    assert len(g.vertices) == n * (n + 1) // 2
    assert set(g.tau) == set(g.vertices) - set(g.projectives)
    assert set(g.tau.values()) == set(g.vertices) - set(g.injectives)
    assert all(g.tau_inv[g.tau[v]] == v for v in g.tau)
    for a, b in g.arrows:
        assert abs(g.level[a] - g.level[b]) == 1
        assert g.x[b] == g.x[a] + 1
        assert g.slice[b] - g.slice[a] in (0, 1)
    for v, t in g.tau.items():
        middle = [0] * n
        for f in g.pred[v]:
            middle = [x + y for x, y in zip(middle, f.dim(n))]
        assert [a + b for a, b in zip(v.dim(n), t.dim(n))] == middle


@pytest.mark.parametrize("q", _all_quivers(8), ids=str)
def test_nabla_flips_the_quiver(q):
    g = ar_quiver(q)
    arrows = set(g.arrows)
    assert {(q.nabla(b), q.nabla(a)) for a, b in arrows} == arrows
    for v, t in g.tau.items():
        assert g.tau_inv[q.nabla(v)] == q.nabla(t)


def _paths(g: ARQuiver, a, b):
    if a == b:
        yield (a,)
        return
    for w in g.succ[a]:
        if g.precedes(w, b):
            for rest in _paths(g, w, b):
                yield (a,) + rest


def _is_zero_relation(g: ARQuiver, path):
    for k in range(len(path) - 2):
        x, f, y = path[k : k + 3]
        if g.tau.get(y) == x and list(g.pred[y]) == [f]:
            return True
    return False


@pytest.mark.parametrize("q", _all_quivers(6), ids=str)
def test_hom_by_path_enumeration(q):
    g = ar_quiver(q)
    for a in g.vertices:
        for b in g.vertices:
            paths = list(_paths(g, a, b))
            expected = int(bool(paths) and not any(_is_zero_relation(g, p) for p in paths))
            assert g.hom_dim(a, b) == expected == hom_dim_linear(q, a, b), (a, b)


@pytest.mark.parametrize("q", _all_quivers(8), ids=str)
def test_sectional_paths_versus_hom(q):
    g = ar_quiver(q)
    for a in g.vertices:
        for b in g.vertices:
            sectional = g.sectional_path(a, b) is not None
            tb = g.tau.get(b)
            expected = g.hom_dim(a, b) == 1 and (tb is None or g.hom_dim(a, tb) == 0)
            assert sectional == expected, (a, b)


@pytest.mark.parametrize("q", _all_quivers(7), ids=str)
def test_sectional_maps_are_mono_or_epi(q):
    g = ar_quiver(q)
    for a in g.vertices:
        for b in g.vertices:
            if g.sectional_path(a, b) is None:
                continue
            coker, ker = g.sectional_cokernel(a, b), g.sectional_kernel(a, b)
            assert coker is None or ker is None
            n = q.n
            da, db = a.dim(n), b.dim(n)
            if ker is None and coker is not None:
                assert [y - x for x, y in zip(da, db)] == list(coker.dim(n))
            if coker is None and ker is not None:
                assert [x - y for x, y in zip(da, db)] == list(ker.dim(n))
            if coker is None and ker is None:
                assert a == b or da == db


@pytest.mark.parametrize("q", _all_quivers(6), ids=str)
def test_rectangles_are_extensions(q):
    g = ar_quiver(q)
    n = q.n
    for sub in g.vertices:
        for quot in g.vertices:
            mid = g.rectangle(sub, quot)
            assert (mid is None) == (g.ext_dim(quot, sub) == 0)
            if mid is None:
                continue
            total = [a + b for a, b in zip(sub.dim(n), quot.dim(n))]
            got = [sum(f.dim(n)[k] for f in mid) for k in range(n)]
            assert got == total
            assert (len(mid) == 1) == (g.hom_dim(sub, quot) == 0)
            if len(mid) == 2:
                f1, f2 = mid
                mono = lambda a, b: g.sectional_kernel(a, b) is None  # noqa: E731
                assert mono(sub, f1) == mono(f2, quot)
                assert mono(sub, f2) == mono(f1, quot)


@pytest.mark.parametrize("q", _all_quivers(6), ids=str)
def test_composition_of_nonzero_maps(q):
    # whenever all three Hom spaces are nonzero, composing nonzero maps gives a nonzero map
    g = ar_quiver(q)
    pts = {v: realize(q, RepClass.of(q.n, v)) for v in g.vertices}
    basis = {}

    def hom(a, b):
        if (a, b) not in basis:
            basis[a, b] = hom_basis(pts[a], pts[b])
        return basis[a, b]

    for a in g.vertices:
        for b in g.hammock(a):
            for c in g.hammock(b):
                if not g.hom_dim(a, c):
                    continue
                (f,), (h,) = hom(a, b), hom(b, c)
                assert any(h[k][0][0] * f[k][0][0] for k in range(1, q.n + 1) if k in a and k in c), (a, b, c)


@given(quivers(8))
def test_json_round_trip(q):
    g = ar_quiver(q)
    obj = json.loads(json.dumps(g.to_json()))
    assert ARQuiver.from_json(obj) is g
    assert len(obj["vertices"]) == len(obj["level"]) == len(obj["slice"])


def test_json_rejects_tampering():
    obj = ar_quiver(A3).to_json()
    obj["tau"] = obj["tau"][:-1]
    with pytest.raises(ValueError):
        ARQuiver.from_json(obj)


def test_dot():
    dot = ar_quiver(A3).to_dot()
    assert dot.count("[pos=") == 6
    assert dot.count("dashed") == 3
    assert '"U[3,3]" -> "U[2,3]";' in dot
