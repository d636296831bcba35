import itertools
import random

import pytest

from semicanon.canonical import (CanonicalSpec, Point, TubeModuleSpec, build_canonical, check_calibration,
                                 generic_point, homogeneous_module, jordan_pair, kronecker_embed,
                                 tube_module)
from semicanon.errors import DimensionMismatch, InvalidParams, UnknownPoint
from semicanon.exactfield import QQ, Matrix, rank
from semicanon.quiver import tits_form
from semicanon.regular import RegularProfile, compose, tube_hom_dim
from semicanon.repkit import Representation, check_relations, end_dim, hom_dim, is_isomorphic, quotient_rep


def test_kronecker_case(k2):
    assert k2.vertices == ("1", "2")
    assert k2.tubes == []
    assert k2.h == {"1": 1, "2": 1}
    assert k2.quiver.relations == ()


def test_type_222(ts222):
    Q = ts222.quiver
    assert len(Q.vertices) == 5 and len(Q.arrows) == 6 and len(Q.relations) == 1
    assert [t.rank for t in ts222.tubes] == [2, 2, 2]
    assert ts222.h == {v: 1 for v in Q.vertices}


def test_type_333_count(ts333):
    assert len(ts333.vertices) == 8
    assert sum(t.rank - 1 for t in ts333.tubes) == 6


def test_weight_one_arms():
    ts = build_canonical(CanonicalSpec((3, 3, 1), (2,)))
    assert len(ts.vertices) == 6 and ts.quiver.relations == ()
    assert len(ts.tubes) == 2
    k = build_canonical(CanonicalSpec((1, 1, 1), (3,)))
    assert k.vertices == ("1", "2")
    with pytest.raises(InvalidParams):
        CanonicalSpec((1, 2, 2), (2,))


@pytest.mark.parametrize("params", [(0,), (1,), (2, 2)])
def test_invalid_params(params):
    with pytest.raises(InvalidParams):
        CanonicalSpec((2,) * (2 + len(params)), params)


def test_spec_json_round_trip():
    spec = CanonicalSpec((2, 3, 4, 2), ("2", "3/2"))
    assert CanonicalSpec.from_json(spec.to_json()) == spec


@pytest.mark.parametrize("fixture", ["ts222", "ts333", "ts233"])
def test_tube_invariants(request, fixture):
    ts = request.getfixturevalue(fixture)
    Q = ts.quiver
    assert sum(t.rank - 1 for t in ts.tubes) == len(Q.vertices) - 2
    assert tits_form(Q, ts.h, ts.h) == 0
    for t in ts.tubes:
        assert {v: sum(e[v] for e in t.e) for v in Q.vertices} == ts.h
        assert rank(Matrix.from_rows(QQ, [[e[v] for v in Q.vertices] for e in t.e])) == t.rank
        assert all(e[ts.source] == e[ts.sink] for e in t.e)


def test_calibrated_points(ts222, ts233):
    assert [t.point for t in ts222.tubes] == [Point.of(0, 1), Point.of(1, 0), Point.of(1, "-1/2")]
    assert check_calibration(ts222)
    assert check_calibration(ts233)


def test_point_normalization():
    assert Point.of(2, 6) == Point.of(1, 3)
    assert Point.of(0, 5) == Point(0, 1)
    assert Point.from_json(Point.of(3, 1).to_json()) == Point.of(3, 1)
    with pytest.raises(InvalidParams):
        Point.of(0, 0)


def test_module_spec_json():
    for m in (TubeModuleSpec(1, 0, 3), TubeModuleSpec(Point.of(1, 3), 0, 2)):
        assert TubeModuleSpec.from_json(m.to_json()) == m


def test_arm_simple_module(ts222, F):
    M = tube_module(ts222, TubeModuleSpec(0, 1, 1), F)
    assert sum(M.dim.values()) == 1 and M.dim["1.1"] == 1


def test_homogeneous_at_one_one(ts222, F):
    M = tube_module(ts222, TubeModuleSpec(Point.of(1, 1), 0, 1), F)
    assert M.dim == ts222.h
    w1, w2 = M.path_matrix(ts222.w1), M.path_matrix(ts222.w2)
    assert w1 == w2 and w1.rows == 1
    assert check_relations(M)


def test_full_rank_exceptional_has_end_one(ts233, F):
    for k, t in enumerate(ts233.tubes):
        for i in range(t.rank):
            M = tube_module(ts233, TubeModuleSpec(k, i, t.rank), F)
            assert M.dim == ts233.h
            assert end_dim(M) == 1


def test_unknown_point(ts222, F):
    with pytest.raises(UnknownPoint):
        tube_module(ts222, TubeModuleSpec(5, 0, 1), F)
    with pytest.raises(UnknownPoint):
        homogeneous_module(ts222, ts222.tubes[0].point, 1, F)


def test_module_dimensions_and_relations(ts333, F):
    for k in range(3):
        for i in range(3):
            for n in range(1, 5):
                m = TubeModuleSpec(k, i, n)
                M = tube_module(ts333, m, F)
                assert M.dim == ts333.module_dim(m)
                assert check_relations(M)


def test_kronecker_embed_examples(ts222, k2, F):
    pt = Point.of(1, 3)
    N = jordan_pair(pt, 1, F)
    assert is_isomorphic(kronecker_embed(ts222, N), homogeneous_module(ts222, pt, 1, F), random.Random(0))
    Z = Representation(k2.quiver, F, {"1": 0, "2": 0}, {})
    assert sum(kronecker_embed(ts222, Z).dim.values()) == 0
    M = kronecker_embed(ts222, jordan_pair(Point.of(1, 5), 2, F))
    assert M.dim == {v: 2 for v in ts222.vertices}
    assert end_dim(M) == 2
    with pytest.raises(DimensionMismatch):
        kronecker_embed(ts222, Representation(k2.quiver, F, {"1": 1, "2": 2}, {}, check=False))


def test_generic_point_avoids(ts222):
    pt = generic_point(ts222)
    assert pt not in ts222.exceptional_points
    assert generic_point(ts222, [pt]) != pt


def _profiles(ts, bound):
    ranges = [itertools.product(range(bound), repeat=t.rank) for t in ts.tubes]
    for p in range(2):
        for res in itertools.product(*ranges):
            yield RegularProfile(p, tuple(res))


@pytest.mark.parametrize("fixture", ["ts222", "ts233"])
def test_pairing_with_segments(request, fixture):
    # <e_{i}^n, d> = p_{i+n-1} - p_{i-1} for regular d
    ts = request.getfixturevalue(fixture)
    rng = random.Random(0)
    profiles = list(_profiles(ts, 2))
    for prof in rng.sample(profiles, min(40, len(profiles))):
        d = compose(ts, prof)
        for k, t in enumerate(ts.tubes):
            r = t.rank
            for i in range(r):
                for n in range(1, 5):
                    lhs = tits_form(ts.quiver, ts.e_n(k, i, n), d)
                    rhs = prof.residual[k][(i + n - 1) % r] - prof.residual[k][(i - 1) % r]
                    assert lhs == rhs
        assert tits_form(ts.quiver, ts.h, d) == 0


def test_hom_matches_min_formula(ts233, F):
    for k, t in enumerate(ts233.tubes):
        r = t.rank
        for i, j in itertools.product(range(r), repeat=2):
            for n, m in itertools.product(range(1, 4), repeat=2):
                A = tube_module(ts233, TubeModuleSpec(k, i, n), F)
                B = tube_module(ts233, TubeModuleSpec(k, j, m), F)
                assert hom_dim(A, B) == tube_hom_dim(r, i, n, j, m)
    A = tube_module(ts233, TubeModuleSpec(0, 0, 2), F)
    B = tube_module(ts233, TubeModuleSpec(1, 0, 3), F)
    assert hom_dim(A, B) == 0


def test_exact_sequence_witness(ts233, F):
    # the inclusion of the first block of coordinates is a monomorphism with
    # cokernel Hom-equivalent to R_{i+n}^{(m)}
    k, r = 1, 3
    for i in range(r):
        for n, m in [(1, 1), (1, 2), (2, 2), (2, 3)]:
            small = tube_module(ts233, TubeModuleSpec(k, i, n), F)
            big = tube_module(ts233, TubeModuleSpec(k, i, n + m), F)
            for a in ts233.quiver.arrows:
                blk = big.mats[a.id].submatrix(range(small.dim[a.target]), range(small.dim[a.source]))
                assert blk == small.mats[a.id]
                lower = big.mats[a.id].submatrix(range(small.dim[a.target], big.dim[a.target]),
                                                 range(small.dim[a.source]))
                assert lower.is_zero()
            sub = {v: [[F.one if x == y else F.zero for x in range(big.dim[v])] for y in range(small.dim[v])]
                   for v in ts233.vertices}
            C = quotient_rep(big, sub)
            target = tube_module(ts233, TubeModuleSpec(k, i + n, m), F)
            assert C.dim == target.dim
            assert is_isomorphic(C, target, random.Random(i))


def test_kronecker_embed_fully_faithful(ts222, F):
    pts = [Point.of(1, 3), Point.of(1, 4), Point.of(1, 3)]
    mods = [jordan_pair(pt, n, F) for pt in pts for n in (1, 2)]
    for N1, N2 in itertools.product(mods, repeat=2):
        assert hom_dim(N1, N2) == hom_dim(kronecker_embed(ts222, N1), kronecker_embed(ts222, N2))
