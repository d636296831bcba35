import itertools
import random

import pytest

from semicanon.canonical import TubeModuleSpec, tube_module
from semicanon.errors import NotRegular
from semicanon.quiver import tits_form
from semicanon.regular import (RegularProfile, SegmentSpec, classify, compose, decompose, ext_minimal,
                               ext_minimal_module, expected_end_dim, index_data, is_regular, pairings,
                               realize, segments_for_residual, tube_hom_dim, tube_index)
from semicanon.repkit import direct_sum, end_dim, hom_dim, projective_rep


def test_decompose_examples(ts222):
    prof = decompose(ts222, ts222.h)
    assert prof.p == 1 and prof.residual == ((0, 0),) * 3
    # oracle value: (1,2,1,1,1) -> p = 1, p_{lambda_1,1} = 1
    prof = decompose(ts222, [1, 2, 1, 1, 1])
    assert prof == RegularProfile(1, ((0, 1), (0, 0), (0, 0)))
    d = {v: 3 * ts222.h[v] + ts222.e(0, 0)[v] + ts222.e(0, 1)[v] for v in ts222.vertices}
    assert decompose(ts222, d) == RegularProfile(4, ((0, 0),) * 3)


def test_decompose_rejects(ts222):
    with pytest.raises(NotRegular):
        decompose(ts222, [1, 0, 0, 0, 0])
    with pytest.raises(NotRegular):
        decompose(ts222, [0, 0, 0, 0, 1])
    assert not is_regular(ts222, [1, 0, 0, 0, 0])


@pytest.mark.parametrize("fixture", ["ts222", "ts233", "ts333"])
def test_compose_decompose_round_trip(request, fixture):
    ts = request.getfixturevalue(fixture)
    rng = random.Random(1)
    for _ in range(60):
        res = []
        for t in ts.tubes:
            vals = [rng.randrange(3) for _ in range(t.rank)]
            vals[rng.randrange(t.rank)] = 0
            res.append(tuple(vals))
        prof = RegularProfile(rng.randrange(3), tuple(res))
        d = compose(ts, prof)
        assert decompose(ts, d) == prof
        assert compose(ts, decompose(ts, d)) == d


def test_profile_json(ts233):
    prof = RegularProfile(2, ((0, 1), (0, 2, 1), (0, 0, 0)))
    assert RegularProfile.from_json(prof.to_json(), ts233) == prof


def test_index_data_examples():
    t = tube_index((0, 1))
    assert t.calI == [0] and t.n[0] == 2 and t.calI0 == [0]
    t = tube_index((0, 0, 0))
    assert t.calI == t.calI0 == [0, 1, 2] and all(t.n[i] == 1 for i in range(3))
    t = tube_index((0, 2, 1))
    assert t.calI0 == [0] and t.calI == [0] and t.n[0] == 3
    t = tube_index((0,))
    assert t.calI == [0] and t.n == {0: 1}


def test_index_data_profile():
    data = index_data(RegularProfile(1, ((0, 1), (0, 0))))
    assert [t.calI for t in data.tubes] == [[0], [0, 1]]
    for t in data.tubes:
        assert set(t.calI0) <= set(t.calI)


def test_segments_examples():
    assert segments_for_residual(0, (0, 2, 1)) == [SegmentSpec(0, 1, 2), SegmentSpec(0, 1, 1)]
    assert segments_for_residual(0, (0, 1, 0)) == [SegmentSpec(0, 1, 1)]
    assert segments_for_residual(0, (0, 0)) == []


def test_ext_minimal_multiple_of_h(ts222, F):
    d = {v: 2 * ts222.h[v] for v in ts222.vertices}
    segs, homog = ext_minimal(ts222, d)
    assert segs == [] and homog[1] == 2 and homog[0] not in ts222.exceptional_points
    W = realize(ts222, segs, homog, F)
    assert end_dim(W) == 2
    avoid = [homog[0]]
    assert ext_minimal(ts222, d, avoid)[1][0] != homog[0]


def test_classify_examples(ts222, F):
    assert classify(ts222, ts222.h) == "R"
    P0 = projective_rep(ts222.quiver, "0", F)
    assert classify(ts222, P0.dim) == "P"
    assert pairings(ts222, P0.dim) == (1, -1)
    assert classify(ts222, ts222.e(0, 1)) == "R"


def test_tube_hom_dim_examples():
    assert tube_hom_dim(2, 0, 2, 0, 2) == 1
    assert tube_hom_dim(1, 0, 3, 0, 3) == 3
    assert tube_hom_dim(2, 0, 2, 0, 2, same_tube=False) == 0


def _residuals(rank, bound=2):
    for vals in itertools.product(range(bound + 1), repeat=rank):
        if min(vals) == 0:
            yield vals


@pytest.mark.parametrize("k", [0, 1])
def test_end_dimension_of_ext_minimal(ts233, F, k):
    for res in _residuals(ts233.tubes[k].rank):
        for p in (0, 1):
            residual = [tuple([0] * t.rank) for t in ts233.tubes]
            residual[k] = res
            d = compose(ts233, RegularProfile(p, tuple(residual)))
            W = ext_minimal_module(ts233, d, F)
            assert W.dim == d
            assert end_dim(W) == expected_end_dim(ts233, d) == p + tits_form(ts233.quiver, d, d)


def test_other_witnesses_are_not_smaller(ts233, F):
    # every direct sum of tube modules of the same dimension has End at least as large
    d = compose(ts233, RegularProfile(0, ((0, 0), (0, 1, 1), (0, 0, 0))))
    best = expected_end_dim(ts233, d)
    candidates = [
        [TubeModuleSpec(1, 1, 2)],
        [TubeModuleSpec(1, 1, 1), TubeModuleSpec(1, 2, 1)],
    ]
    for specs in candidates:
        W = direct_sum(*[tube_module(ts233, s, F) for s in specs])
        assert W.dim == d
        assert end_dim(W) >= best
    assert end_dim(direct_sum(*[tube_module(ts233, s, F) for s in candidates[0]])) == best


@pytest.mark.parametrize("k", [0, 1])
def test_hom_vanishing_on_ext_minimal(ts233, F, k):
    r = ts233.tubes[k].rank
    checked = 0
    for res in _residuals(r):
        if not any(res):
            continue
        segs = segments_for_residual(k, res)
        W = realize(ts233, segs, None, F)
        for i in range(r):
            for n in range(1, 2 * r + 1):
                if res[(i + n) % r] != res[i]:
                    continue
                if any(res[j % r] < res[i] for j in range(i, i + n + 1)):
                    continue
                V = tube_module(ts233, TubeModuleSpec(k, i + 1, n), F)
                assert hom_dim(V, W) == 0
                checked += 1
    assert checked > 0


def test_tube_hom_dim_agrees_with_models(ts333, F):
    r = 3
    for i, j in itertools.product(range(r), repeat=2):
        for n, m in itertools.product(range(1, 5), repeat=2):
            A = tube_module(ts333, TubeModuleSpec(2, i, n), F)
            B = tube_module(ts333, TubeModuleSpec(2, j, m), F)
            assert hom_dim(A, B) == tube_hom_dim(r, i, n, j, m)
