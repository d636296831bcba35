import pytest

from semicanon.errors import RelationFailure, ZeroMass
from semicanon.presentation import hilbert_check, presentation, relation_coefficients, verify_relations
from semicanon.canonical import Point
from semicanon.regular import RegularProfile, compose
from semicanon.semiinv import SamplePool, enumerate_monomials


def two_h(ts):
    return {v: 2 * ts.h[v] for v in ts.vertices}


def test_presentation_2h(ts222, F):
    rep = presentation(ts222, two_h(ts222), F)
    assert rep.p == 2 and len(rep.s_generators) == 3
    assert len(rep.relations) == 3 and rep.i_of_d == 3
    assert rep.reduced_equation_count == 0 and rep.is_polynomial
    assert len(rep.t_generators) == 6
    for rel in rep.relations:
        assert rel.point == ts222.tubes[rel.tube].point
        assert len(rel.monomial) == 2 and not rel.variable_eliminating


def test_presentation_kronecker(k2, F):
    rep = presentation(k2, {"1": 3, "2": 3}, F)
    assert rep.relations == [] and rep.t_generators == []
    assert len(rep.s_generators) == 4 and rep.is_polynomial


def test_presentation_with_residual(ts222, F):
    d = [1, 2, 1, 1, 1]
    rep = presentation(ts222, d, F)
    assert rep.p == 1 and rep.i_of_d == 2 and rep.is_polynomial
    assert rep.relations[0].variable_eliminating


def test_presentation_statistics_invariant(ts333, F):
    for prof in [RegularProfile(1, ((0, 0, 0),) * 3), RegularProfile(1, ((0, 1, 0), (0, 0, 0), (0, 0, 0)))]:
        rep = presentation(ts333, compose(ts333, prof), F)
        assert rep.reduced_equation_count == max(0, rep.i_of_d - rep.p - 1)
        assert rep.is_polynomial == (rep.i_of_d <= rep.p + 1)
    rep = presentation(ts333, compose(ts333, RegularProfile(1, ((0, 0, 0),) * 3)), F)
    assert rep.i_of_d == 3 and rep.reduced_equation_count == 1 and not rep.is_polynomial


def test_non_polynomial_case_certified(ts333, F):
    # p = 1 and three tubes with |calI| = 3: one essential equation
    d = dict(ts333.h)
    rep = presentation(ts333, d, F)
    pool = SamplePool(ts333, d, F, 0, gens=rep.t_generators)
    cert = verify_relations(ts333, d, rep, F, samples=40, pool=pool)
    assert cert["passed"] and all(e["matchesCalibrated"] for e in cert["relations"])
    rows = hilbert_check(ts333, d, rep, ["h", "2h"], F, pool=pool)
    assert [(r["aDimension"], r["prediction"], r["measured"]) for r in rows] == [(5, 2, 2), (15, 3, 3)]


def test_zero_mass(ts222, F):
    with pytest.raises(ZeroMass):
        presentation(ts222, ts222.e(0, 1), F)


def test_relation_coefficients():
    assert relation_coefficients(Point.of(1, 3), 2) == [1, 3, 9]
    assert relation_coefficients(Point.of(0, 1), 2) == [0, 0, 1]


def test_report_json(ts222, F):
    out = presentation(ts222, two_h(ts222), F).to_json()
    assert out["vertexOrder"] == list(ts222.vertices)
    assert out["iOfD"] == 3 and out["isPolynomial"] is True
    assert len(out["relations"]) == 3


@pytest.fixture(scope="module")
def cert_2h(ts222, F):
    d = two_h(ts222)
    rep = presentation(ts222, d, F)
    pool = SamplePool(ts222, d, F, 0, gens=rep.t_generators)
    return d, rep, pool, verify_relations(ts222, d, rep, F, samples=100, pool=pool)


def test_verify_2h(ts222, cert_2h):
    _, _, _, cert = cert_2h
    assert cert["passed"]
    for entry in cert["relations"]:
        assert entry["matchesCalibrated"] and entry["maxResidual"] == 0
    arm3 = cert["relations"][2]
    assert arm3["pointLabel"] == ts222.tubes[2].point.key() == "(1:-1/2)"


def test_verify_corrupted(ts222, F, cert_2h):
    d, rep, pool, _ = cert_2h
    for k in range(3):
        with pytest.raises(RelationFailure) as info:
            verify_relations(ts222, d, rep, F, samples=20, pool=pool, corrupt=k, check_alternative=False)
        assert info.value.witness is not None


def test_verify_independent_samples_agree(ts222, F, cert_2h):
    d, rep, _, cert = cert_2h
    other = verify_relations(ts222, d, rep, F, samples=30, seed=5, check_alternative=False)
    assert [e["recovered"] for e in other["relations"]] == [e["recovered"] for e in cert["relations"]]


def test_verify_kronecker(k2, F):
    d = {"1": 2, "2": 2}
    cert = verify_relations(k2, d, presentation(k2, d, F), F, samples=5)
    assert cert["passed"] and cert["relations"] == []


def test_hilbert_check(ts222, F, cert_2h):
    d, rep, pool, _ = cert_2h
    rows = hilbert_check(ts222, d, rep, ["0h", "h", "2h"], F, pool=pool)
    assert [(r["aDimension"], r["prediction"], r["measured"]) for r in rows] == [(1, 1, 1), (6, 3, 3), (21, 6, 6)]
    assert all(r["aDimension"] == r["aBinomial"] for r in rows)
    gen = rep.t_generators[0]
    single = hilbert_check(ts222, d, rep, [[gen.degree[v] for v in ts222.vertices]], F, pool=pool)[0]
    assert (single["aDimension"], single["prediction"], single["measured"]) == (1, 1, 1)


def test_monomial_count_matches_binomial(ts233, F):
    from math import comb
    d = compose(ts233, RegularProfile(1, ((0, 0), (0, 0, 0), (0, 0, 0))))
    rep = presentation(ts233, d, F)
    for s in range(4):
        r = {v: s * ts233.h[v] for v in ts233.vertices}
        assert len(enumerate_monomials(ts233, rep.p, rep.t_generators, r)) == comb(s + rep.p + 3, s)
