import random

import pytest

from semicanon.canonical import Point, TubeModuleSpec, jordan_pair, tube_module
from semicanon.errors import DimensionMismatch, SingularBlock
from semicanon.exactfield import Matrix, rank
from semicanon.quiver import kronecker_quiver
from semicanon.repkit import (GroupElement, Representation, apply_element, check_relations, direct_sum,
                              ext_dim, group_act, hom_dim, hom_space, identity_group_element,
                              is_isomorphic, minimal_projective_presentation, projective_rep,
                              quotient_rep, random_group_element, simple_rep)


def kron_point(F, zeta, xi):
    K = kronecker_quiver()
    return Representation(K, F, {"1": 1, "2": 1},
                          {"alpha": Matrix.from_rows(F, [[zeta]]), "beta": Matrix.from_rows(F, [[xi]])})


def ones_rep(ts, F, first3=1):
    mats = {a.id: Matrix.from_rows(F, [[1]]) for a in ts.quiver.arrows}
    mats["a3.1"] = Matrix.from_rows(F, [[first3]])
    return Representation(ts.quiver, F, ts.h, mats, check=False)


def test_check_relations_examples(k2, ts222, F):
    assert check_relations(kron_point(F, 1, 2))
    # oracle: 1 - 1 - 2*1 = -2
    assert not check_relations(ones_rep(ts222, F))
    assert check_relations(ones_rep(ts222, F, first3=3))


def test_shape_validation(k2, F):
    with pytest.raises(DimensionMismatch):
        Representation(k2.quiver, F, {"1": 2, "2": 1}, {"alpha": Matrix.zeros(F, 1, 1)})


def test_apply_element(k2, F):
    M = kron_point(F, 3, 5)
    K = k2.quiver
    assert apply_element(M, K.trivial("1", F)) == Matrix.identity(F, 1)
    assert apply_element(M, K.element("2", "1", [(1, ("alpha",))], F)) == M.mats["alpha"]
    zeta, xi = 2, 7
    elt = K.element("2", "1", [(xi, ("alpha",)), (-zeta, ("beta",))], F)
    assert apply_element(M, elt) == Matrix.from_rows(F, [[xi * 3 - zeta * 5]])


def test_hom_space_examples(k2, F):
    S = simple_rep(k2.quiver, F, "1")
    assert hom_space(S, S)[0] == 1
    assert hom_dim(kron_point(F, 1, 0), kron_point(F, 0, 1)) == 0
    dim, basis = hom_space(kron_point(F, 1, 3), kron_point(F, 1, 3))
    assert dim == 1
    phi = basis[0]
    assert phi["1"] == phi["2"]


def test_hom_intertwines(ts222, F):
    A = tube_module(ts222, TubeModuleSpec(0, 0, 3), F)
    B = tube_module(ts222, TubeModuleSpec(0, 1, 3), F)
    _, basis = hom_space(A, B)
    for phi in basis:
        for a in ts222.quiver.arrows:
            assert B.mats[a.id] @ phi[a.source] == phi[a.target] @ A.mats[a.id]


def test_presentation_of_projective(ts222, F):
    P = projective_rep(ts222.quiver, "0", F)
    pres = minimal_projective_presentation(P)
    assert pres.p1 == [] and pres.p0 == ["0"]


def test_presentation_of_kronecker_point(k2, F):
    zeta, xi = F(2), F(5)
    N = kron_point(F, zeta, xi)
    pres = minimal_projective_presentation(N)
    assert pres.p1 == ["1"] and pres.p0 == ["2"]
    f = pres.blocks[0][0]
    a, b = f.coords
    # f is proportional to xi*alpha - zeta*beta
    assert F.reduce(a * zeta + b * xi) == 0 and (a, b) != (0, 0)


def test_presentation_of_arm_simple(ts222, F):
    S = simple_rep(ts222.quiver, F, "1.1")
    pres = minimal_projective_presentation(S)
    assert pres.p1 == ["w"] and pres.p0 == ["1.1"]
    terms = pres.blocks[0][0].terms(ts222.quiver)
    assert len(terms) == 1 and terms[0][1] == ("a1.2",)


@pytest.mark.parametrize("vspec", [(0, 0, 1), (0, 1, 2), (1, 0, 3), (2, 1, 1)])
def test_kernel_of_hom_f_equals_hom(ts222, F, vspec):
    V = tube_module(ts222, TubeModuleSpec(*vspec), F)
    pres = minimal_projective_presentation(V)
    targets = [tube_module(ts222, TubeModuleSpec(k, i, n), F)
               for k in range(3) for i in range(2) for n in (1, 2, 3)]
    targets.append(tube_module(ts222, TubeModuleSpec(Point.of(1, 1), 0, 2), F))
    for M in targets:
        H = pres.hom_matrix(M)
        kerdim = H.cols - rank(H) if H.rows else H.cols
        assert kerdim == hom_dim(V, M)


def test_direct_sum_and_group_action(k2, F):
    rng = random.Random(1)
    M = direct_sum(kron_point(F, 1, 2), jordan_pair(Point.of(1, 3), 2, F))
    assert M.dim == {"1": 3, "2": 3}
    assert group_act(identity_group_element(M), M) == M
    g = random_group_element(M, rng)
    h = random_group_element(M, rng)
    assert group_act(g, group_act(h, M)) == group_act(g @ h, M)
    assert check_relations(group_act(g, M))


def test_singular_block_rejected(F):
    with pytest.raises(SingularBlock):
        GroupElement({"1": Matrix.zeros(F, 1, 1)})


def test_hom_additive(ts222, F):
    A = tube_module(ts222, TubeModuleSpec(0, 0, 2), F)
    B = tube_module(ts222, TubeModuleSpec(1, 1, 1), F)
    N = tube_module(ts222, TubeModuleSpec(0, 1, 3), F)
    assert hom_dim(direct_sum(A, B), N) == hom_dim(A, N) + hom_dim(B, N)


def test_relations_invariant_under_group_action(ts222, F):
    rng = random.Random(2)
    M = tube_module(ts222, TubeModuleSpec(2, 0, 3), F)
    assert check_relations(group_act(random_group_element(M, rng), M))


def test_quotient_and_isomorphism(ts222, F):
    rng = random.Random(3)
    big = tube_module(ts222, TubeModuleSpec(0, 0, 3), F)
    small = tube_module(ts222, TubeModuleSpec(0, 0, 1), F)
    sub = {v: [[F.one if i == j else F.zero for i in range(big.dim[v])] for j in range(small.dim[v])]
           for v in ts222.vertices}
    Qm = quotient_rep(big, sub)
    assert is_isomorphic(Qm, tube_module(ts222, TubeModuleSpec(0, 1, 2), F), rng)
    assert not is_isomorphic(Qm, tube_module(ts222, TubeModuleSpec(0, 0, 2), F), rng)


def test_ext_between_tube_simples(ts222, F):
    S0 = tube_module(ts222, TubeModuleSpec(0, 0, 1), F)
    S1 = tube_module(ts222, TubeModuleSpec(0, 1, 1), F)
    # Ext^1(R_1, R_0) != 0 glues R_0^{(2)}; Ext^1(R_0, R_0) = 0 in a rank-2 tube
    assert ext_dim(S0, S1) == 1
    assert ext_dim(S0, S0) == 0
