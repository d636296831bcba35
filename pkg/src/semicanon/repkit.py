"""Concrete representations of bound quivers and their homological linear algebra."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import DimensionMismatch, SingularBlock, VertexMismatch
from .exactfield import (Matrix, SpanTester, complement_basis, det, field_from_json, inverse,
                         kernel_basis, rank)
from .quiver import AlgebraElement, BoundQuiver, Path


class Representation:
    """One matrix of shape d(t a) x d(s a) per arrow, over an exact field."""

    def __init__(self, quiver: BoundQuiver, field, dim: Mapping[str, int], mats: Mapping[str, Matrix],
                 check: bool = True):
        self.quiver = quiver
        self.field = field
        self.dim = quiver.dimvec(dim)
        self.mats: Dict[str, Matrix] = {}
        for a in quiver.arrows:
            m = mats.get(a.id)
            shape = (self.dim[a.target], self.dim[a.source])
            if m is None:
                m = Matrix.zeros(field, *shape)
            elif m.shape != shape:
                raise DimensionMismatch(f"arrow {a.id}: matrix {m.shape}, expected {shape}")
            self.mats[a.id] = m
        if check and not check_relations(self):
            raise ValueError("representation does not satisfy the relations")

    @property
    def total_dim(self) -> int:
        return sum(self.dim.values())

    def path_matrix(self, path: Path, vertex: Optional[str] = None) -> Matrix:
        if not path:
            return Matrix.identity(self.field, self.dim[vertex])
        m = self.mats[path[0]]
        for a in path[1:]:
            m = self.mats[a] @ m
        return m

    def __eq__(self, other):
        return (isinstance(other, Representation) and self.quiver.same_as(other.quiver)
                and self.dim == other.dim and self.mats == other.mats)

    def __repr__(self):
        dims = ",".join(str(self.dim[v]) for v in self.quiver.vertices)
        return f"Representation(dim=({dims}))"

    def to_json(self, algebra=None) -> dict:
        F = self.field
        return {
            "algebra": algebra if algebra is not None else self.quiver.to_json(),
            "dim": dict(self.dim),
            "matrices": {a: [[F.to_str(x) for x in row] for row in m.tolist()] for a, m in self.mats.items()},
            "field": F.to_json(),
        }

    @classmethod
    def from_json(cls, obj, quiver: Optional[BoundQuiver] = None, field=None) -> "Representation":
        if quiver is None:
            quiver = BoundQuiver.from_json(obj["algebra"])
        if field is None:
            field = field_from_json(obj.get("field"))
        dim = quiver.dimvec(obj["dim"])
        mats = {}
        for a in quiver.arrows:
            rows = obj.get("matrices", {}).get(a.id)
            shape = (dim[a.target], dim[a.source])
            if rows is None or shape[0] == 0 or shape[1] == 0:
                mats[a.id] = Matrix.zeros(field, *shape)
            else:
                mats[a.id] = Matrix.from_rows(field, rows)
        return cls(quiver, field, dim, mats)


def zero_rep(quiver: BoundQuiver, field) -> Representation:
    return Representation(quiver, field, {v: 0 for v in quiver.vertices}, {})


def simple_rep(quiver: BoundQuiver, field, x: str) -> Representation:
    return Representation(quiver, field, {v: int(v == x) for v in quiver.vertices}, {})


def apply_element(M: Representation, a: AlgebraElement) -> Matrix:
    """M(a): M(source) -> M(target) for a linear combination of paths."""
    F = M.field
    out = Matrix.zeros(F, M.dim[a.target], M.dim[a.source])
    for c, path in zip(a.coords, M.quiver.paths(a.source, a.target)):
        if c != 0:
            out = out + M.path_matrix(path, a.source).scale(F(c) if a.field != F else c)
    return out


def check_relations(M: Representation) -> bool:
    Q = M.quiver
    F = M.field
    for rel in Q.relations:
        s, t = Q.relation_ends(rel)
        acc = Matrix.zeros(F, M.dim[t], M.dim[s])
        for c, path in rel:
            acc = acc + M.path_matrix(path).scale(F(c))
        if not acc.is_zero():
            return False
    return True


def direct_sum(*reps: Representation) -> Representation:
    first = reps[0]
    Q, F = first.quiver, first.field
    for R in reps[1:]:
        if not R.quiver.same_as(Q):
            raise VertexMismatch("direct sum of representations of different quivers")
    dim = {v: sum(R.dim[v] for R in reps) for v in Q.vertices}
    mats = {a.id: Matrix.block_diagonal(F, [R.mats[a.id] for R in reps]) for a in Q.arrows}
    return Representation(Q, F, dim, mats, check=False)


@dataclass
class GroupElement:
    """An element of GL(d): one invertible block per vertex."""

    blocks: Dict[str, Matrix]

    def __post_init__(self):
        for v, b in self.blocks.items():
            if b.rows != b.cols or (b.rows and det(b) == 0):
                raise SingularBlock(f"block at vertex {v} is not invertible")

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement({v: self.blocks[v] @ other.blocks[v] for v in self.blocks})

    def inverse(self) -> "GroupElement":
        return GroupElement({v: inverse(b) if b.rows else b for v, b in self.blocks.items()})

    def character(self, weight: Mapping[str, int], field):
        """chi^theta(g) = prod_x det g(x)^theta(x)."""
        out = field.one
        for v, b in self.blocks.items():
            e = weight.get(v, 0)
            if e == 0 or b.rows == 0:
                continue
            dv = det(b)
            out = field.reduce(out * (dv ** e if e > 0 else field.inv(dv) ** (-e)))
        return out


def identity_group_element(M: Representation) -> GroupElement:
    return GroupElement({v: Matrix.identity(M.field, n) for v, n in M.dim.items()})


def random_group_element(M: Representation, rng, bound: Optional[int] = None) -> GroupElement:
    F = M.field
    blocks = {}
    for v, n in M.dim.items():
        while True:
            b = Matrix(F, n, n, [[F.random(rng, bound) for _ in range(n)] for _ in range(n)])
            if n == 0 or det(b) != 0:
                break
        blocks[v] = b
    return GroupElement(blocks)


def group_act(g: GroupElement, M: Representation) -> Representation:
    """(g * M)(a) = g(t a) M(a) g(s a)^{-1}."""
    for v, b in g.blocks.items():
        if b.rows != M.dim[v]:
            raise DimensionMismatch(f"group block at {v} has size {b.rows}, expected {M.dim[v]}")
    invs = {v: (inverse(b) if b.rows else b) for v, b in g.blocks.items()}
    mats = {a.id: g.blocks[a.target] @ M.mats[a.id] @ invs[a.source] for a in M.quiver.arrows}
    return Representation(M.quiver, M.field, M.dim, mats, check=False)


# -- Hom spaces ------------------------------------------------------------------

def _hom_system(M: Representation, N: Representation):
    """Matrix of the intertwiner equations N(a) phi_s - phi_t M(a) = 0."""
    Q, F = M.quiver, M.field
    offsets = {}
    n = 0
    for v in Q.vertices:
        offsets[v] = n
        n += N.dim[v] * M.dim[v]
    rows = []
    red = F.reduce
    for a in Q.arrows:
        s, t = a.source, a.target
        A, B = M.mats[a.id], N.mats[a.id]
        ms, mt, ns, nt = M.dim[s], M.dim[t], N.dim[s], N.dim[t]
        # phi_v is N(v) x M(v), flattened row-major at offsets[v]
        for i in range(nt):
            for j in range(ms):
                row = [F.zero] * n
                for k in range(ns):
                    c = B[i, k]
                    if c != 0:
                        idx = offsets[s] + k * ms + j
                        row[idx] = red(row[idx] + c)
                for k in range(mt):
                    c = A[k, j]
                    if c != 0:
                        idx = offsets[t] + i * mt + k
                        row[idx] = red(row[idx] - c)
                if any(x != 0 for x in row):
                    rows.append(row)
    return Matrix(F, len(rows), n, rows), offsets


def _unflatten(M: Representation, N: Representation, vec, offsets) -> Dict[str, Matrix]:
    F = M.field
    out = {}
    for v in M.quiver.vertices:
        r, c = N.dim[v], M.dim[v]
        o = offsets[v]
        out[v] = Matrix(F, r, c, [list(vec[o + i * c:o + (i + 1) * c]) for i in range(r)])
    return out


def hom_space(M: Representation, N: Representation) -> Tuple[int, List[Dict[str, Matrix]]]:
    """(dimension, basis) of Hom(M, N) as tuples of vertex maps."""
    if not M.quiver.same_as(N.quiver):
        raise VertexMismatch("Hom between representations of different quivers")
    system, offsets = _hom_system(M, N)
    nvars = system.cols
    if nvars == 0:
        return 0, []
    if system.rows == 0:
        basis = []
        for k in range(nvars):
            v = [M.field.zero] * nvars
            v[k] = M.field.one
            basis.append(v)
    else:
        basis = kernel_basis(system)
    return len(basis), [_unflatten(M, N, b, offsets) for b in basis]


def hom_dim(M: Representation, N: Representation) -> int:
    if not M.quiver.same_as(N.quiver):
        raise VertexMismatch("Hom between representations of different quivers")
    system, _ = _hom_system(M, N)
    return system.cols - rank(system)


def end_dim(M: Representation) -> int:
    return hom_dim(M, M)


def is_isomorphic(M: Representation, N: Representation, rng, attempts: int = 4) -> bool:
    """Certify M ~ N by finding an invertible element of Hom(M, N)."""
    if M.dim != N.dim:
        return False
    F = M.field
    _, basis = hom_space(M, N)
    if not basis:
        return M.total_dim == 0
    for _ in range(attempts):
        coeffs = [F.random(rng) for _ in basis]
        ok = True
        for v in M.quiver.vertices:
            if M.dim[v] == 0:
                continue
            acc = Matrix.zeros(F, N.dim[v], M.dim[v])
            for c, phi in zip(coeffs, basis):
                acc = acc + phi[v].scale(c)
            if det(acc) == 0:
                ok = False
                break
        if ok:
            return True
    return False


# -- sub, quotient, extension ----------------------------------------------------

def quotient_rep(M: Representation, sub: Mapping[str, Sequence[Sequence]]) -> Representation:
    """M / U for a subrepresentation U given by spanning column vectors per vertex."""
    Q, F = M.quiver, M.field
    info = {}
    for v in Q.vertices:
        n = M.dim[v]
        tester = SpanTester(F, n)
        ubasis = [list(u) for u in sub.get(v, []) if tester.add(u)]
        cbasis = complement_basis(F, ubasis, n)
        # coordinates w.r.t. (U basis, complement basis)
        change = inverse(Matrix.from_columns(F, ubasis + cbasis, n)) if n else None
        info[v] = (len(ubasis), cbasis, change)
    dim = {v: len(info[v][1]) for v in Q.vertices}
    mats = {}
    for a in Q.arrows:
        _, cb, _ = info[a.source]
        kt, _, change = info[a.target]
        nt = M.dim[a.target]
        if not cb or nt == kt:
            mats[a.id] = Matrix.zeros(F, nt - kt, len(cb))
            continue
        coords = change @ (M.mats[a.id] @ Matrix.from_columns(F, cb, M.dim[a.source]))
        mats[a.id] = coords.submatrix(range(kt, nt), range(len(cb)))
    return Representation(Q, F, dim, mats, check=False)


def extension_space(X: Representation, S: Representation):
    """Cocycles and coboundaries for extensions 0 -> X -> Y -> S -> 0.

    Y(a) = [[X(a), C_a], [0, S(a)]] with C_a : S(s a) -> X(t a).  Returns
    (cocycle basis, coboundary tester, layout), where cocycles are the C
    satisfying the relations and coboundaries are C_a = X(a) phi_s - phi_t S(a).
    """
    Q, F = X.quiver, X.field
    red = F.reduce
    layout = {}
    n = 0
    for a in Q.arrows:
        layout[a.id] = n
        n += X.dim[a.target] * S.dim[a.source]
    # relation equations, linear in C
    eq_rows = []
    for rel in Q.relations:
        s0, t0 = Q.relation_ends(rel)
        for i in range(X.dim[t0]):
            for j in range(S.dim[s0]):
                eq_rows.append([F.zero] * n)
        base = len(eq_rows) - X.dim[t0] * S.dim[s0]
        for c, path in rel:
            c = F(c)
            for k, a in enumerate(path):
                # X(after) C_a S(before)
                before = path[:k]
                after = path[k + 1:]
                arrow = Q.arrow[a]
                Sb = S.path_matrix(before, s0)
                Xa = X.path_matrix(after, arrow.target)
                off = layout[a]
                cols_c = S.dim[arrow.source]
                for i in range(X.dim[t0]):
                    for j in range(S.dim[s0]):
                        row = eq_rows[base + i * S.dim[s0] + j]
                        for p in range(X.dim[arrow.target]):
                            xa = Xa[i, p]
                            if xa == 0:
                                continue
                            for q in range(cols_c):
                                sb = Sb[q, j]
                                if sb != 0:
                                    idx = off + p * cols_c + q
                                    row[idx] = red(row[idx] + c * xa * sb)
    if n == 0:
        cocycles = []
    elif eq_rows:
        cocycles = kernel_basis(Matrix(F, len(eq_rows), n, eq_rows))
    else:
        cocycles = [[F.one if i == k else F.zero for i in range(n)] for k in range(n)]
    tester = SpanTester(F, n)
    for v in Q.vertices:
        for r in range(X.dim[v]):
            for c in range(S.dim[v]):
                vec = [F.zero] * n
                for a in Q.out_arrows[v]:
                    # X(a) E_rc : S(v) -> X(t a)
                    off = layout[a.id]
                    cc = S.dim[a.source]
                    A = X.mats[a.id]
                    for p in range(X.dim[a.target]):
                        if A[p, r] != 0:
                            idx = off + p * cc + c
                            vec[idx] = red(vec[idx] + A[p, r])
                for a in Q.in_arrows[v]:
                    # - E_rc S(a) : S(s a) -> X(v)
                    off = layout[a.id]
                    cc = S.dim[a.source]
                    B = S.mats[a.id]
                    for q in range(cc):
                        if B[c, q] != 0:
                            idx = off + r * cc + q
                            vec[idx] = red(vec[idx] - B[c, q])
                tester.add(vec)
    return cocycles, tester, layout


def ext_dim(X: Representation, S: Representation) -> int:
    """dim Ext^1(S, X) via cocycles modulo coboundaries."""
    cocycles, tester, _ = extension_space(X, S)
    return len(cocycles) - tester.dim


def nonsplit_extension(X: Representation, S: Representation, require_unique: bool = True) -> Representation:
    """A non-split extension 0 -> X -> Y -> S -> 0 (first cocycle not a coboundary)."""
    Q, F = X.quiver, X.field
    cocycles, tester, layout = extension_space(X, S)
    ext = len(cocycles) - tester.dim
    if ext == 0:
        raise ValueError("Ext^1(S, X) = 0: every extension splits")
    if require_unique and ext != 1:
        raise ValueError(f"Ext^1(S, X) has dimension {ext}, expected 1")
    chosen = next(c for c in cocycles if not tester.contains(c))
    dim = {v: X.dim[v] + S.dim[v] for v in Q.vertices}
    mats = {}
    for a in Q.arrows:
        rt, cs = X.dim[a.target], S.dim[a.source]
        off = layout[a.id]
        C = Matrix(F, rt, cs, [chosen[off + p * cs:off + (p + 1) * cs] for p in range(rt)])
        mats[a.id] = Matrix.block(F, [rt, S.dim[a.target]], [X.dim[a.source], cs],
                                  [[X.mats[a.id], C], [None, S.mats[a.id]]])
    Y = Representation(Q, F, dim, mats, check=False)
    if not check_relations(Y):
        raise AssertionError("extension violates the relations")
    return Y


# -- projective presentations ------------------------------------------------------

def projective_rep(quiver: BoundQuiver, x: str, field) -> Representation:
    """P_x with P_x(y) = k Q(x, y) / I in the quotient bases; arrows act by post-composition."""
    dim = {y: quiver.quotient(x, y, field).dim for y in quiver.vertices}
    mats = {}
    for a in quiver.arrows:
        qs = quiver.quotient(x, a.source, field)
        qt = quiver.quotient(x, a.target, field)
        cols = [qt.reduce_path(p + (a.id,)) for p in qs.basis_paths]
        mats[a.id] = Matrix.from_columns(field, cols, qt.dim) if cols else Matrix.zeros(field, qt.dim, 0)
    return Representation(quiver, field, dim, mats, check=False)


def radical_span(M: Representation, v: str) -> List[list]:
    cols = []
    for a in M.quiver.in_arrows[v]:
        cols.extend(M.mats[a.id].columns())
    return cols


def top_generators(M: Representation) -> Dict[str, List[list]]:
    """Vectors per vertex spanning a complement of the radical (sum of arrow images)."""
    F = M.field
    return {v: complement_basis(F, radical_span(M, v), M.dim[v]) for v in M.quiver.vertices}


@dataclass
class PresentationMap:
    """P1 --f--> P0 with f given by algebra elements.

    ``p1`` and ``p0`` list the vertices of the indecomposable summands;
    ``blocks[i][j]`` is an element from ``p0[j]`` to ``p1[i]`` so that
    Hom(f, M) sends (+) M(p0) to (+) M(p1).
    """

    p1: List[str]
    p0: List[str]
    blocks: List[List[AlgebraElement]]

    def multiplicities(self, quiver: BoundQuiver) -> Tuple[Dict[str, int], Dict[str, int]]:
        m1 = {v: self.p1.count(v) for v in quiver.vertices}
        m0 = {v: self.p0.count(v) for v in quiver.vertices}
        return m1, m0

    def weight(self, quiver: BoundQuiver) -> Dict[str, int]:
        m1, m0 = self.multiplicities(quiver)
        return {v: m0[v] - m1[v] for v in quiver.vertices}

    def hom_matrix(self, M: Representation) -> Matrix:
        F = M.field
        rows = [M.dim[y] for y in self.p1]
        cols = [M.dim[x] for x in self.p0]
        blocks = [[apply_element(M, b) for b in row] for row in self.blocks]
        return Matrix.block(F, rows, cols, blocks)

    def to_json(self, field) -> dict:
        return {
            "P1": list(self.p1),
            "P0": list(self.p0),
            "f": [[{"from": b.source, "to": b.target, "coords": [field.to_str(c) for c in b.coords]}
                   for b in row] for row in self.blocks],
        }


def minimal_projective_presentation(V: Representation) -> PresentationMap:
    Q, F = V.quiver, V.field
    gens = top_generators(V)
    p0 = [x for x in Q.vertices for _ in gens[x]]
    gen_vecs = [g for x in Q.vertices for g in gens[x]]
    projs = {x: projective_rep(Q, x, F) for x in set(p0)}
    P0 = direct_sum(*[projs[x] for x in p0]) if p0 else None
    if P0 is None:
        return PresentationMap([], [], [])
    # pi_y : P0(y) -> V(y)
    kernel: Dict[str, List[list]] = {}
    for y in Q.vertices:
        cols = []
        for x, g in zip(p0, gen_vecs):
            q = Q.quotient(x, y, F)
            for path in q.basis_paths:
                cols.append(V.path_matrix(path, x).apply(g))
        if not cols:
            kernel[y] = []
            continue
        pi = Matrix.from_columns(F, cols, V.dim[y])
        if V.dim[y] == 0:
            kernel[y] = [[F.one if i == k else F.zero for i in range(len(cols))] for k in range(len(cols))]
        else:
            kernel[y] = kernel_basis(pi)
    p1: List[str] = []
    relvecs: List[Tuple[str, list]] = []
    for y in Q.vertices:
        n = P0.dim[y]
        rad = []
        for a in Q.in_arrows[y]:
            A = P0.mats[a.id]
            rad.extend(A.apply(k) for k in kernel[a.source])
        tester = SpanTester(F, n, rad)
        for k in kernel[y]:
            if tester.add(k):
                p1.append(y)
                relvecs.append((y, k))
    blocks = []
    for y, vec in relvecs:
        row = []
        off = 0
        for x in p0:
            q = Q.quotient(x, y, F)
            row.append(q.element(vec[off:off + q.dim]))
            off += q.dim
        blocks.append(row)
    return PresentationMap(p1, p0, blocks)


def random_rep_matrices(quiver: BoundQuiver, field, dim: Mapping[str, int], rng,
                        skip: Sequence[str] = ()) -> Dict[str, Matrix]:
    mats = {}
    for a in quiver.arrows:
        if a.id in skip:
            continue
        r, c = dim[a.target], dim[a.source]
        mats[a.id] = Matrix(field, r, c, [[field.random(rng) for _ in range(c)] for _ in range(r)])
    return mats
