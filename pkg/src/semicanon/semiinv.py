"""Determinantal semi-invariants c_d^V, the pencil coefficients f_d^(j) and weight spaces."""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .binform import BinaryForm, form_gcd, interpolate, linear_form
from .canonical import Point, TubeModuleSpec, TubeSystem, kronecker_embed, tube_modules_sum
from .errors import (DegenerateSamples, DimensionMismatch, NonSquareHom, NonSquarePencil,
                     WeightNotClosed, ZeroMass)
from .exactfield import Matrix, det, rank, solve
from .quiver import BoundQuiver, kronecker_quiver, tits_form
from .regular import RegularProfile, decompose, index_data, residual_module
from .repkit import (PresentationMap, Representation, direct_sum, group_act,
                     minimal_projective_presentation, random_group_element, random_rep_matrices)


def seeded_rng(seed, label) -> random.Random:
    return random.Random(f"{seed}:{label}")


# -- weights and c_d^V ----------------------------------------------------------------

def weight_of(quiver: BoundQuiver, dim_v) -> Dict[str, int]:
    """theta^V = <dim V, ->, as the vector of its values on the unit vectors."""
    dv = quiver.dimvec(dim_v)
    out = {}
    for x in quiver.vertices:
        ex = {v: int(v == x) for v in quiver.vertices}
        out[x] = tits_form(quiver, dv, ex)
    return out


def apply_weight(theta: Mapping[str, int], d: Mapping[str, int]) -> int:
    return sum(theta[v] * d.get(v, 0) for v in theta)


class SemiInvariant:
    """c_d^V for a module V, pinned by its deterministic minimal presentation."""

    def __init__(self, V: Representation, d: Mapping[str, int], name: str = "",
                 modules: Sequence[TubeModuleSpec] = ()):
        self.V = V
        self.quiver = V.quiver
        self.field = V.field
        self.d = self.quiver.dimvec(d)
        self.name = name
        self.modules = list(modules)
        self.presentation: PresentationMap = minimal_projective_presentation(V)
        self.theta = self.presentation.weight(self.quiver)

    @classmethod
    def from_specs(cls, ts: TubeSystem, specs: Sequence[TubeModuleSpec], d, field, name: str = ""):
        return cls(tube_modules_sum(ts, specs, field), d, name, specs)

    @property
    def weight_value(self) -> int:
        return apply_weight(self.theta, self.d)

    def hom_matrix(self, M: Representation) -> Matrix:
        if M.dim != self.d:
            raise DimensionMismatch("representation does not have the semi-invariant's dimension vector")
        return self.presentation.hom_matrix(M)

    def __call__(self, M: Representation):
        H = self.hom_matrix(M)
        if H.rows != H.cols:
            raise NonSquareHom(f"Hom(f, M) is {H.rows}x{H.cols}; the weight does not vanish on d")
        return det(H) if H.rows else self.field.one

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "modules": [m.to_json() for m in self.modules],
            "dimV": dict(self.V.dim),
            "weight": dict(self.theta),
            "presentation": self.presentation.to_json(self.field),
        }


def eval_c(si: SemiInvariant, M: Representation):
    return si(M)


# -- binary forms from pencils ---------------------------------------------------------------

def _pencil_det_form(field, A: Matrix, B: Matrix) -> BinaryForm:
    """det(S A - T B) as a binary form, by interpolation at (S, T) = (k, 1)."""
    if A.rows != A.cols or A.shape != B.shape:
        raise NonSquarePencil(f"pencil blocks of shape {A.shape} and {B.shape}")
    n = A.rows
    values = [det(A.scale(k) - B) if n else field.one for k in range(n + 1)]
    return interpolate(field, values, n)


def kronecker_form(V: Representation) -> BinaryForm:
    """det(S V_alpha - T V_beta) for a Kronecker representation of dimension (p, p)."""
    return _pencil_det_form(V.field, V.mats["alpha"], V.mats["beta"])


def kronecker_f(j: int, V: Representation):
    """f^(j)(V): the coefficient of S^j T^(p-j) in det(S V_alpha - T V_beta)."""
    form = kronecker_form(V)
    if not 0 <= j <= form.degree:
        raise ValueError(f"j must lie in [0, {form.degree}]")
    return form.coeffs[j]


def pencil_form(ts: TubeSystem, M: Representation) -> BinaryForm:
    if M.dim[ts.source] != M.dim[ts.sink]:
        raise NonSquarePencil("dimensions at source and sink differ")
    return _pencil_det_form(M.field, M.path_matrix(ts.w1), M.path_matrix(ts.w2))


def point_form(field, point: Point) -> BinaryForm:
    """The linear form vanishing where the pencil of a module at ``point`` degenerates."""
    return linear_form(field, point.zeta, point.xi)


# -- sampling -----------------------------------------------------------------------------

def random_kronecker(p: int, field, rng) -> Representation:
    K = kronecker_quiver()
    mats = random_rep_matrices(K, field, {"1": p, "2": p}, rng)
    return Representation(K, field, {"1": p, "2": p}, mats, check=False)


class Sampler:
    """Seeded samples of rep(d): points of R(d) and unconstrained representations.

    R(d) points are Phi(N) = F(N) + W with N a random (p, p) Kronecker
    representation and W the fixed ext-minimal module of dimension d - p h,
    optionally conjugated by a random group element.
    """

    def __init__(self, ts: TubeSystem, d, field, seed=0):
        self.ts = ts
        self.field = field
        self.seed = seed
        self.d = ts.quiver.dimvec(d)
        self.profile: RegularProfile = decompose(ts, self.d)
        self.W = residual_module(ts, self.profile, field)

    def phi(self, N: Representation) -> Representation:
        R = kronecker_embed(self.ts, N)
        return direct_sum(R, self.W) if self.W.total_dim else R

    def regular(self, label, conjugate: bool = True) -> Representation:
        rng = seeded_rng(self.seed, f"R:{label}")
        M = self.phi(random_kronecker(self.profile.p, self.field, rng))
        if conjugate:
            M = group_act(random_group_element(M, rng), M)
        return M

    def unconstrained(self, label, tries: int = 20) -> Representation:
        """Random arrows, with the first arrow of each relation arm solved for."""
        ts, F, d = self.ts, self.field, self.d
        for attempt in range(tries):
            rng = seeded_rng(self.seed, f"U:{label}:{attempt}")
            rel_arms = ts.arms[2:]
            skip = [arm[0] for arm in rel_arms]
            mats = random_rep_matrices(ts.quiver, F, d, rng, skip=skip)
            probe = Representation(ts.quiver, F, d, mats, check=False)
            ok = True
            W1 = probe.path_matrix(ts.w1)
            W2 = probe.path_matrix(ts.w2)
            for pos, arm in enumerate(rel_arms, start=2):
                a, b = ts.pencil_coeffs[pos]
                target = W1.scale(F(a)) + W2.scale(F(b))
                rest = probe.path_matrix(arm[1:], ts.quiver.arrow[arm[0]].target)
                cols = []
                for c in range(target.cols):
                    x = solve(rest, target.column(c)) if rest.rows else [F.zero] * rest.cols
                    if x is None:
                        ok = False
                        break
                    cols.append(x)
                if not ok:
                    break
                mats[arm[0]] = Matrix.from_columns(F, cols, rest.cols)
            if ok:
                return Representation(ts.quiver, F, d, mats)
        return self.regular(f"fallback:{label}")

    def mixed(self, k: int) -> Representation:
        return self.regular(k) if k % 2 == 0 else self.unconstrained(k)


# -- the reduced pencil --------------------------------------------------------------------

class ReducedPencil:
    """g = gcd of pencil forms over R(d) and C_d(M) = pencil_form(M) / g of degree p."""

    def __init__(self, ts: TubeSystem, d, field, seed=0, samples: int = 3, checks: int = 2,
                 sampler: Optional[Sampler] = None):
        self.ts = ts
        self.field = field
        self.sampler = sampler or Sampler(ts, d, field, seed)
        self.d = self.sampler.d
        self.profile = self.sampler.profile
        self.p = self.profile.p
        if self.p == 0:
            raise ZeroMass("p^d = 0: the pencil carries no homogeneous part")
        forms = [pencil_form(ts, self.sampler.regular(f"gcd:{k}")) for k in range(max(samples, 3))]
        self.g = form_gcd(forms)
        for k in range(checks):
            f = pencil_form(ts, self.sampler.regular(f"gcdcheck:{k}"))
            g2 = form_gcd([self.g, f])
            if g2.degree != self.g.degree:
                raise DegenerateSamples("gcd degree changed on a verification sample")
        if self.g.degree != self.d[ts.source] - self.p:
            raise DegenerateSamples(f"gcd has degree {self.g.degree}, expected {self.d[ts.source] - self.p}")
        pred = BinaryForm(field, [1], 0)
        for k, tube in enumerate(ts.tubes):
            for _ in range(self.profile.residual[k][0]):
                pred = pred * point_form(field, tube.point)
        self.predicted_g = pred.monic()
        self.matches_prediction = self.predicted_g == self.g

    def reduce(self, M: Representation) -> BinaryForm:
        f = pencil_form(self.ts, M)
        q, exact = f.divmod(self.g)
        if not exact:
            raise DegenerateSamples("pencil form is not divisible by g")
        return q

    def coefficients(self, M: Representation) -> List:
        """(f_d^(0)(M), ..., f_d^(p)(M))."""
        return list(self.reduce(M).coeffs)

    def at_point(self, M: Representation, point: Point):
        """sum_j xi^j zeta^(p-j) f_d^(j)(M)."""
        return self.reduce(M).evaluate(point.xi, point.zeta)


def reduced_pencil(ts: TubeSystem, d, field, seed=0, samples: int = 3) -> ReducedPencil:
    return ReducedPencil(ts, d, field, seed, samples)


# -- generators ----------------------------------------------------------------------------

@dataclass
class Generator:
    """T_{lambda,i} = c_d^{R_{lambda,i+1}^{(n)}}."""

    name: str
    tube: int
    index: int
    length: int
    module: TubeModuleSpec
    degree: Dict[str, int]
    si: SemiInvariant

    def to_json(self, ts: TubeSystem) -> dict:
        return {
            "name": self.name,
            "point": self.tube,
            "pointLabel": ts.tubes[self.tube].point.key(),
            "i": self.index,
            "n": self.length,
            "degree": [self.degree[v] for v in ts.vertices],
            "module": self.module.to_json(),
        }


def t_generator(ts: TubeSystem, d, field, k: int, i: int, n: int, shift: int = 1) -> Generator:
    r = ts.tubes[k].rank
    spec = TubeModuleSpec(k, (i + shift) % r, n)
    si = SemiInvariant.from_specs(ts, [spec], d, field, name=f"T[{k},{i}]")
    deg = ts.module_dim(spec)
    return Generator(f"T[{k},{i}]", k, i, n, spec, deg, si)


def generator_set(ts: TubeSystem, d, field) -> List[Generator]:
    """The T generators for every exceptional tube and i in calI; the S_j come from the pencil."""
    d = ts.quiver.dimvec(d)
    prof = decompose(ts, d)
    if prof.p == 0:
        raise ZeroMass("p^d = 0")
    idx = index_data(prof)
    out = []
    for k, tix in enumerate(idx.tubes):
        for i in tix.calI:
            gen = t_generator(ts, d, field, k, i, tix.n[i])
            if gen.si.weight_value != 0:
                raise AssertionError(f"{gen.name} has nonzero weight on d")
            out.append(gen)
    return out


class SamplePool:
    """Generator values (T's and f_d^(j)'s) on seeded samples, computed once per sample."""

    def __init__(self, ts: TubeSystem, d, field, seed=0, gens: Optional[List[Generator]] = None,
                 pencil: Optional[ReducedPencil] = None):
        self.ts = ts
        self.field = field
        self.seed = seed
        self.sampler = Sampler(ts, d, field, seed)
        self.d = self.sampler.d
        self.pencil = pencil or ReducedPencil(ts, self.d, field, seed, sampler=self.sampler)
        self.gens = gens if gens is not None else generator_set(ts, self.d, field)
        self._cache: Dict[Tuple[str, int], dict] = {}

    def sample(self, kind: str, k: int) -> Representation:
        if kind == "R":
            return self.sampler.regular(k)
        if kind == "U":
            return self.sampler.unconstrained(k)
        return self.sampler.mixed(k)

    def values(self, kind: str, k: int) -> dict:
        key = (kind, k)
        if key not in self._cache:
            M = self.sample(kind, k)
            vals = {"S": self.pencil.coefficients(M)}
            for g in self.gens:
                vals[g.name] = g.si(M)
            self._cache[key] = vals
        return self._cache[key]


# -- weight spaces -----------------------------------------------------------------------------

def enumerate_monomials(ts: TubeSystem, p: int, gens: Sequence[Generator], r) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Monomials prod T_k^{a_k} prod S_j^{b_j} of graded degree r (deg S_j = h)."""
    r = ts.quiver.dimvec(r)
    verts = ts.vertices
    out = []

    def s_exponents(s, parts):
        if parts == 1:
            yield (s,)
            return
        for first in range(s, -1, -1):
            for rest in s_exponents(s - first, parts - 1):
                yield (first,) + rest

    def rec(k, rem, acc):
        if k == len(gens):
            ratios = {rem[v] // ts.h[v] for v in verts if ts.h[v]}
            if len(ratios) != 1:
                return
            s = ratios.pop()
            if s < 0 or any(rem[v] != s * ts.h[v] for v in verts):
                return
            for b in s_exponents(s, p + 1):
                out.append((tuple(acc), b))
            return
        deg = gens[k].degree
        bound = min(rem[v] // deg[v] for v in verts if deg[v] > 0)
        for a in range(bound + 1):
            rec(k + 1, {v: rem[v] - a * deg[v] for v in verts}, acc + [a])

    rec(0, r, [])
    return out


def monomial_value(field, gens: Sequence[Generator], mono, vals: dict):
    a, b = mono
    out = field.one
    for g, e in zip(gens, a):
        if e:
            out = field.reduce(out * vals[g.name] ** e)
    for s, e in zip(vals["S"], b):
        if e:
            out = field.reduce(out * s ** e)
    return out


def parse_weight_vector(ts: TubeSystem, r) -> Dict[str, int]:
    """Accept 'h', 'kh', a vertex-ordered list, a comma string, or a mapping."""
    if isinstance(r, str):
        text = r.strip()
        if text.endswith("h"):
            mult = int(text[:-1]) if text[:-1] else 1
            return {v: mult * ts.h[v] for v in ts.vertices}
        return ts.quiver.dimvec([int(x) for x in text.split(",")])
    return ts.quiver.dimvec(r)


def weight_space_dim(ts: TubeSystem, d, r, field, seed=0, pool: Optional[SamplePool] = None,
                     max_rounds: int = 6) -> dict:
    """Rank of the monomials of degree r evaluated on seeded samples of rep(d)."""
    d = ts.quiver.dimvec(d)
    r = parse_weight_vector(ts, r)
    if tits_form(ts.quiver, r, d) != 0:
        raise WeightNotClosed(f"<r, d> = {tits_form(ts.quiver, r, d)} != 0")
    pool = pool or SamplePool(ts, d, field, seed)
    prof_r = decompose(ts, r)
    p = pool.pencil.p
    monos = enumerate_monomials(ts, p, pool.gens, r)
    m = len(monos)
    n = max(2 * m, 2)
    rk = 0
    rounds = 0
    while True:
        rows = [[monomial_value(field, pool.gens, mono, pool.values("M", k)) for mono in monos]
                for k in range(n)]
        new_rank = rank(Matrix(field, n, m, rows)) if m else 0
        rounds += 1
        if rounds > 1 and new_rank == rk:
            break
        rk = new_rank
        if rounds >= max_rounds:
            break
        n += max(n // 2, 1)
    return {
        "r": [r[v] for v in ts.vertices],
        "pR": prof_r.p,
        "monomials": m,
        "samples": n,
        "rank": rk,
        "binomialPrediction": comb(prof_r.p + p, prof_r.p),
    }
