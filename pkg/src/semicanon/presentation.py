"""The presentation of SI[C, d]: generators, pencil relations, and their certification."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Dict, List, Optional, Sequence

from .canonical import Point, TubeSystem
from .errors import RelationFailure, ZeroMass
from .exactfield import Matrix, kernel_basis
from .regular import IndexData, decompose, index_data
from .semiinv import (Generator, SamplePool, enumerate_monomials, parse_weight_vector, t_generator,
                      weight_space_dim)


@dataclass
class Relation:
    """prod_{i in calI^0} T_{lambda,i} = kappa * sum_j xi^j zeta^(p-j) S_j."""

    tube: int
    point: Point
    coefficients: List
    monomial: List[str]
    variable_eliminating: bool

    def to_json(self) -> dict:
        return {
            "point": self.tube,
            "pointLabel": self.point.key(),
            "zeta": str(self.point.zeta),
            "xi": str(self.point.xi),
            "coefficients": [str(c) for c in self.coefficients],
            "monomial": list(self.monomial),
            "variableEliminating": self.variable_eliminating,
        }


@dataclass
class PresentationReport:
    ts: TubeSystem
    d: Dict[str, int]
    p: int
    s_generators: List[dict]
    t_generators: List[Generator]
    relations: List[Relation]
    index: IndexData
    i_of_d: int
    reduced_equation_count: int
    is_polynomial: bool
    notes: List[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        ts = self.ts
        return {
            "d": [self.d[v] for v in ts.vertices],
            "vertexOrder": list(ts.vertices),
            "p": self.p,
            "sGenerators": self.s_generators,
            "tGenerators": [g.to_json(ts) for g in self.t_generators],
            "relations": [r.to_json() for r in self.relations],
            "indexData": self.index.to_json(),
            "iOfD": self.i_of_d,
            "reducedEquationCount": self.reduced_equation_count,
            "isPolynomial": self.is_polynomial,
            "notes": list(self.notes),
        }


def relation_coefficients(point: Point, p: int) -> List:
    return [point.xi ** j * point.zeta ** (p - j) for j in range(p + 1)]


def presentation(ts: TubeSystem, d, field) -> PresentationReport:
    d = ts.quiver.dimvec(d)
    prof = decompose(ts, d)
    if prof.p == 0:
        raise ZeroMass("p^d = 0")
    p = prof.p
    idx = index_data(prof)
    gens = []
    for k, tix in enumerate(idx.tubes):
        for i in tix.calI:
            gens.append(t_generator(ts, d, field, k, i, tix.n[i]))
    h = [ts.h[v] for v in ts.vertices]
    s_gens = [{"name": f"S{j}", "degree": h} for j in range(p + 1)]
    relations = []
    for k, tix in enumerate(idx.tubes):
        point = ts.tubes[k].point
        relations.append(Relation(k, point, relation_coefficients(point, p),
                                  [f"T[{k},{i}]" for i in tix.calI0], len(tix.calI0) == 1))
    i_of_d = sum(1 for tix in idx.tubes if len(tix.calI) > 1)
    notes = ["iOfD counts the exceptional points with |calI| > 1"]
    return PresentationReport(ts, d, p, s_gens, gens, relations, idx, i_of_d,
                              max(0, i_of_d - p - 1), i_of_d <= p + 1, notes)


# -- certification -----------------------------------------------------------------------

def _lhs(field, report: PresentationReport, rel: Relation, vals: dict):
    out = field.one
    for name in rel.monomial:
        out = field.reduce(out * vals[name])
    return out


def _rhs(field, coeffs: Sequence, vals: dict):
    return field.reduce(sum(field(c) * s for c, s in zip(coeffs, vals["S"])))


def _recover_point(field, lhs: List, svals: List[List]) -> List[list]:
    """Kernel of (c, u_0..u_p) -> c * lhs - sum_j u_j S_j over all samples."""
    n = len(lhs)
    rows = [[lhs[k]] + [field.reduce(-s) for s in svals[k]] for k in range(n)]
    return kernel_basis(Matrix(field, n, len(rows[0]), rows))


def _point_from_coeffs(field, u: Sequence, p: int) -> Optional[tuple]:
    """(zeta, xi) with u proportional to (xi^j zeta^(p-j))_j, or None."""
    if all(c == 0 for c in u):
        return None
    if u[0] != 0:
        zeta, xi = field.one, (field.reduce(u[1] * field.inv(u[0])) if p >= 1 else None)
        if xi is None:
            return None
    else:
        zeta, xi = field.zero, field.one
    ref = [field.reduce(xi ** j * zeta ** (p - j)) for j in range(p + 1)]
    piv = next(j for j in range(p + 1) if ref[j] != 0)
    scale = field.reduce(u[piv] * field.inv(ref[piv]))
    if any(field.reduce(scale * r - c) != 0 for r, c in zip(ref, u)):
        return None
    return zeta, xi


def verify_relations(ts: TubeSystem, d, report: PresentationReport, field, samples: int = 100,
                     seed=0, pool: Optional[SamplePool] = None, corrupt: Optional[int] = None,
                     check_alternative: bool = True) -> dict:
    """Fit each relation on seeded samples; raise RelationFailure on any nonzero residual.

    ``corrupt`` names a relation whose coefficient vector is perturbed off
    its projective class before fitting (negative control): 1 is added to
    the first zero coefficient, or to the first one if none vanishes.
    """
    d = ts.quiver.dimvec(d)
    pool = pool or SamplePool(ts, d, field, seed, gens=report.t_generators)
    p = report.p
    sample_vals = [pool.values("M", k) for k in range(samples)]
    cert = {"seed": seed, "samples": samples, "sampleKinds": "even k: R(d), odd k: unconstrained",
            "relations": []}
    for rel in report.relations:
        coeffs = [field(c) for c in rel.coefficients]
        if corrupt is not None and corrupt == rel.tube:
            j = next((j for j, c in enumerate(coeffs) if c == 0), 0)
            coeffs[j] = field.reduce(coeffs[j] + 1)
        lhs = [_lhs(field, report, rel, v) for v in sample_vals]
        rhs = [_rhs(field, coeffs, v) for v in sample_vals]
        kappa = None
        for a, b in zip(lhs, rhs):
            if b != 0:
                kappa = field.reduce(a * field.inv(b))
                break
        residuals = [field.reduce(a - (kappa or 0) * b) for a, b in zip(lhs, rhs)]
        bad = [k for k, x in enumerate(residuals) if x != 0]
        if kappa is None or kappa == 0 or bad:
            k = bad[0] if bad else 0
            raise RelationFailure(
                f"relation at {rel.point.key()} does not hold",
                witness=pool.sample("M", k),
                details={"point": rel.tube, "pointLabel": rel.point.key(), "witnessSample": k,
                         "witnessSeed": seed, "nonzeroResiduals": len(bad)})
        ker = _recover_point(field, lhs, [v["S"] for v in sample_vals])
        recovered = None
        if len(ker) == 1 and ker[0][0] != 0:
            c = ker[0][0]
            u = [field.reduce(x * field.inv(c)) for x in ker[0][1:]]
            recovered = _point_from_coeffs(field, u, p)
        calibrated = (field(rel.point.zeta), field(rel.point.xi))
        entry = {
            "point": rel.tube,
            "pointLabel": rel.point.key(),
            "kappa": field.to_str(kappa),
            "maxResidual": 0,
            "kernelDimension": len(ker),
            "recovered": None if recovered is None else [field.to_str(x) for x in recovered],
            "matchesCalibrated": recovered == calibrated,
        }
        if check_alternative:
            entry["alternative"] = _alternative_check(ts, d, report, rel, field, pool, samples, coeffs)
        cert["relations"].append(entry)
        if not entry["matchesCalibrated"]:
            raise RelationFailure(f"recovered point at {rel.point.key()} differs from the calibrated one",
                                  details={"point": rel.tube, "recovered": entry["recovered"]})
    cert["passed"] = True
    return cert


def _alternative_check(ts, d, report, rel, field, pool, samples, coeffs) -> dict:
    """Try R_{lambda,i}^{(n)} instead of R_{lambda,i+1}^{(n)} in the relation's monomial."""
    tix = report.index.tubes[rel.tube]
    alts = [t_generator(ts, d, field, rel.tube, i, tix.n[i], shift=0) for i in tix.calI0]
    if any(g.si.weight_value != 0 for g in alts):
        return {"weightCloses": False, "relationHolds": False}
    Ms = [pool.sample("M", k) for k in range(samples)]
    lhs = []
    for M in Ms:
        val = field.one
        for g in alts:
            val = field.reduce(val * g.si(M))
        lhs.append(val)
    rhs = [_rhs(field, coeffs, pool.values("M", k)) for k in range(samples)]
    kappa = next((field.reduce(a * field.inv(b)) for a, b in zip(lhs, rhs) if b != 0), None)
    holds = kappa not in (None, 0) and all(field.reduce(a - kappa * b) == 0 for a, b in zip(lhs, rhs))
    same = [g.module for g in alts] == [g.module for g in report.t_generators
                                        if g.tube == rel.tube and g.index in tix.calI0]
    return {"weightCloses": True, "relationHolds": holds, "sameModules": same}


def hilbert_check(ts: TubeSystem, d, report: PresentationReport, r_list, field, seed=0,
                  pool: Optional[SamplePool] = None) -> List[dict]:
    d = ts.quiver.dimvec(d)
    pool = pool or SamplePool(ts, d, field, seed, gens=report.t_generators)
    out = []
    n_x0 = len(ts.tubes)
    for r in r_list:
        rv = parse_weight_vector(ts, r)
        pr = decompose(ts, rv).p
        a_dim = len(enumerate_monomials(ts, report.p, report.t_generators, rv))
        measured = weight_space_dim(ts, d, rv, field, seed, pool=pool)
        out.append({
            "r": [rv[v] for v in ts.vertices],
            "pR": pr,
            "aDimension": a_dim,
            "aBinomial": comb(pr + report.p + n_x0, pr),
            "prediction": comb(pr + report.p, pr),
            "measured": measured["rank"],
        })
    return out
