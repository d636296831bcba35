"""The acceptance suite: eight exact checks, each returning a result record."""
from __future__ import annotations

import random
import time
from itertools import product
from math import comb
from typing import Callable, Dict, List

from .canonical import (CanonicalSpec, Point, TubeModuleSpec, build_canonical, generic_point,
                        tube_module)
from .errors import RelationFailure
from .exactfield import make_field
from .presentation import presentation, verify_relations
from .quiver import tits_form
from .regular import RegularProfile, compose, decompose, ext_minimal_module, expected_end_dim, tube_hom_dim
from .repkit import direct_sum, end_dim, group_act, hom_dim, random_group_element
from .semiinv import (ReducedPencil, SamplePool, SemiInvariant, Sampler, generator_set, kronecker_form,
                      random_kronecker, weight_space_dim)

TYPE_222 = CanonicalSpec((2, 2, 2), (2,))
CRIT2_DIMS = {"2h": [2, 2, 2, 2, 2], "h+e(l1,1)": [1, 2, 1, 1, 1], "2h+e(l1,1)": [2, 3, 2, 2, 2]}


def _result(num: int, name: str, passed: bool, started: float, **details) -> dict:
    return {"criterion": num, "name": name, "passed": bool(passed),
            "seconds": round(time.time() - started, 3), "details": details}


def admissible_weights(ts, pool, max_pr: int = 2, max_mult: int = 2) -> List[Dict[str, int]]:
    """r = q h + sum a_k deg T_k with q, a_k <= max_mult and p^r <= max_pr, deduplicated."""
    seen = set()
    out = []
    degs = [g.degree for g in pool.gens]
    for q in range(max_mult + 1):
        for a in product(range(max_mult + 1), repeat=len(degs)):
            r = {v: q * ts.h[v] + sum(ak * dg[v] for ak, dg in zip(a, degs)) for v in ts.vertices}
            key = tuple(r[v] for v in ts.vertices)
            if key in seen:
                continue
            seen.add(key)
            if decompose(ts, r).p <= max_pr:
                out.append(r)
    out.sort(key=lambda r: tuple(r[v] for v in ts.vertices))
    return out


def criterion_1(field, seed=0) -> dict:
    t0 = time.time()
    ts = build_canonical(CanonicalSpec((1, 1)))
    rows = []
    for p in (1, 2, 3):
        for q in (1, 2, 3):
            res = weight_space_dim(ts, [p, p], f"{q}h", field, seed)
            rows.append({"p": p, "q": q, "weight": [-q, q], "rank": res["rank"],
                         "expected": comb(q + p, q), "samples": res["samples"]})
    ok = all(r["rank"] == r["expected"] for r in rows)
    elapsed = time.time() - t0
    return _result(1, "Kronecker weight spaces are binomial", ok and elapsed < 30, t0, cases=rows)


def criterion_2(field, seed=0) -> dict:
    t0 = time.time()
    ts = build_canonical(TYPE_222)
    rows = []
    for label, d in CRIT2_DIMS.items():
        pool = SamplePool(ts, d, field, seed)
        p = pool.pencil.p
        for r in admissible_weights(ts, pool):
            res = weight_space_dim(ts, d, r, field, seed, pool=pool)
            rows.append({"d": label, "r": res["r"], "pR": res["pR"], "rank": res["rank"],
                         "expected": comb(res["pR"] + p, res["pR"]), "monomials": res["monomials"]})
    ok = all(r["rank"] == r["expected"] for r in rows)
    elapsed = time.time() - t0
    return _result(2, "canonical (2,2,2) weight spaces are binomial", ok and elapsed < 300, t0,
                   cases=len(rows), failures=[r for r in rows if r["rank"] != r["expected"]])


def criterion_3(field, seed=0, samples: int = 100) -> dict:
    t0 = time.time()
    ts = build_canonical(TYPE_222)
    out = {}
    ok = True
    for label in ("2h", "2h+e(l1,1)"):
        d = CRIT2_DIMS[label]
        rep = presentation(ts, d, field)
        pool = SamplePool(ts, d, field, seed, gens=rep.t_generators)
        try:
            cert = verify_relations(ts, d, rep, field, samples, seed, pool=pool)
            points = all(r["matchesCalibrated"] for r in cert["relations"])
        except RelationFailure as exc:
            out[label] = {"error": str(exc)}
            ok = False
            continue
        controls = []
        for k in range(len(ts.tubes)):
            try:
                verify_relations(ts, d, rep, field, samples, seed, pool=pool, corrupt=k,
                                 check_alternative=False)
                controls.append(False)
            except RelationFailure:
                controls.append(True)
        out[label] = {"relations": len(cert["relations"]), "pointsMatch": points,
                      "controlsFail": controls}
        ok = ok and points and all(controls)
    return _result(3, "relation certificates with negative controls", ok, t0, cases=out)


def random_profiles(ts, rng, count: int, max_p: int = 2, max_res: int = 2) -> List[RegularProfile]:
    out = []
    while len(out) < count:
        res = []
        for t in ts.tubes:
            vals = [rng.randint(0, max_res) for _ in range(t.rank)]
            vals[rng.randrange(t.rank)] = 0
            res.append(tuple(vals))
        out.append(RegularProfile(rng.randint(0, max_p), tuple(res)))
    return out


def criterion_4(field, seed=0) -> dict:
    t0 = time.time()
    rows = []
    for spec in (TYPE_222, CanonicalSpec((3, 3, 1), (2,))):
        ts = build_canonical(spec)
        rng = random.Random(f"{seed}:crit4:{spec.weights}")
        for prof in random_profiles(ts, rng, 10):
            d = compose(ts, prof)
            W = ext_minimal_module(ts, d, field)
            rows.append({"type": list(spec.weights), "d": [d[v] for v in ts.vertices],
                         "end": end_dim(W), "expected": expected_end_dim(ts, d)})
    ok = len(rows) == 20 and all(r["end"] == r["expected"] for r in rows)
    return _result(4, "ext-minimal End dimension p + <d,d>", ok, t0, cases=rows)


def criterion_5(field, seed=0) -> dict:
    t0 = time.time()
    ts = build_canonical(CanonicalSpec((2, 3, 3), (2,)))
    mods = []
    for k, t in enumerate(ts.tubes):
        for i in range(t.rank):
            for n in range(1, 5):
                mods.append((k, t.rank, i, n))
    mu = generic_point(ts)
    nu = generic_point(ts, [mu])
    for label in (mu, nu):
        for n in range(1, 5):
            mods.append((label, 1, 0, n))
    built = {}
    for key in mods:
        built[key] = tube_module(ts, TubeModuleSpec(key[0], key[2], key[3]), field)
    checked = 0
    mismatches = []
    for a in mods:
        for b in mods:
            expected = tube_hom_dim(a[1], a[2], a[3], b[2], b[3], same_tube=a[0] == b[0])
            got = hom_dim(built[a], built[b])
            checked += 1
            if got != expected:
                mismatches.append({"source": str(a), "target": str(b), "hom": got, "expected": expected})
    return _result(5, "tube Hom dimensions match the min formula", not mismatches, t0,
                   pairs=checked, mismatches=mismatches[:10])


def _random_tube_spec(ts, rng, homog_points):
    if rng.random() < 0.7 and ts.tubes:
        k = rng.randrange(len(ts.tubes))
        return TubeModuleSpec(k, rng.randrange(ts.tubes[k].rank), rng.randint(1, 3))
    return TubeModuleSpec(rng.choice(homog_points), 0, rng.randint(1, 2))


def criterion_6(field, seed=0, pairs: int = 200, group_checks: int = 50) -> dict:
    t0 = time.time()
    ts = build_canonical(TYPE_222)
    rng = random.Random(f"{seed}:crit6")
    homog = [Point.of(1, 1), Point.of(1, 3)]
    agree = 0
    zeros = 0
    tested = []
    attempts = 0
    while len(tested) < pairs and attempts < 50 * pairs:
        attempts += 1
        vspec = _random_tube_spec(ts, rng, homog)
        mspecs = [_random_tube_spec(ts, rng, homog) for _ in range(rng.randint(1, 3))]
        V = tube_module(ts, vspec, field)
        M = direct_sum(*[tube_module(ts, s, field) for s in mspecs])
        if tits_form(ts.quiver, V.dim, M.dim) != 0:
            continue
        M = group_act(random_group_element(M, rng), M)
        si = SemiInvariant(V, M.dim, modules=[vspec])
        val = si(M)
        hom = hom_dim(V, M)
        zeros += val == 0
        agree += (val == 0) == (hom != 0)
        tested.append((si, M))
    invariance = 0
    for k in range(group_checks):
        si, M = tested[k % len(tested)]
        g = random_group_element(M, rng)
        lhs = si(group_act(g.inverse(), M))
        rhs = field.reduce(g.character(si.theta, field) * si(M))
        invariance += lhs == rhs
    ok = len(tested) == pairs and agree == pairs and invariance == group_checks
    return _result(6, "vanishing criterion and semi-invariance", ok, t0, pairs=len(tested),
                   agreeing=agree, vanishing=zeros, groupChecks=group_checks, groupAgreeing=invariance)


def criterion_7(field, seed=0, independent: int = 10) -> dict:
    t0 = time.time()
    ts = build_canonical(TYPE_222)
    out = {}
    ok = True
    for label, d in CRIT2_DIMS.items():
        base = ReducedPencil(ts, d, field, seed)
        gs = [ReducedPencil(ts, d, field, f"{seed}:{k}").g for k in range(independent)]
        same_g = all(g.proportional_to(base.g) for g in gs)
        sampler = Sampler(ts, d, field, seed)
        factor_ok = True
        for k in range(independent):
            q = base.reduce(sampler.regular(f"factor:{k}"))
            factor_ok = factor_ok and q.degree == base.p and not q.is_zero()
        ratio = None
        pull_ok = True
        for k in range(independent):
            N = random_kronecker(base.p, field, random.Random(f"{seed}:pull:{k}"))
            c = base.reduce(sampler.phi(N))
            f = kronecker_form(N)
            j = next(j for j, x in enumerate(f.coeffs) if x != 0)
            r = field.reduce(c.coeffs[j] * field.inv(f.coeffs[j]))
            if ratio is None:
                ratio = r
            pull_ok = pull_ok and r != 0 and r == ratio and c == f.scale(ratio)
        out[label] = {"gDegree": base.g.degree, "g": base.g.to_json(), "gMatchesPrediction": base.matches_prediction,
                      "gSampleIndependent": same_g, "factorsWithDegreeP": factor_ok,
                      "pullbackProportional": pull_ok}
        ok = ok and same_g and factor_ok and pull_ok and base.matches_prediction
    return _result(7, "pencil reduction and Kronecker pullback", ok, t0, cases=out)


def criterion_8(field, seed=0, attempts: int = 20) -> dict:
    t0 = time.time()
    rows = []
    cases = [(TYPE_222, d) for d in CRIT2_DIMS.values()]
    cases.append((CanonicalSpec((3, 3, 1), (2,)), None))
    for spec, d in cases:
        ts = build_canonical(spec)
        if d is None:
            d = compose(ts, RegularProfile(1, ((0, 1, 2), (0, 2, 0))))
        d = ts.quiver.dimvec(d)
        gens = generator_set(ts, d, field)
        sampler = Sampler(ts, d, field, seed)
        pencil = ReducedPencil(ts, d, field, seed, sampler=sampler)
        names = [g.name for g in gens] + [f"S{j}" for j in range(pencil.p + 1)]
        found = {n: None for n in names}
        for k in range(attempts):
            M = sampler.regular(f"witness:{k}")
            svals = pencil.coefficients(M)
            for g in gens:
                if found[g.name] is None and g.si(M) != 0:
                    found[g.name] = k
            for j, s in enumerate(svals):
                if found[f"S{j}"] is None and s != 0:
                    found[f"S{j}"] = k
            if all(v is not None for v in found.values()):
                break
        rows.append({"type": list(spec.weights), "d": [d[v] for v in ts.vertices],
                     "witnessAttempt": found})
    ok = all(v is not None for r in rows for v in r["witnessAttempt"].values())
    return _result(8, "every generator has a witness in R(d)", ok, t0, cases=rows)


CRITERIA: Dict[int, Callable] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
}


def run_acceptance(field=None, seed=0, only=None) -> List[dict]:
    field = field or make_field()
    return [CRITERIA[k](field, seed) for k in sorted(CRITERIA) if only is None or k in only]


def summary_line(res: dict) -> str:
    status = "PASS" if res["passed"] else "FAIL"
    return f"[{status}] criterion {res['criterion']}: {res['name']} ({res['seconds']}s)"
