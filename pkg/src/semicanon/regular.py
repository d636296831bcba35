"""Regular dimension vectors: profiles, index sets, ext-minimal witnesses, classification."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .canonical import Point, TubeModuleSpec, TubeSystem, generic_point, tube_module
from .errors import NotRegular
from .exactfield import QQ, Matrix, solve
from .quiver import tits_form
from .repkit import Representation, direct_sum, zero_rep


@dataclass(frozen=True)
class RegularProfile:
    """d = p h + sum p_{lambda,i} e_{lambda,i}; ``residual[k]`` lists p_{lambda_k,0..r-1}."""

    p: int
    residual: Tuple[Tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"p": self.p, "residual": {str(k): list(r) for k, r in enumerate(self.residual)}}

    @classmethod
    def from_json(cls, obj, ts: Optional[TubeSystem] = None) -> "RegularProfile":
        res = obj.get("residual", {})
        n = len(ts.tubes) if ts is not None else len(res)
        out = []
        for k in range(n):
            vals = res.get(str(k), res.get(k))
            if vals is None:
                vals = [0] * (ts.tubes[k].rank if ts is not None else 1)
            out.append(tuple(int(x) for x in vals))
        return cls(int(obj.get("p", 0)), tuple(out))


@dataclass(frozen=True)
class SegmentSpec:
    """A segment (lambda, i, n): the exceptional module R_{lambda,i}^{(n)}."""

    point: int
    start: int
    length: int

    def module(self) -> TubeModuleSpec:
        return TubeModuleSpec(self.point, self.start, self.length)

    def to_json(self) -> dict:
        return {"point": self.point, "socle": self.start, "length": self.length}


@dataclass
class TubeIndex:
    rank: int
    calI: List[int]
    calI0: List[int]
    n: Dict[int, int]
    n_zero: Dict[int, int] = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"rank": self.rank, "calI": self.calI, "calI0": self.calI0,
                "n": {str(i): v for i, v in self.n.items()},
                "nZero": {str(i): v for i, v in self.n_zero.items()}}


@dataclass
class IndexData:
    tubes: List[TubeIndex]

    def to_json(self) -> dict:
        return {str(k): t.to_json() for k, t in enumerate(self.tubes)}


# -- decomposition --------------------------------------------------------------------

def compose(ts: TubeSystem, profile: RegularProfile) -> Dict[str, int]:
    if len(profile.residual) != len(ts.tubes):
        raise NotRegular("profile has the wrong number of tubes")
    out = {v: profile.p * ts.h[v] for v in ts.vertices}
    for k, res in enumerate(profile.residual):
        if len(res) != ts.tubes[k].rank:
            raise NotRegular(f"tube {k} has rank {ts.tubes[k].rank}, got {len(res)} entries")
        for i, c in enumerate(res):
            if c < 0:
                raise NotRegular("negative profile entry")
            for v, x in ts.e(k, i).items():
                out[v] += c * x
    return out


def decompose(ts: TubeSystem, d) -> RegularProfile:
    """Solve d = y h + sum_{i>=1} y_{lambda,i} e_{lambda,i}, then move per-tube minima into p."""
    d = ts.quiver.dimvec(d)
    if any(x < 0 for x in d.values()):
        raise NotRegular("negative dimension vector")
    cols = [[QQ(ts.h[v]) for v in ts.vertices]]
    index = []
    for k, t in enumerate(ts.tubes):
        for i in range(1, t.rank):
            cols.append([QQ(t.e[i][v]) for v in ts.vertices])
            index.append((k, i))
    A = Matrix.from_columns(QQ, cols, len(ts.vertices))
    sol = solve(A, [QQ(d[v]) for v in ts.vertices])
    if sol is None:
        raise NotRegular(f"{[d[v] for v in ts.vertices]} is not in the span of h and the e-vectors")
    if any(x.denominator != 1 for x in sol):
        raise NotRegular("non-integral decomposition")
    y = int(sol[0])
    raw = [[0] * t.rank for t in ts.tubes]
    for (k, i), x in zip(index, sol[1:]):
        raw[k][i] = int(x)
    p = y
    residual = []
    for k, vals in enumerate(raw):
        m = min(0, min(vals[1:], default=0))
        res = [v - m for v in vals]
        res[0] = -m
        p += m
        residual.append(tuple(res))
    if p < 0:
        raise NotRegular("negative multiple of h")
    return RegularProfile(p, tuple(residual))


def is_regular(ts: TubeSystem, d) -> bool:
    try:
        decompose(ts, d)
        return True
    except NotRegular:
        return False


# -- index sets -----------------------------------------------------------------------

def tube_index(res: Sequence[int]) -> TubeIndex:
    r = len(res)
    if r == 1:
        return TubeIndex(1, [0], [0] if res[0] == 0 else [], {0: 1}, {0: 1} if res[0] == 0 else {})
    calI, n = [], {}
    for i in range(r):
        for m in range(1, r + 1):
            v = res[(i + m) % r]
            if v <= res[i]:
                if v == res[i]:
                    calI.append(i)
                    n[i] = m
                break
    zeros = [i for i in range(r) if res[i] == 0]
    n_zero = {}
    for i in zeros:
        n_zero[i] = next(m for m in range(1, r + 1) if res[(i + m) % r] == 0)
    return TubeIndex(r, calI, zeros, n, n_zero)


def index_data(profile: RegularProfile) -> IndexData:
    """calI, calI^0 and the return lengths n_{lambda,i} for every exceptional tube.

    For i in calI^0 the strict-interior return length and the first return
    to zero coincide (all other entries are nonnegative), so ``n`` serves
    both readings; ``n_zero`` records the second one explicitly.
    """
    return IndexData([tube_index(res) for res in profile.residual])


# -- ext-minimal witnesses -------------------------------------------------------------------

def segments_for_residual(k: int, res: Sequence[int]) -> List[SegmentSpec]:
    """Peel (i, m) with p_i != 0, p_{i-1} = 0 and m minimal with p_{i+m} = 0."""
    vals = list(res)
    r = len(vals)
    out = []
    if r == 1:
        return out
    while any(vals):
        starts = [i for i in range(r) if vals[i] != 0 and vals[(i - 1) % r] == 0]
        if not starts:
            raise NotRegular("residual without a zero entry")
        for i in starts:
            m = next(m for m in range(1, r + 1) if vals[(i + m) % r] == 0)
            out.append(SegmentSpec(k, i, m))
            for j in range(i, i + m):
                vals[j % r] -= 1
    return out


def ext_minimal(ts: TubeSystem, d, avoid: Sequence[Point] = ()):
    """(segments, (point, p)) describing an ext-minimal module of dimension d."""
    prof = decompose(ts, d)
    segs = []
    for k, res in enumerate(prof.residual):
        segs.extend(segments_for_residual(k, res))
    homog = (generic_point(ts, avoid), prof.p) if prof.p > 0 else None
    return segs, homog


def realize(ts: TubeSystem, segments: Sequence[SegmentSpec], homog, field) -> Representation:
    mods = [tube_module(ts, s.module(), field) for s in segments]
    if homog is not None:
        point, p = homog
        mods.append(tube_module(ts, TubeModuleSpec(point, 0, p), field))
    return direct_sum(*mods) if mods else zero_rep(ts.quiver, field)


def ext_minimal_module(ts: TubeSystem, d, field, avoid: Sequence[Point] = ()) -> Representation:
    segs, homog = ext_minimal(ts, d, avoid)
    return realize(ts, segs, homog, field)


def residual_module(ts: TubeSystem, profile: RegularProfile, field) -> Representation:
    """The ext-minimal module of dimension d - p h (no homogeneous part)."""
    segs = []
    for k, res in enumerate(profile.residual):
        segs.extend(segments_for_residual(k, res))
    return realize(ts, segs, None, field)


def expected_end_dim(ts: TubeSystem, d) -> int:
    prof = decompose(ts, d)
    return prof.p + tits_form(ts.quiver, d, d)


# -- classification and Hom counts -------------------------------------------------------

def pairings(ts: TubeSystem, d) -> Tuple[int, int]:
    return tits_form(ts.quiver, d, ts.h), tits_form(ts.quiver, ts.h, d)


def classify(ts: TubeSystem, d) -> str:
    """'R', 'P', 'Q' or 'mixed' from the signs of <d, h> and <h, d>."""
    dh, hd = pairings(ts, d)
    if dh == 0 and hd == 0:
        return "R" if is_regular(ts, d) else "mixed"
    if dh > 0 and hd <= 0:
        return "P"
    if hd > 0 and dh <= 0:
        return "Q"
    return "mixed"


def composition_counts(rank: int, i: int, n: int) -> List[int]:
    """q_j: how often R_j occurs among the factors R_i, ..., R_{i+n-1}."""
    out = [0] * rank
    for t in range(n):
        out[(i + t) % rank] += 1
    return out


def tube_hom_dim(rank: int, i: int, n: int, j: int, m: int, same_tube: bool = True) -> int:
    """dim Hom(R_i^{(n)}, R_j^{(m)}) = min{q_{i+n-1}(target), q_j(source)} inside one tube."""
    if not same_tube or n == 0 or m == 0:
        return 0
    return min(composition_counts(rank, j, m)[(i + n - 1) % rank],
               composition_counts(rank, i, n)[j % rank])
