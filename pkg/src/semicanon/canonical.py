"""Canonical algebras C(p_1, ..., p_t; lambda_3, ..., lambda_t), their tubes and tube modules.

Quiver layout: a source ``0``, a sink ``w`` and one arm per weight.  Arm ``i``
of weight ``p`` has vertices ``i.1 .. i.(p-1)`` and arrows ``a{i}.1 .. a{i}.p``
running ``0 -> i.1 -> ... -> w`` (a weight-1 arm is a single arrow ``0 -> w``).
The path along arm ``i`` is ``w_i`` and the relations are
``w_i = w_1 + lambda_i w_2`` for ``i >= 3``.

Points of the projective line are pairs ``(zeta : xi)``.  The homogeneous
simple at ``(zeta : xi)`` sends ``w_1`` to ``zeta`` and ``w_2`` to ``xi``, so
arm ``i`` degenerates at the zero of the linear form ``a_i zeta + b_i xi``
where ``w_i = a_i w_1 + b_i w_2`` in the path category.

Tube labels: in the tube of arm ``a`` (rank ``p_a``) the simple regular
``R_{a,j}`` for ``j >= 1`` is the simple module at vertex ``a.(p_a - j)`` and
``R_{a,0}`` is the module of dimension ``h`` minus the arm.  With these labels
``R_{a,i}^{(n)}`` has socle ``R_{a,i}`` and composition factors
``R_{a,i}, ..., R_{a,i+n-1}``, and Auslander-Reiten translation lowers the
index by one.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatch, InvalidParams, UnknownPoint
from .exactfield import QQ, Matrix, rank
from .quiver import BoundQuiver, Path, kronecker_quiver, tits_form
from .repkit import (Representation, direct_sum, hom_dim, nonsplit_extension, zero_rep)

SOURCE = "0"
SINK = "w"


# -- points ---------------------------------------------------------------------

@dataclass(frozen=True)
class Point:
    """A normalized point (1 : xi) or (0 : 1) of the projective line over Q."""

    zeta: Fraction
    xi: Fraction

    @classmethod
    def of(cls, zeta, xi) -> "Point":
        zeta, xi = QQ(zeta), QQ(xi)
        if zeta == 0 and xi == 0:
            raise InvalidParams("(0:0) is not a point")
        if zeta == 0:
            return cls(Fraction(0), Fraction(1))
        return cls(Fraction(1), xi / zeta)

    def key(self) -> str:
        return f"({self.zeta}:{self.xi})"

    def to_json(self) -> dict:
        return {"zeta": str(self.zeta), "xi": str(self.xi)}

    @classmethod
    def from_json(cls, obj) -> "Point":
        return cls.of(obj["zeta"], obj["xi"])

    def __str__(self):
        return self.key()


# -- specs ----------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalSpec:
    weights: Tuple[int, ...]
    params: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(p) for p in self.weights))
        object.__setattr__(self, "params", tuple(QQ(x) for x in self.params))
        t = len(self.weights)
        if t < 2:
            raise InvalidParams("at least two weights are required")
        if any(p < 1 for p in self.weights):
            raise InvalidParams("weights must be positive")
        if len(self.params) != t - 2:
            raise InvalidParams(f"{t} weights need {t - 2} parameters, got {len(self.params)}")
        if len(set(self.params)) != len(self.params) or any(x in (0, 1) for x in self.params):
            raise InvalidParams("parameters must be pairwise distinct and different from 0 and 1")
        if t >= 3 and min(self.weights[:2]) == 1 and any(p > 1 for p in self.weights[2:]):
            raise InvalidParams("weight-1 arms must not precede a heavier arm among arms 3..t")

    def to_json(self) -> dict:
        return {"weights": list(self.weights), "params": [str(x) for x in self.params]}

    @classmethod
    def from_json(cls, obj) -> "CanonicalSpec":
        return cls(tuple(obj["weights"]), tuple(obj.get("params", ())))


@dataclass(frozen=True)
class TubeModuleSpec:
    """R_{lambda,socle}^{(length)}; ``point`` is an exceptional index or a homogeneous Point."""

    point: Union[int, Point]
    socle: int = 0
    length: int = 1

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be >= 0")

    @property
    def is_exceptional(self) -> bool:
        return isinstance(self.point, int)

    def to_json(self) -> dict:
        pt = {"exceptional": self.point} if self.is_exceptional else self.point.to_json()
        return {"point": pt, "socle": self.socle, "length": self.length}

    @classmethod
    def from_json(cls, obj) -> "TubeModuleSpec":
        pt = obj["point"]
        point = int(pt["exceptional"]) if "exceptional" in pt else Point.from_json(pt)
        return cls(point, int(obj.get("socle", 0)), int(obj.get("length", 1)))


@dataclass
class Tube:
    """An exceptional tube: its point, the arm it comes from, and e_{lambda,0..r-1}."""

    point: Point
    arm: int
    rank: int
    e: List[Dict[str, int]]


@dataclass
class TubeSystem:
    spec: CanonicalSpec
    quiver: BoundQuiver
    source: str
    sink: str
    arms: List[Tuple[str, ...]]
    arm_index: List[int]
    pencil_coeffs: List[Tuple[Fraction, Fraction]]
    h: Dict[str, int]
    tubes: List[Tube]
    _memo: Dict = dc_field(default_factory=dict, repr=False)

    @property
    def w1(self) -> Path:
        return self.arms[0]

    @property
    def w2(self) -> Path:
        return self.arms[1]

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.quiver.vertices

    @property
    def exceptional_points(self) -> List[Point]:
        return [t.point for t in self.tubes]

    def e(self, k: int, i: int) -> Dict[str, int]:
        tube = self.tubes[k]
        return dict(tube.e[i % tube.rank])

    def e_n(self, k: int, i: int, n: int) -> Dict[str, int]:
        """e_{lambda,i}^n = sum of e_{lambda,j} over j in [i, i+n-1]."""
        out = {v: 0 for v in self.vertices}
        for j in range(i, i + n):
            for v, c in self.e(k, j).items():
                out[v] += c
        return out

    def tube_index(self, point: Point) -> Optional[int]:
        for k, t in enumerate(self.tubes):
            if t.point == point:
                return k
        return None

    def module_dim(self, m: TubeModuleSpec) -> Dict[str, int]:
        if m.is_exceptional:
            self._check_index(m.point)
            return self.e_n(m.point, m.socle, m.length)
        return {v: m.length * self.h[v] for v in self.vertices}

    def rank_of(self, point: Union[int, Point]) -> int:
        return self.tubes[point].rank if isinstance(point, int) else 1

    def _check_index(self, k: int) -> None:
        if not 0 <= k < len(self.tubes):
            raise UnknownPoint(f"no exceptional tube with index {k}")

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "algebra": self.quiver.to_json(),
            "vertexOrder": list(self.vertices),
            "source": self.source,
            "sink": self.sink,
            "h": [self.h[v] for v in self.vertices],
            "pencil": {"w1": list(self.w1), "w2": list(self.w2)},
            "exceptional": [
                {"index": k, "point": t.point.to_json(), "label": t.point.key(), "arm": t.arm + 1,
                 "rank": t.rank, "e": [[ev[v] for v in self.vertices] for ev in t.e]}
                for k, t in enumerate(self.tubes)
            ],
        }


# -- construction -----------------------------------------------------------------

def _arm_forms(spec: CanonicalSpec) -> List[Tuple[Fraction, Fraction]]:
    """Coefficients (a_i, b_i) with w_i = a_i w_1 + b_i w_2 as prescribed by the relations."""
    out = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    out.extend((Fraction(1), lam) for lam in spec.params)
    return out


def build_canonical(spec: CanonicalSpec, verify: bool = True) -> TubeSystem:
    """Build the bound quiver and tube data; (1,1) gives the Kronecker quiver."""
    weights = list(spec.weights)
    # an arm of weight 1 beyond the first two only names w_1 + lambda w_2 and is dropped
    kept = [i for i, p in enumerate(weights) if i < 2 or p > 1]
    if all(weights[i] == 1 for i in kept):
        Q = kronecker_quiver()
        arms = [("alpha",), ("beta",)]
        ts = TubeSystem(spec, Q, "2", "1", arms, [0, 1], [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))],
                        {"1": 1, "2": 1}, [])
        if verify:
            check_tube_system(ts)
        return ts
    vertices = [SOURCE]
    arrows = []
    arms = []
    for i in kept:
        p = weights[i]
        names = [f"{i + 1}.{j}" for j in range(1, p)]
        vertices.extend(names)
        chain = [SOURCE] + names + [SINK]
        ids = []
        for j in range(p):
            aid = f"a{i + 1}.{j + 1}"
            arrows.append((aid, chain[j], chain[j + 1]))
            ids.append(aid)
        arms.append(tuple(ids))
    vertices.append(SINK)
    relations = []
    forms = _arm_forms(spec)
    for pos, i in enumerate(kept):
        if i >= 2:
            lam = spec.params[i - 2]
            relations.append([(1, arms[pos]), (-1, arms[0]), (-lam, arms[1])])
    Q = BoundQuiver(vertices, arrows, relations, name=f"C{tuple(weights)}")
    # calibrate: read w_i in the quotient basis at (0, w)
    quot = Q.quotient(SOURCE, SINK, QQ)
    if quot.basis_paths != [arms[0], arms[1]]:
        raise AssertionError("pencil paths do not form the quotient basis at (0, w)")
    coeffs = []
    for path in arms:
        a, b = quot.reduce_path(path)
        coeffs.append((a, b))
    for pos, i in enumerate(kept):
        if coeffs[pos] != forms[i]:
            raise AssertionError("calibrated arm forms disagree with the relations")
    h = {v: 1 for v in vertices}
    tubes = []
    for pos, i in enumerate(kept):
        p = weights[i]
        if p < 2:
            continue
        a, b = coeffs[pos]
        point = Point.of(b, -a)
        e_list = []
        arm_units = {f"{i + 1}.{j}" for j in range(1, p)}
        e_list.append({v: 0 if v in arm_units else 1 for v in vertices})
        for j in range(1, p):
            target = f"{i + 1}.{p - j}"
            e_list.append({v: int(v == target) for v in vertices})
        tubes.append(Tube(point, pos, p, e_list))
    ts = TubeSystem(spec, Q, SOURCE, SINK, arms, kept, coeffs, h, tubes)
    if verify:
        check_tube_system(ts)
    return ts


def check_tube_system(ts: TubeSystem) -> None:
    """Assert the structural invariants of a tube system."""
    Q = ts.quiver
    n0 = len(Q.vertices)
    if sum(t.rank - 1 for t in ts.tubes) != n0 - 2:
        raise AssertionError("sum of (r - 1) differs from |vertices| - 2")
    if tits_form(Q, ts.h, ts.h) != 0:
        raise AssertionError("<h, h> != 0")
    for t in ts.tubes:
        total = {v: sum(e[v] for e in t.e) for v in Q.vertices}
        if total != ts.h:
            raise AssertionError(f"e-vectors of tube {t.point} do not sum to h")
        rows = [[e[v] for v in Q.vertices] for e in t.e]
        if rank(Matrix.from_rows(QQ, rows)) != t.rank:
            raise AssertionError(f"e-vectors of tube {t.point} are dependent")
        for e in t.e:
            if e[ts.source] != e[ts.sink]:
                raise AssertionError("e-vector differs at source and sink")
    points = [t.point for t in ts.tubes]
    if len(set(points)) != len(points):
        raise AssertionError("exceptional points collide")


def check_calibration(ts: TubeSystem, field=QQ) -> bool:
    """The homogeneous simple at each arm's point maps onto that arm's first simple."""
    from .repkit import simple_rep
    for t in ts.tubes:
        M = homogeneous_module(ts, t.point, 1, field, allow_exceptional=True)
        first = ts.quiver.arrow[ts.arms[t.arm][0]].target
        if hom_dim(M, simple_rep(ts.quiver, field, first)) == 0:
            return False
    return True


# -- modules -------------------------------------------------------------------------

def generic_point(ts: TubeSystem, avoid: Sequence[Point] = ()) -> Point:
    """Smallest xi = 0, 1, 2, ... with (1 : xi) outside X_0 and ``avoid``."""
    bad = set(ts.exceptional_points) | set(avoid)
    xi = 0
    while Point.of(1, xi) in bad:
        xi += 1
    return Point.of(1, xi)


def kronecker_embed(ts: TubeSystem, N: Representation) -> Representation:
    """Transport a (p, p) Kronecker representation to a module of dimension p*h.

    w_1 goes to X = N(alpha), w_2 to Y = N(beta); the first arrow of arm i
    carries a_i X + b_i Y and the remaining arm arrows are identities.
    """
    if N.dim.get("1") != N.dim.get("2") or set(N.mats) != {"alpha", "beta"}:
        raise DimensionMismatch("kronecker_embed expects a K2 representation of dimension (p, p)")
    F = N.field
    p = N.dim["1"]
    X, Y = N.mats["alpha"], N.mats["beta"]
    dim = {v: p * ts.h[v] for v in ts.vertices}
    mats = {}
    ident = Matrix.identity(F, p)
    for (a, b), arm in zip(ts.pencil_coeffs, ts.arms):
        mats[arm[0]] = X.scale(F(a)) + Y.scale(F(b))
        for aid in arm[1:]:
            mats[aid] = ident
    return Representation(ts.quiver, F, dim, mats, check=False)


def jordan_pair(point: Point, n: int, field) -> Representation:
    """The Kronecker module N_{(zeta:xi)}^{(n)} from a Jordan block."""
    K = kronecker_quiver()
    F = field
    J = Matrix(F, n, n, [[F.one if j == i + 1 else F.zero for j in range(n)] for i in range(n)])
    ident = Matrix.identity(F, n)
    if point.xi == 0:
        A, B = ident, J
    else:
        A = ident.scale(F(point.zeta / point.xi)) + J
        B = ident
    return Representation(K, F, {"1": n, "2": n}, {"alpha": A, "beta": B}, check=False)


def homogeneous_module(ts: TubeSystem, point: Point, n: int, field,
                       allow_exceptional: bool = False) -> Representation:
    if not allow_exceptional and ts.tube_index(point) is not None:
        raise UnknownPoint(f"{point} is an exceptional point")
    return kronecker_embed(ts, jordan_pair(point, n, field))


def tube_simple(ts: TubeSystem, k: int, j: int, field) -> Representation:
    """R_{lambda_k, j}: an arm simple for j != 0, the module of dimension h minus the arm for j = 0."""
    ts._check_index(k)
    tube = ts.tubes[k]
    j %= tube.rank
    Q = ts.quiver
    dim = tube.e[j]
    if j != 0:
        return Representation(Q, field, dim, {}, check=False)
    point = tube.point
    mats = {}
    for pos, ((a, b), arm) in enumerate(zip(ts.pencil_coeffs, ts.arms)):
        if pos == tube.arm:
            continue
        mats[arm[0]] = Matrix.from_rows(field, [[a * point.zeta + b * point.xi]])
        for aid in arm[1:]:
            mats[aid] = Matrix.identity(field, 1)
    return Representation(Q, field, dim, mats)


def _exceptional_chain(ts: TubeSystem, k: int, i: int, n: int, field) -> Representation:
    tube = ts.tubes[k]
    i %= tube.rank
    key = ("chain", k, i, field)
    chain = ts._memo.setdefault(key, [zero_rep(ts.quiver, field)])
    while len(chain) <= n:
        m = len(chain) - 1
        nxt = tube_simple(ts, k, i + m, field)
        chain.append(nxt if m == 0 else nonsplit_extension(chain[m], nxt))
    return chain[n]


def tube_module(ts: TubeSystem, m: TubeModuleSpec, field) -> Representation:
    """Matrix model of R_{lambda,i}^{(n)}.

    Exceptional modules come from iterated non-split extensions, so the
    model of length n sits inside the model of length n + m as the first
    block of coordinates.
    """
    if m.is_exceptional:
        ts._check_index(m.point)
        return _exceptional_chain(ts, m.point, m.socle, m.length, field)
    return homogeneous_module(ts, m.point, m.length, field)


def tube_modules_sum(ts: TubeSystem, specs: Sequence[TubeModuleSpec], field) -> Representation:
    mods = [tube_module(ts, s, field) for s in specs]
    return direct_sum(*mods) if mods else zero_rep(ts.quiver, field)
