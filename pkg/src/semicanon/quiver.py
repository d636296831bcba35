"""Bound quivers, path enumeration, the quotient path category and the Tits form.

Conventions
-----------
* A path is a tuple of arrow ids in *travel order*: ``(a, b)`` means first
  ``a`` then ``b`` (so ``t a == s b``).  The trivial path at a vertex is ``()``.
* Paths between two vertices are listed in lexicographic order of the arrow
  positions in ``BoundQuiver.arrows`` (shorter prefixes first).
* In a quotient space ``k Q(x, y) / I(x, y)`` the basis consists of the paths
  that survive a reduced echelon form of the ideal taken with *late* paths as
  pivots, so lexicographically early paths are kept.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import InvalidQuiver, VertexMismatch
from .exactfield import Matrix, QQ, rref

Path = Tuple[str, ...]


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class AlgebraElement:
    """A linear combination of paths from ``source`` to ``target``.

    ``coords`` are field elements indexed like ``quiver.paths(source, target)``.
    """

    source: str
    target: str
    coords: tuple
    field: object

    def terms(self, quiver: "BoundQuiver"):
        return [(c, p) for c, p in zip(self.coords, quiver.paths(self.source, self.target)) if c != 0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


class BoundQuiver:
    """A finite acyclic quiver together with a minimal set of relations.

    ``relations`` is a list of relations, each a list of ``(coefficient, path)``
    pairs with rational coefficients and paths of length at least 2 sharing
    source and target.
    """

    def __init__(self, vertices: Sequence[str], arrows: Sequence, relations=(), name: str = "",
                 check_minimal: bool = True):
        self.name = name
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidQuiver("duplicate vertex ids")
        self.arrows: Tuple[Arrow, ...] = tuple(
            a if isinstance(a, Arrow) else Arrow(str(a[0]), str(a[1]), str(a[2])) for a in arrows)
        self.arrow = {a.id: a for a in self.arrows}
        if len(self.arrow) != len(self.arrows):
            raise InvalidQuiver("duplicate arrow ids")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrow_index = {a.id: i for i, a in enumerate(self.arrows)}
        for a in self.arrows:
            if a.source not in self.vertex_index or a.target not in self.vertex_index:
                raise InvalidQuiver(f"arrow {a.id} uses an unknown vertex")
        self.out_arrows: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        self.in_arrows: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            self.out_arrows[a.source].append(a)
            self.in_arrows[a.target].append(a)
        self._topo = self._toposort()
        self.relations: Tuple[Tuple[Tuple[Fraction, Path], ...], ...] = tuple(
            self._normalize_relation(r) for r in relations)
        self._path_cache: Dict[Tuple[str, str], Tuple[Path, ...]] = {}
        self._quotient_cache: Dict = {}
        if check_minimal and self.relations:
            self.check_minimal()

    # -- structure ---------------------------------------------------------

    def _toposort(self) -> List[str]:
        indeg = {v: len(self.in_arrows[v]) for v in self.vertices}
        order = []
        ready = [v for v in self.vertices if indeg[v] == 0]
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a in self.out_arrows[v]:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    ready.append(a.target)
        if len(order) != len(self.vertices):
            raise InvalidQuiver("quiver has an oriented cycle")
        return order

    def path_source(self, path: Path, default: Optional[str] = None) -> str:
        return self.arrow[path[0]].source if path else default

    def path_target(self, path: Path, default: Optional[str] = None) -> str:
        return self.arrow[path[-1]].target if path else default

    def _normalize_relation(self, rel) -> Tuple[Tuple[Fraction, Path], ...]:
        terms = []
        for coeff, path in rel:
            path = tuple(str(a) for a in path)
            if len(path) < 2:
                raise InvalidQuiver("relation paths must have length >= 2")
            for a, b in zip(path, path[1:]):
                if self.arrow[a].target != self.arrow[b].source:
                    raise InvalidQuiver(f"{path} is not a path")
            terms.append((QQ(coeff), path))
        if not terms:
            raise InvalidQuiver("empty relation")
        src = {self.path_source(p) for _, p in terms}
        tgt = {self.path_target(p) for _, p in terms}
        if len(src) != 1 or len(tgt) != 1:
            raise InvalidQuiver("relation paths must share source and target")
        return tuple(terms)

    def relation_ends(self, rel) -> Tuple[str, str]:
        path = rel[0][1]
        return self.path_source(path), self.path_target(path)

    # -- paths ---------------------------------------------------------------

    def paths(self, x: str, y: str) -> Tuple[Path, ...]:
        """All paths x -> y in lexicographic arrow-position order."""
        key = (x, y)
        if key not in self._path_cache:
            out: List[Path] = []

            def walk(v, prefix):
                if v == y:
                    out.append(prefix)
                for a in self.out_arrows[v]:
                    walk(a.target, prefix + (a.id,))

            walk(x, ())
            out.sort(key=lambda p: (tuple(self.arrow_index[a] for a in p)))
            self._path_cache[key] = tuple(out)
        return self._path_cache[key]

    def ideal_spanning_set(self, x: str, y: str, relations=None) -> List[Dict[Path, Fraction]]:
        """Elements u.rho.v spanning the relation ideal between x and y."""
        rels = self.relations if relations is None else relations
        out = []
        for rel in rels:
            s, t = self.relation_ends(rel)
            for v in self.paths(x, s):
                for u in self.paths(t, y):
                    elt: Dict[Path, Fraction] = {}
                    for c, p in rel:
                        q = v + p + u
                        elt[q] = elt.get(q, Fraction(0)) + c
                    out.append(elt)
        return out

    def quotient(self, x: str, y: str, field=QQ) -> "PathQuotient":
        key = (x, y, field)
        if key not in self._quotient_cache:
            self._quotient_cache[key] = PathQuotient(self, x, y, field)
        return self._quotient_cache[key]

    def ideal_dimension(self, relations=None) -> int:
        total = 0
        for x in self.vertices:
            for y in self.vertices:
                paths = self.paths(x, y)
                gens = self.ideal_spanning_set(x, y, relations)
                if gens and paths:
                    idx = {p: i for i, p in enumerate(paths)}
                    rows = [[Fraction(0)] * len(paths) for _ in gens]
                    for r, g in zip(rows, gens):
                        for p, c in g.items():
                            r[idx[p]] += c
                    total += len(rref(Matrix(QQ, len(rows), len(paths), rows))[0])
        return total

    def check_minimal(self) -> None:
        full = self.ideal_dimension()
        for k in range(len(self.relations)):
            rest = self.relations[:k] + self.relations[k + 1:]
            if self.ideal_dimension(rest) == full:
                raise InvalidQuiver(f"relation {k} is redundant; the relation set is not minimal")

    # -- algebra elements ------------------------------------------------------

    def element(self, x: str, y: str, terms, field=QQ) -> AlgebraElement:
        """Build an AlgebraElement from ``[(coeff, path), ...]``."""
        paths = self.paths(x, y)
        idx = {p: i for i, p in enumerate(paths)}
        coords = [field.zero] * len(paths)
        for c, p in terms:
            p = tuple(p)
            if p not in idx:
                raise InvalidQuiver(f"{p} is not a path from {x} to {y}")
            coords[idx[p]] = field.reduce(coords[idx[p]] + field(c))
        return AlgebraElement(x, y, tuple(coords), field)

    def trivial(self, x: str, field=QQ) -> AlgebraElement:
        return self.element(x, x, [(1, ())], field)

    # -- dimension vectors -----------------------------------------------------

    def dimvec(self, values) -> Dict[str, int]:
        """Normalize a mapping or vertex-ordered sequence into a dimension vector."""
        if isinstance(values, Mapping):
            extra = set(map(str, values)) - set(self.vertices)
            if extra:
                raise VertexMismatch(f"unknown vertices {sorted(extra)}")
            return {v: int(values.get(v, 0)) for v in self.vertices}
        values = list(values)
        if len(values) != len(self.vertices):
            raise VertexMismatch(f"expected {len(self.vertices)} entries, got {len(values)}")
        return {v: int(n) for v, n in zip(self.vertices, values)}

    def same_as(self, other: "BoundQuiver") -> bool:
        """Structural equality: same vertices, arrows and relations."""
        return self is other or (isinstance(other, BoundQuiver) and self.vertices == other.vertices
                                 and self.arrows == other.arrows and self.relations == other.relations)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"id": a.id, "from": a.source, "to": a.target} for a in self.arrows],
            "relations": [[{"coeff": str(c), "path": list(p)} for c, p in rel] for rel in self.relations],
        }

    @classmethod
    def from_json(cls, obj) -> "BoundQuiver":
        return cls(obj["vertices"],
                   [(a["id"], a["from"], a["to"]) for a in obj["arrows"]],
                   [[(t["coeff"], t["path"]) for t in rel] for rel in obj.get("relations", [])],
                   name=obj.get("name", ""))

    def __repr__(self):
        return f"BoundQuiver({self.name or len(self.vertices)}, {len(self.arrows)} arrows, {len(self.relations)} relations)"


class PathQuotient:
    """The space k Q(x, y) modulo the relation ideal, over a given field."""

    def __init__(self, quiver: BoundQuiver, x: str, y: str, field):
        self.quiver = quiver
        self.source = x
        self.target = y
        self.field = field
        self.paths = quiver.paths(x, y)
        n = len(self.paths)
        idx = {p: i for i, p in enumerate(self.paths)}
        gens = quiver.ideal_spanning_set(x, y)
        # columns reversed so late paths become pivots
        rows = []
        for g in gens:
            r = [field.zero] * n
            for p, c in g.items():
                j = n - 1 - idx[p]
                r[j] = field.reduce(r[j] + field(c))
            rows.append(r)
        if rows and n:
            ech, piv = rref(Matrix(field, len(rows), n, rows))
        else:
            ech, piv = [], []
        self._ideal_rows = [list(reversed(r)) for r in ech]
        self._ideal_pivots = [n - 1 - c for c in piv]
        pivset = set(self._ideal_pivots)
        self.basis_indices = [i for i in range(n) if i not in pivset]
        self.basis_paths = [self.paths[i] for i in self.basis_indices]

    @property
    def dim(self) -> int:
        return len(self.basis_indices)

    def reduce(self, vec: Sequence) -> list:
        """Coordinates in the quotient basis of a path-space vector."""
        F = self.field
        w = list(vec)
        for row, pc in zip(self._ideal_rows, self._ideal_pivots):
            f = w[pc]
            if f != 0:
                w = [F.reduce(a - f * b) for a, b in zip(w, row)]
        return [w[i] for i in self.basis_indices]

    def reduce_path(self, path: Path) -> list:
        F = self.field
        vec = [F.zero] * len(self.paths)
        vec[self.paths.index(path)] = F.one
        return self.reduce(vec)

    def lift(self, coords: Sequence) -> list:
        F = self.field
        vec = [F.zero] * len(self.paths)
        for i, c in zip(self.basis_indices, coords):
            vec[i] = c
        return vec

    def element(self, coords: Sequence) -> AlgebraElement:
        return AlgebraElement(self.source, self.target, tuple(self.lift(coords)), self.field)


def tits_form(quiver: BoundQuiver, d1, d2) -> int:
    """<d1, d2> = sum d1(x)d2(x) - sum_arrows d1(s)d2(t) + sum_relations d1(s)d2(t)."""
    a = quiver.dimvec(d1)
    b = quiver.dimvec(d2)
    val = sum(a[x] * b[x] for x in quiver.vertices)
    val -= sum(a[al.source] * b[al.target] for al in quiver.arrows)
    for rel in quiver.relations:
        s, t = quiver.relation_ends(rel)
        val += a[s] * b[t]
    return val


def enumerate_paths(quiver: BoundQuiver, x: str, y: str) -> List[Path]:
    return list(quiver.paths(x, y))


def hom_basis_between_projectives(quiver: BoundQuiver, x: str, y: str, field=QQ) -> List[AlgebraElement]:
    """Basis of paths x -> y modulo the relation ideal, as algebra elements."""
    q = quiver.quotient(x, y, field)
    out = []
    for k in range(q.dim):
        coords = [field.zero] * q.dim
        coords[k] = field.one
        out.append(q.element(coords))
    return out


def projective_dim_vector(quiver: BoundQuiver, x: str, field=QQ) -> Dict[str, int]:
    return {y: quiver.quotient(x, y, field).dim for y in quiver.vertices}


def is_sincere(dim: Mapping[str, int]) -> bool:
    return all(n > 0 for n in dim.values())


def add_dims(*dims: Mapping[str, int]) -> Dict[str, int]:
    out: Dict[str, int] = {}
    for d in dims:
        for v, n in d.items():
            out[v] = out.get(v, 0) + n
    return out


def scale_dim(c: int, d: Mapping[str, int]) -> Dict[str, int]:
    return {v: c * n for v, n in d.items()}


def kronecker_quiver() -> BoundQuiver:
    """K2: vertices 1 (sink) and 2 (source), arrows alpha, beta: 2 -> 1."""
    return BoundQuiver(["1", "2"], [("alpha", "2", "1"), ("beta", "2", "1")], name="K2")
