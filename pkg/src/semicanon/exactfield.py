"""Exact scalars and dense matrices over Q or a prime field Z/q.

Scalars are plain Python values: :class:`fractions.Fraction` for the
rational field and ``int`` in ``[0, q-1]`` for a prime field.  A field object
knows how to coerce, reduce, invert and serialize its own scalars, and every
:class:`Matrix` carries the field it lives over.  All elimination is
deterministic (first nonzero pivot, no randomization).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import NonSquare

# Largest prime below 2**62.
DEFAULT_MODULUS = 2**62 - 57


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24 with these bases
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _parse_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


class RationalField:
    """The field Q with Fraction scalars."""

    kind = "rational"
    modulus = None

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, value) -> Fraction:
        return _parse_scalar(value)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalField()"

    @staticmethod
    def reduce(x):
        return x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def random(self, rng, bound: Optional[int] = None) -> Fraction:
        bound = bound or 1000
        return Fraction(rng.randint(-bound, bound))

    def to_str(self, x) -> str:
        return str(x)

    def to_json(self) -> dict:
        return {"kind": "rational"}


class PrimeField:
    """The field Z/q for an odd prime q; scalars are ints in [0, q-1]."""

    kind = "prime"

    def __init__(self, modulus: int = DEFAULT_MODULUS):
        modulus = int(modulus)
        if modulus < 3 or not _is_probable_prime(modulus):
            raise ValueError(f"modulus {modulus} is not an odd prime")
        self.modulus = modulus
        self.zero = 0
        self.one = 1

    def __call__(self, value) -> int:
        if isinstance(value, int) and not isinstance(value, bool):
            return value % self.modulus
        frac = _parse_scalar(value)
        return frac.numerator * self.inv(frac.denominator % self.modulus) % self.modulus

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("prime", self.modulus))

    def __repr__(self):
        return f"PrimeField({self.modulus})"

    def reduce(self, x):
        return x % self.modulus

    def inv(self, x):
        x %= self.modulus
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.modulus)

    def random(self, rng, bound: Optional[int] = None) -> int:
        if bound is not None:
            return rng.randint(-bound, bound) % self.modulus
        return rng.randrange(self.modulus)

    def to_str(self, x) -> str:
        return str(x % self.modulus)

    def to_json(self) -> dict:
        return {"kind": "prime", "modulus": self.modulus}


QQ = RationalField()


def make_field(kind: str = "prime", modulus: Optional[int] = None):
    if kind == "rational":
        return QQ
    if kind == "prime":
        return PrimeField(DEFAULT_MODULUS if modulus is None else modulus)
    raise ValueError(f"unknown field kind {kind!r}")


def field_from_json(obj) -> "RationalField | PrimeField":
    if obj is None:
        return make_field()
    return make_field(obj.get("kind", "prime"), obj.get("modulus"))


class Matrix:
    """Dense rows x cols matrix over an exact field.

    The row lists are treated as immutable once the matrix is built; every
    operation returns a new matrix.
    """

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field, rows: int, cols: int, data: Optional[List[list]] = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [[field.zero] * cols for _ in range(rows)]
        self._data = data

    @classmethod
    def from_rows(cls, field, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        data = [[field(x) for x in r] for r in rows]
        ncols = len(data[0]) if data else (cols or 0)
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix rows")
        return cls(field, len(data), ncols, data)

    @classmethod
    def from_entries(cls, field, rows: int, cols: int, entries: Sequence) -> "Matrix":
        if len(entries) != rows * cols:
            raise ValueError("entries length must equal rows * cols")
        vals = [field(x) for x in entries]
        return cls(field, rows, cols, [vals[i * cols:(i + 1) * cols] for i in range(rows)])

    @classmethod
    def from_columns(cls, field, columns: Sequence[Sequence], rows: int) -> "Matrix":
        data = [[col[i] for col in columns] for i in range(rows)]
        return cls(field, rows, len(columns), data)

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        data = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
        return cls(field, n, n, data)

    @classmethod
    def diagonal(cls, field, values: Sequence) -> "Matrix":
        n = len(values)
        m = cls.zeros(field, n, n)
        for i, v in enumerate(values):
            m._data[i][i] = field(v)
        return m

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> list:
        return [x for r in self._data for x in r]

    def tolist(self) -> List[list]:
        return [list(r) for r in self._data]

    def row(self, i: int) -> list:
        return list(self._data[i])

    def column(self, j: int) -> list:
        return [r[j] for r in self._data]

    def columns(self) -> List[list]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(map(tuple, self._data))))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self._data})"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        red = self.field.reduce
        return Matrix(self.field, self.rows, self.cols,
                      [[red(a + b) for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        red = self.field.reduce
        return Matrix(self.field, self.rows, self.cols,
                      [[red(a - b) for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self) -> "Matrix":
        red = self.field.reduce
        return Matrix(self.field, self.rows, self.cols, [[red(-a) for a in r] for r in self._data])

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        red = self.field.reduce
        return Matrix(self.field, self.rows, self.cols, [[red(c * a) for a in r] for r in self._data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        red = self.field.reduce
        ocols = list(zip(*other._data)) if other.rows else [()] * other.cols
        data = []
        for r in self._data:
            data.append([red(sum(a * b for a, b in zip(r, c))) for c in ocols])
        return Matrix(self.field, self.rows, other.cols, data)

    def apply(self, vec: Sequence) -> list:
        red = self.field.reduce
        return [red(sum(a * b for a, b in zip(r, vec))) for r in self._data]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, [list(c) for c in zip(*self._data)]
                      if self.rows else [[] for _ in range(self.cols)])

    T = property(transpose)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(rows), len(cols), [[self._data[i][j] for j in cols] for i in rows])

    @staticmethod
    def block(field, row_sizes: Sequence[int], col_sizes: Sequence[int], blocks) -> "Matrix":
        """Assemble a block matrix; ``blocks[i][j]`` may be None for a zero block."""
        out = Matrix.zeros(field, sum(row_sizes), sum(col_sizes))
        r0 = 0
        for i, rs in enumerate(row_sizes):
            c0 = 0
            for j, cs in enumerate(col_sizes):
                b = blocks[i][j]
                if b is not None:
                    if b.shape != (rs, cs):
                        raise ValueError(f"block ({i},{j}) has shape {b.shape}, expected {(rs, cs)}")
                    for a in range(rs):
                        out._data[r0 + a][c0:c0 + cs] = b._data[a]
                c0 += cs
            r0 += rs
        return out

    @staticmethod
    def block_diagonal(field, mats: Sequence["Matrix"]) -> "Matrix":
        n = len(mats)
        blocks = [[mats[i] if i == j else None for j in range(n)] for i in range(n)]
        return Matrix.block(field, [m.rows for m in mats], [m.cols for m in mats], blocks)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("hstack row mismatch")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      [r + s for r, s in zip(self._data, other._data)])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("vstack column mismatch")
        return Matrix(self.field, self.rows + other.rows, self.cols,
                      [list(r) for r in self._data] + [list(r) for r in other._data])


def rref(m: Matrix) -> Tuple[List[list], List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    F = m.field
    red = F.reduce
    rows = m.tolist()
    pivots: List[int] = []
    r = 0
    for c in range(m.cols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        prow = [red(x * inv) for x in rows[r]]
        rows[r] = prow
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [red(a - f * b) for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # row echelon only; cheaper than a full rref
    F = m.field
    red = F.reduce
    rows = m.tolist()
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        prow = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f != 0:
                f = red(f * inv)
                rows[i] = [red(a - f * b) for a, b in zip(rows[i], prow)]
        r += 1
        if r == len(rows):
            break
    return r


def det(m: Matrix):
    if m.rows != m.cols:
        raise NonSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    F = m.field
    red = F.reduce
    rows = m.tolist()
    n = m.rows
    result = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return F.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = red(-result)
        pv = rows[c][c]
        result = red(result * pv)
        inv = F.inv(pv)
        prow = rows[c]
        for i in range(c + 1, n):
            f = rows[i][c]
            if f != 0:
                f = red(f * inv)
                rows[i] = [red(a - f * b) for a, b in zip(rows[i], prow)]
    return result


def kernel_basis(m: Matrix) -> List[list]:
    """Basis of the right null space, one vector per free column (ascending)."""
    F = m.field
    red = F.reduce
    rows, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [F.zero] * m.cols
        v[f] = F.one
        for r, pc in zip(rows, pivots):
            v[pc] = red(-r[f])
        basis.append(v)
    return basis


def solve(m: Matrix, b: Sequence) -> Optional[list]:
    """One solution x of m x = b (free variables set to zero), or None."""
    F = m.field
    aug = Matrix(F, m.rows, m.cols + 1, [list(r) + [b[i]] for i, r in enumerate(m._data)])
    rows, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [F.zero] * m.cols
    for r, pc in zip(rows, pivots):
        x[pc] = r[m.cols]
    return x


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise NonSquare("inverse of a non-square matrix")
    n = m.rows
    aug = m.hstack(Matrix.identity(m.field, n))
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix(m.field, n, n, [r[n:] for r in rows[:n]])


def span_basis(field, vectors: Iterable[Sequence], length: int) -> List[list]:
    """Reduced basis (rref rows) of the span of ``vectors``."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return []
    rows, _ = rref(Matrix(field, len(vecs), length, vecs))
    return rows


class SpanTester:
    """Incremental membership test against a growing span (kept in echelon form)."""

    def __init__(self, field, length: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.length = length
        self._rows: List[list] = []
        self._pivots: List[int] = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, v: Sequence) -> list:
        red = self.field.reduce
        w = list(v)
        for row, pc in zip(self._rows, self._pivots):
            f = w[pc]
            if f != 0:
                w = [red(a - f * b) for a, b in zip(w, row)]
        return w

    def contains(self, v: Sequence) -> bool:
        return all(x == 0 for x in self._reduce(v))

    def add(self, v: Sequence) -> bool:
        """Add ``v``; returns True if it enlarged the span."""
        w = self._reduce(v)
        pc = next((i for i, x in enumerate(w) if x != 0), None)
        if pc is None:
            return False
        F = self.field
        inv = F.inv(w[pc])
        w = [F.reduce(x * inv) for x in w]
        red = F.reduce
        self._rows = [[red(a - r[pc] * b) for a, b in zip(r, w)] if r[pc] != 0 else r
                      for r in self._rows]
        self._rows.append(w)
        self._pivots.append(pc)
        return True


def complement_basis(field, subspace: Iterable[Sequence], length: int) -> List[list]:
    """Standard basis vectors completing ``subspace`` to the whole space, greedily."""
    tester = SpanTester(field, length, subspace)
    out = []
    for k in range(length):
        e = [field.zero] * length
        e[k] = field.one
        if tester.add(e):
            out.append(e)
    return out


def vec_scale(field, c, v: Sequence) -> list:
    return [field.reduce(c * x) for x in v]


def vec_add(field, u: Sequence, v: Sequence) -> list:
    return [field.reduce(a + b) for a, b in zip(u, v)]


def vec_sub(field, u: Sequence, v: Sequence) -> list:
    return [field.reduce(a - b) for a, b in zip(u, v)]
