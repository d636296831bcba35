"""Binary forms sum_j c_j S^j T^(n-j) over an exact field."""
from __future__ import annotations

from typing import List, Sequence

from .exactfield import Matrix, solve


def _trim(coeffs: List) -> List:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_divmod(F, a: List, b: List):
    """Univariate division with remainder; coefficient lists in ascending degree."""
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [F.zero] * max(len(a) - len(b) + 1, 0)
    inv = F.inv(b[-1])
    while len(a) >= len(b) and a:
        c = F.reduce(a[-1] * inv)
        k = len(a) - len(b)
        q[k] = c
        for t, bt in enumerate(b):
            a[k + t] = F.reduce(a[k + t] - c * bt)
        a = _trim(a)
    return q, a


def _poly_gcd(F, a: List, b: List) -> List:
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _poly_divmod(F, a, b)
        a, b = b, r
    if not a:
        return []
    inv = F.inv(a[-1])
    return [F.reduce(x * inv) for x in a]


class BinaryForm:
    """Homogeneous form of degree ``n``; ``coeffs[j]`` multiplies S^j T^(n-j).

    Internally the form is T^(n - deg f) * f(S/T) with f the univariate
    polynomial of the coefficients, which makes gcd and division univariate.
    """

    def __init__(self, field, coeffs: Sequence, degree: int = None):
        self.field = field
        coeffs = [field(c) for c in coeffs]
        if degree is None:
            degree = len(coeffs) - 1
        if len(coeffs) > degree + 1:
            if any(c != 0 for c in coeffs[degree + 1:]):
                raise ValueError("coefficients beyond the degree")
            coeffs = coeffs[:degree + 1]
        coeffs = coeffs + [field.zero] * (degree + 1 - len(coeffs))
        self.degree = degree
        self.coeffs = coeffs

    def __repr__(self):
        return f"BinaryForm(deg={self.degree}, {[self.field.to_str(c) for c in self.coeffs]})"

    def __eq__(self, other):
        return (isinstance(other, BinaryForm) and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def evaluate(self, S, T):
        F = self.field
        S, T = F(S), F(T)
        return F.reduce(sum(c * S ** j * T ** (self.degree - j) for j, c in enumerate(self.coeffs)))

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        F = self.field
        out = [F.zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.reduce(out[i + j] + a * b)
        return BinaryForm(F, out, self.degree + other.degree)

    def scale(self, c) -> "BinaryForm":
        F = self.field
        return BinaryForm(F, [F.reduce(F(c) * x) for x in self.coeffs], self.degree)

    def _split(self):
        poly = _trim(self.coeffs)
        return poly, self.degree - (len(poly) - 1)

    def monic(self) -> "BinaryForm":
        """Scale so the leading nonzero coefficient (highest S power) is 1."""
        poly, _ = self._split()
        if not poly:
            return self
        return self.scale(self.field.inv(poly[-1]))

    def divmod(self, other: "BinaryForm"):
        """(quotient, exact) with exact False if ``other`` does not divide ``self``."""
        F = self.field
        pa, ta = self._split()
        pb, tb = other._split()
        if not pb:
            raise ZeroDivisionError("division by the zero form")
        if not pa:
            return BinaryForm(F, [], self.degree - other.degree), True
        q, r = _poly_divmod(F, pa, pb)
        exact = not r and ta >= tb and self.degree >= other.degree
        return BinaryForm(F, q, max(self.degree - other.degree, len(q) - 1)), exact

    def proportional_to(self, other: "BinaryForm") -> bool:
        if self.degree != other.degree:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.monic() == other.monic()

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [self.field.to_str(c) for c in self.coeffs]}


def form_gcd(forms: Sequence[BinaryForm]) -> BinaryForm:
    """Monic gcd of nonzero binary forms."""
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        raise ValueError("gcd of zero forms")
    F = nonzero[0].field
    poly, tpow = nonzero[0]._split()
    for f in nonzero[1:]:
        p2, t2 = f._split()
        poly = _poly_gcd(F, poly, p2)
        tpow = min(tpow, t2)
    poly = _poly_gcd(F, poly, [])
    return BinaryForm(F, poly, len(poly) - 1 + tpow)


def linear_form(field, zeta, xi) -> BinaryForm:
    """zeta S - xi T, vanishing at (S : T) = (xi : zeta)."""
    return BinaryForm(field, [field.reduce(-field(xi)), field(zeta)], 1)


def interpolate(field, values: Sequence, degree: int) -> BinaryForm:
    """Form of the given degree with f(k, 1) = values[k] for k = 0..degree."""
    F = field
    rows = [[F.reduce(F(k) ** j) for j in range(degree + 1)] for k in range(degree + 1)]
    coeffs = solve(Matrix(F, degree + 1, degree + 1, rows), list(values))
    return BinaryForm(F, coeffs, degree)
