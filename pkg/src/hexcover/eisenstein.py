"""Exact arithmetic in Q(zeta) for zeta = exp(pi*i/3).

zeta is a primitive sixth root of unity, so zeta**2 = zeta - 1 and
conj(zeta) = 1 - zeta.  Every element is stored as a + b*zeta with
rational a, b; the hexagonal ring Z[zeta] is the ring of integers.
Two smaller orders matter for integrality constraints on symmetry
candidates: Z[2*zeta] (b even) and the ideal 2*Z[zeta] (a, b even).
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Sequence, Tuple, Union

Rat = Union[int, Fraction]


class EisRat:
    """a + b*zeta with exact rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rat = 0, b: Rat = 0) -> None:
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("EisRat is immutable")

    @staticmethod
    def _coerce(x: object) -> "EisRat | None":
        if isinstance(x, EisRat):
            return x
        if isinstance(x, (int, Fraction)):
            return EisRat(x)
        return None

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __add__(self, other: object) -> "EisRat":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return EisRat(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other: object) -> "EisRat":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return EisRat(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: object) -> "EisRat":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return EisRat(o.a - self.a, o.b - self.b)

    def __neg__(self) -> "EisRat":
        return EisRat(-self.a, -self.b)

    def __mul__(self, other: object) -> "EisRat":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # (a+b*z)(c+d*z) = ac + (ad+bc)z + bd*z^2, and z^2 = z - 1.
        a, b, c, d = self.a, self.b, o.a, o.b
        return EisRat(a * c - b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "EisRat":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(zeta)")
        # 1/x = conj(x) / norm(x)
        num = self * o.conjugate()
        return EisRat(num.a / n, num.b / n)

    def __rtruediv__(self, other: object) -> "EisRat":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> "EisRat":
        if k < 0:
            return EisRat(1) / self ** (-k)
        out = EisRat(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "EisRat":
        # conj(zeta) = 1 - zeta
        return EisRat(self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + self.a * self.b + self.b * self.b

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self) -> str:
        return f"EisRat({self.a!r}, {self.b!r})"

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        if self.a:
            parts.append(str(self.a))
        if self.b:
            if self.b == 1:
                zterm = "zeta"
            elif self.b == -1:
                zterm = "-zeta"
            else:
                zterm = f"{self.b}*zeta"
            if parts and not zterm.startswith("-"):
                parts.append(f"+ {zterm}")
            elif parts:
                parts.append(f"- {zterm[1:]}")
            else:
                parts.append(zterm)
        return " ".join(parts)


class Order(enum.Enum):
    """The three orders that occur as integrality constraints."""

    MAXIMAL = "Z[zeta]"
    EVEN_ZETA = "Z[2*zeta]"
    DOUBLED = "2*Z[zeta]"


def eis_mul(x: EisRat, y: EisRat) -> EisRat:
    return x * y


def eis_conj(x: EisRat) -> EisRat:
    return x.conjugate()


def is_unit(x: EisRat) -> bool:
    """True iff x is one of the six units of Z[zeta]."""
    return x.is_integral() and x.norm() == 1


def in_order(x: EisRat, order: Order) -> bool:
    if not x.is_integral():
        return False
    if order is Order.MAXIMAL:
        return True
    if order is Order.EVEN_ZETA:
        return x.b % 2 == 0
    if order is Order.DOUBLED:
        return x.a % 2 == 0 and x.b % 2 == 0
    raise ValueError(f"unknown order {order!r}")


class ReIm:
    """Exact real/imaginary decomposition of (a + b*zeta)/sqrt(3).

    The real part is re_coeff/sqrt(3) with re_coeff = a + b/2; the
    imaginary part is rational, im = b/2.  Keeping the 1/sqrt(3) as a
    tagged coefficient lets hermitian-form values round-trip exactly.
    """

    __slots__ = ("re_coeff", "im")

    def __init__(self, re_coeff: Rat = 0, im: Rat = 0) -> None:
        object.__setattr__(self, "re_coeff", Fraction(re_coeff))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ReIm is immutable")

    @classmethod
    def from_scaled(cls, x: EisRat) -> "ReIm":
        """Decompose x/sqrt(3)."""
        return cls(x.a + x.b / 2, x.b / 2)

    def to_scaled(self) -> EisRat:
        """The x with x/sqrt(3) equal to this value."""
        b = 2 * self.im
        return EisRat(self.re_coeff - self.im, b)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReIm):
            return NotImplemented
        return self.re_coeff == other.re_coeff and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re_coeff, self.im))

    def __repr__(self) -> str:
        return f"ReIm({self.re_coeff!r}, {self.im!r})"


# ---------------------------------------------------------------------------
# Small matrices over Q(zeta).  Matrices are tuples of row tuples; vectors
# are tuples.  Shapes are whatever the caller supplies (2x2, 1x2, ...).

EisMat = Tuple[Tuple[EisRat, ...], ...]
EisVec = Tuple[EisRat, ...]


def as_eis(x: object) -> EisRat:
    v = EisRat._coerce(x)
    if v is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(zeta)")
    return v


def mat(rows: Sequence[Sequence[object]]) -> EisMat:
    return tuple(tuple(as_eis(x) for x in row) for row in rows)


def vec(entries: Sequence[object]) -> EisVec:
    return tuple(as_eis(x) for x in entries)


def mat_mul(A: EisMat, B: EisMat) -> EisMat:
    if len(A[0]) != len(B):
        raise ValueError("shape mismatch")
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(len(B))), EisRat(0))
              for j in range(len(B[0])))
        for i in range(len(A))
    )


def mat_apply(A: EisMat, v: EisVec) -> EisVec:
    if len(A[0]) != len(v):
        raise ValueError("shape mismatch")
    return tuple(sum((A[i][k] * v[k] for k in range(len(v))), EisRat(0))
                 for i in range(len(A)))


def mat_add(A: EisMat, B: EisMat) -> EisMat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(c: object, A: EisMat) -> EisMat:
    s = as_eis(c)
    return tuple(tuple(s * x for x in row) for row in A)


def mat_conj(A: EisMat) -> EisMat:
    return tuple(tuple(x.conjugate() for x in row) for row in A)


def mat_transpose(A: EisMat) -> EisMat:
    return tuple(tuple(A[i][j] for i in range(len(A))) for j in range(len(A[0])))


def mat_identity(n: int) -> EisMat:
    return tuple(tuple(EisRat(1 if i == j else 0) for j in range(n))
                 for i in range(n))


def det2(A: EisMat) -> EisRat:
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def inv2(A: EisMat) -> EisMat:
    d = det2(A)
    if not d:
        raise ZeroDivisionError("singular 2x2 matrix over Q(zeta)")
    return (
        (A[1][1] / d, -A[0][1] / d),
        (-A[1][0] / d, A[0][0] / d),
    )


ZERO = EisRat(0)
ONE = EisRat(1)
ZETA = EisRat(0, 1)
