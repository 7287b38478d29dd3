"""Rational lattices of rank 2 and 4 in the real 4-space underlying C^2.

The ambient space carries the fixed reference basis (u1, zeta*u1, u2,
zeta*u2), where (u1, u2) is the standard complex basis; a vector is four
rationals against that basis, equivalently a pair (z1, z2) of Q(zeta)
elements.  Multiplication by zeta acts on each 2-block by the integer
matrix J = [[0, -1], [1, 1]], which satisfies J**2 = J - 1.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

from .eisenstein import EisRat, Rat


class NotCommensurable(ValueError):
    """The two lattices do not sit in a common rational span."""


class NotContained(ValueError):
    """A vector of the would-be sublattice falls outside the superlattice."""


class RankMismatch(ValueError):
    """Operation requires lattices of equal rank."""


class AmbientVector:
    """Vector with four rational coordinates in the reference basis."""

    __slots__ = ("coordinates",)

    def __init__(self, coordinates: Sequence[Rat]) -> None:
        coords = tuple(Fraction(c) for c in coordinates)
        if len(coords) != 4:
            raise ValueError("ambient vectors have four coordinates")
        object.__setattr__(self, "coordinates", coords)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("AmbientVector is immutable")

    @classmethod
    def from_pair(cls, z1: EisRat, z2: EisRat) -> "AmbientVector":
        return cls((z1.a, z1.b, z2.a, z2.b))

    def to_pair(self) -> Tuple[EisRat, EisRat]:
        x1, x2, x3, x4 = self.coordinates
        return EisRat(x1, x2), EisRat(x3, x4)

    def mul_zeta(self) -> "AmbientVector":
        x1, x2, x3, x4 = self.coordinates
        return AmbientVector((-x2, x1 + x2, -x4, x3 + x4))

    def scale_eis(self, c: EisRat) -> "AmbientVector":
        return c.a * self + c.b * self.mul_zeta()

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coordinates)

    def __add__(self, other: "AmbientVector") -> "AmbientVector":
        if not isinstance(other, AmbientVector):
            return NotImplemented
        return AmbientVector(tuple(a + b for a, b in
                                   zip(self.coordinates, other.coordinates)))

    def __sub__(self, other: "AmbientVector") -> "AmbientVector":
        if not isinstance(other, AmbientVector):
            return NotImplemented
        return AmbientVector(tuple(a - b for a, b in
                                   zip(self.coordinates, other.coordinates)))

    def __neg__(self) -> "AmbientVector":
        return AmbientVector(tuple(-a for a in self.coordinates))

    def __mul__(self, scalar: Rat) -> "AmbientVector":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return AmbientVector(tuple(a * scalar for a in self.coordinates))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AmbientVector):
            return NotImplemented
        return self.coordinates == other.coordinates

    def __hash__(self) -> int:
        return hash(self.coordinates)

    def __bool__(self) -> bool:
        return any(self.coordinates)

    def __repr__(self) -> str:
        return f"AmbientVector({list(self.coordinates)!r})"


class ComplexLine:
    """Complex line through the origin, a nonzero (z1, z2) up to scaling."""

    __slots__ = ("direction",)

    def __init__(self, direction: Tuple[EisRat, EisRat]) -> None:
        d1, d2 = direction
        if not d1 and not d2:
            raise ValueError("a complex line needs a nonzero direction")
        object.__setattr__(self, "direction", (d1, d2))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ComplexLine is immutable")

    def contains_pair(self, z1: EisRat, z2: EisRat) -> bool:
        d1, d2 = self.direction
        return z1 * d2 - z2 * d1 == EisRat(0)

    def contains(self, v: AmbientVector) -> bool:
        return self.contains_pair(*v.to_pair())

    def _normalized(self) -> Tuple[EisRat, EisRat]:
        d1, d2 = self.direction
        if d1:
            return EisRat(1), d2 / d1
        return EisRat(0), EisRat(1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComplexLine):
            return NotImplemented
        return self._normalized() == other._normalized()

    def __hash__(self) -> int:
        return hash(self._normalized())

    def __repr__(self) -> str:
        return f"ComplexLine({self.direction!r})"


class LatticeBasis:
    """Ordered rationally independent generators of a lattice."""

    __slots__ = ("vectors",)

    def __init__(self, vectors: Sequence[AmbientVector]) -> None:
        vecs = tuple(vectors)
        rows = [list(v.coordinates) for v in vecs]
        if _rat_rank(rows) != len(vecs):
            raise ValueError("basis vectors must be linearly independent")
        object.__setattr__(self, "vectors", vecs)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LatticeBasis is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Rat]]) -> "LatticeBasis":
        return cls([AmbientVector(r) for r in rows])

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticeBasis):
            return NotImplemented
        return self.vectors == other.vectors

    def __hash__(self) -> int:
        return hash(self.vectors)

    def __repr__(self) -> str:
        return f"LatticeBasis({list(self.vectors)!r})"


# --- rational linear algebra ------------------------------------------------


def _rat_rank(rows: List[List[Fraction]]) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    col = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col] / pv
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _solve_in_span(columns: List[List[Fraction]],
                   target: List[Fraction]) -> Optional[List[Fraction]]:
    """Solve sum_j x_j * columns[j] = target; None if inconsistent.

    Assumes the columns are linearly independent, so any solution is unique.
    """
    k = len(columns)
    n = len(target)
    aug = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    pivots = []
    row = 0
    for col in range(k):
        pr = None
        for r in range(row, n):
            if aug[r][col]:
                pr = r
                break
        if pr is None:
            continue
        aug[row], aug[pr] = aug[pr], aug[row]
        pv = aug[row][col]
        aug[row] = [a / pv for a in aug[row]]
        for r in range(n):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, n):
        if aug[r][k]:
            return None
    sol = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        sol[col] = aug[r][k]
    return sol


def _det(rows: List[List[Fraction]]) -> Fraction:
    n = len(rows)
    m = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / pv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def coords_in(reference: LatticeBasis, v: AmbientVector) -> Optional[Tuple[Fraction, ...]]:
    """Coordinates of v in the reference basis, or None if v is outside
    the rational span of the reference."""
    cols = [list(b.coordinates) for b in reference.vectors]
    sol = _solve_in_span(cols, list(v.coordinates))
    return None if sol is None else tuple(sol)


# --- integer column reduction ----------------------------------------------


def _column_reduce(m: List[List[int]], pivot_rows: int) -> Tuple[List[List[int]], int]:
    """Bring the matrix to column echelon form using unimodular column
    operations, creating pivots only in the first pivot_rows rows.
    Returns the reduced matrix and the number of pivot columns."""
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    c = 0
    for i in range(pivot_rows):
        if c == ncols:
            break
        while True:
            nz = [j for j in range(c, ncols) if m[i][j]]
            if len(nz) <= 1:
                break
            j0 = min(nz, key=lambda j: abs(m[i][j]))
            for j in nz:
                if j == j0:
                    continue
                q = m[i][j] // m[i][j0]
                if q:
                    for r in range(nrows):
                        m[r][j] -= q * m[r][j0]
        nz = [j for j in range(c, ncols) if m[i][j]]
        if not nz:
            continue
        j0 = nz[0]
        if j0 != c:
            for r in range(nrows):
                m[r][c], m[r][j0] = m[r][j0], m[r][c]
        if m[i][c] < 0:
            for r in range(nrows):
                m[r][c] = -m[r][c]
        for j in range(c):
            q = m[i][j] // m[i][c]
            if q:
                for r in range(nrows):
                    m[r][j] -= q * m[r][c]
        c += 1
    return m, c


def _integer_column_hnf(m: List[List[int]]) -> List[List[int]]:
    reduced, _ = _column_reduce([list(r) for r in m], len(m))
    return reduced


def integer_kernel(constraints: List[List[Fraction]], width: int) -> List[List[int]]:
    """Saturated basis of {n in Z^width : constraints . n = 0}.

    Each constraint is a length-width rational row; the result vectors are
    primitive and generate the full integer kernel.
    """
    rows = []
    for row in constraints:
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        rows.append([int(Fraction(x) * den) for x in row])
    stacked = rows + [[1 if i == j else 0 for j in range(width)]
                      for i in range(width)]
    reduced, npivots = _column_reduce(stacked, len(rows))
    kernel = []
    for j in range(npivots, width):
        if all(reduced[i][j] == 0 for i in range(len(rows))):
            kernel.append([reduced[len(rows) + i][j] for i in range(width)])
    return kernel


# --- lattice operations -----------------------------------------------------


def _coord_matrix(basis: LatticeBasis, reference: LatticeBasis) -> List[List[Fraction]]:
    """Columns are the reference-coordinates of the basis vectors."""
    cols = []
    for v in basis.vectors:
        sol = coords_in(reference, v)
        if sol is None:
            raise NotCommensurable(
                "basis vector outside the rational span of the reference")
        cols.append(list(sol))
    n = reference.rank
    return [[cols[j][i] for j in range(len(cols))] for i in range(n)]


def hnf(basis: LatticeBasis, reference: LatticeBasis) -> Tuple[Tuple[Fraction, ...], ...]:
    """Hermite normal form of the coordinate matrix of basis relative to
    reference (column-style, lower triangular, residues reduced into
    [0, diagonal)).  Two bases generate the same lattice iff their normal
    forms relative to a common reference are equal."""
    mat = _coord_matrix(basis, reference)
    den = lcm(*(x.denominator for row in mat for x in row))
    ints = [[int(x * den) for x in row] for row in mat]
    reduced = _integer_column_hnf(ints)
    return tuple(tuple(Fraction(x, den) for x in row) for row in reduced)


def index(sub: LatticeBasis, super_: LatticeBasis) -> int:
    """Index [super : sub] for lattices of equal rank."""
    if sub.rank != super_.rank:
        raise RankMismatch(
            f"rank {sub.rank} sublattice against rank {super_.rank} lattice")
    mat = _coord_matrix(sub, super_)
    for row in mat:
        for x in row:
            if x.denominator != 1:
                raise NotContained("sublattice vector with fractional "
                                   "coordinates in the superlattice")
    d = _det(mat)
    return abs(int(d))


def base_change_is_unimodular(from_basis: LatticeBasis, to_basis: LatticeBasis) -> bool:
    """True iff the two bases generate the same lattice, i.e. the change
    matrix is integral with determinant +-1."""
    if from_basis.rank != to_basis.rank:
        raise RankMismatch("base change needs equal ranks")
    try:
        mat = _coord_matrix(from_basis, to_basis)
    except NotCommensurable:
        return False
    if any(x.denominator != 1 for row in mat for x in row):
        return False
    return abs(_det(mat)) == 1


def same_lattice(b1: LatticeBasis, b2: LatticeBasis) -> bool:
    if b1.rank != b2.rank:
        return False
    try:
        return base_change_is_unimodular(b1, b2)
    except RankMismatch:  # pragma: no cover - ranks checked above
        return False


def orientation(basis: LatticeBasis) -> int:
    """Sign of the determinant of the ambient coordinate matrix.

    Fixes the orientation of every rank-4 basis against the reference
    basis once and for all, so pfaffians of alternating forms do not
    depend on the ordering of the generators.
    """
    if basis.rank != 4:
        raise RankMismatch("orientation is defined for rank-4 bases")
    d = _det([list(v.coordinates) for v in basis.vectors])
    return 1 if d > 0 else -1


def line_membership_rank2(line: ComplexLine, ambient: LatticeBasis) -> LatticeBasis:
    """The sublattice of ambient lying on the complex line, as a saturated
    rank-2 basis (rank 0 if the line misses the lattice)."""
    d1, d2 = line.direction
    constraint_a: List[Fraction] = []
    constraint_b: List[Fraction] = []
    for v in ambient.vectors:
        z1, z2 = v.to_pair()
        w = z1 * d2 - z2 * d1
        constraint_a.append(w.a)
        constraint_b.append(w.b)
    kernel = integer_kernel([constraint_a, constraint_b], ambient.rank)
    vectors = []
    for coeffs in kernel:
        acc = AmbientVector((0, 0, 0, 0))
        for c, v in zip(coeffs, ambient.vectors):
            acc = acc + c * v
        vectors.append(acc)
    return LatticeBasis(vectors)
