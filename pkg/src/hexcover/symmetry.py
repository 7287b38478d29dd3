"""Affine symmetries of the covering surface that preserve its branch divisor.

A symmetry is v |-> L(v) + t with L linear or anti-linear.  Preservation of
the divisor reduces to two finite checks: the (anti)linear part must permute
the four tangent lines projectively, and the translation part must fix the
two-point base locus.  On top of that sit the rational representations on the
period lattice, cross-ratios of the tangent quadruple, a bounded search for
the generators, and the permutation action on the sixteen square roots of the
branch bundle.
"""
from __future__ import annotations

from typing import List, Sequence

from . import catalog
from .appell_humbert import (
    LineBundleClass,
    pullback_antihom,
    pullback_hom,
    translate,
)
from .eisenstein import (
    EisMat,
    EisRat,
    as_eis,
    det2,
    inv2,
    mat,
    mat_conj,
    mat_identity,
    mat_mul,
)
from .lattice import AmbientVector, LatticeBasis, coords_in
from .permgroup import Permutation
from .torsion_covers import CharacterMod2, all_characters, classify_characters


class NotLatticePreserving(ValueError):
    """The (anti)linear part does not map the lattice onto itself."""


class NotDivisorPreserving(ValueError):
    """The symmetry moves the branch divisor."""


class DegenerateQuadruple(ValueError):
    """Cross-ratio of a quadruple with a repeated point."""


class RootNotFound(ValueError):
    """A pulled-back square root is missing from the supplied labeling."""


_ZERO_VECTOR = AmbientVector((0, 0, 0, 0))


class ProjectivePoint:
    """A point of the projective line, as a homogeneous coordinate pair."""

    __slots__ = ("x", "y")

    def __init__(self, x, y) -> None:
        x = as_eis(x)
        y = as_eis(y)
        if not x and not y:
            raise ValueError("homogeneous coordinates cannot both vanish")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, name, value):
        raise AttributeError("ProjectivePoint is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.x * other.y == other.x * self.y

    def __hash__(self) -> int:
        if self.y:
            return hash(("ProjectivePoint", self.x / self.y))
        return hash(("ProjectivePoint", None))

    def __repr__(self) -> str:
        return f"[{self.x} : {self.y}]"


class AffineSymmetry:
    """Map v |-> linear . v + t, conjugating first when anti-holomorphic."""

    __slots__ = ("linear", "antiholomorphic", "translation")

    def __init__(self, linear, antiholomorphic: bool = False,
                 translation: AmbientVector = _ZERO_VECTOR) -> None:
        linear = mat(linear)
        if len(linear) != 2 or any(len(row) != 2 for row in linear):
            raise ValueError("the linear part must be a 2x2 matrix")
        if not det2(linear):
            raise ValueError("the linear part must be invertible")
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "antiholomorphic", bool(antiholomorphic))
        object.__setattr__(self, "translation", translation)

    def __setattr__(self, name, value):
        raise AttributeError("AffineSymmetry is immutable")

    @classmethod
    def identity(cls) -> "AffineSymmetry":
        return cls(mat_identity(2))

    def apply(self, v: AmbientVector) -> AmbientVector:
        z1, z2 = v.to_pair()
        if self.antiholomorphic:
            z1, z2 = z1.conjugate(), z2.conjugate()
        m = self.linear
        w = AmbientVector.from_pair(m[0][0] * z1 + m[0][1] * z2,
                                    m[1][0] * z1 + m[1][1] * z2)
        return w + self.translation

    def compose(self, other: "AffineSymmetry") -> "AffineSymmetry":
        """The map v |-> self(other(v))."""
        lin = mat_conj(other.linear) if self.antiholomorphic else other.linear
        t = other.translation
        if self.antiholomorphic:
            t = _conj_vector(t)
        moved = _apply_linear(self.linear, t) + self.translation
        return AffineSymmetry(mat_mul(self.linear, lin),
                              self.antiholomorphic != other.antiholomorphic,
                              moved)

    def inverse(self) -> "AffineSymmetry":
        inv = inv2(self.linear)
        back = -_apply_linear(inv, self.translation)
        if not self.antiholomorphic:
            return AffineSymmetry(inv, False, back)
        return AffineSymmetry(mat_conj(inv), True, _conj_vector(back))

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineSymmetry):
            return NotImplemented
        return (self.linear == other.linear
                and self.antiholomorphic == other.antiholomorphic
                and self.translation == other.translation)

    def __hash__(self) -> int:
        return hash((self.linear, self.antiholomorphic, self.translation))

    def __repr__(self) -> str:
        tag = "anti" if self.antiholomorphic else "holo"
        return f"AffineSymmetry({self.linear!r}, {tag}, {self.translation!r})"


def _apply_linear(m: EisMat, v: AmbientVector) -> AmbientVector:
    z1, z2 = v.to_pair()
    return AmbientVector.from_pair(m[0][0] * z1 + m[0][1] * z2,
                                   m[1][0] * z1 + m[1][1] * z2)


def _conj_vector(v: AmbientVector) -> AmbientVector:
    z1, z2 = v.to_pair()
    return AmbientVector.from_pair(z1.conjugate(), z2.conjugate())


def _int_det(m: Sequence[Sequence[int]]) -> int:
    if len(m) == 1:
        return m[0][0]
    total = 0
    for j, top in enumerate(m[0]):
        if not top:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * top * _int_det(minor)
    return total


def rational_rep(g: AffineSymmetry, basis: LatticeBasis):
    """Integer matrix of the (anti)linear part of g on the lattice basis.

    Column j holds the coordinates of the image of the j-th basis vector; the
    determinant must be a unit for g to map the lattice onto itself.
    """
    columns = []
    for v in basis.vectors:
        if g.antiholomorphic:
            v = _conj_vector(v)
        w = _apply_linear(g.linear, v)
        coords = coords_in(basis, w)
        if coords is None or any(c.denominator != 1 for c in coords):
            raise NotLatticePreserving(f"image of {v!r} leaves the lattice")
        columns.append(tuple(int(c) for c in coords))
    rows = tuple(tuple(col[i] for col in columns)
                 for i in range(len(columns)))
    if _int_det(rows) not in (1, -1):
        raise NotLatticePreserving("lattice map is not invertible over Z")
    return rows


def maps_equal(g: AffineSymmetry, h: AffineSymmetry,
               basis: LatticeBasis) -> bool:
    """Equality as maps of the torus: same lattice action, same coset shift."""
    if g.antiholomorphic != h.antiholomorphic:
        return False
    if rational_rep(g, basis) != rational_rep(h, basis):
        return False
    diff = coords_in(basis, g.translation - h.translation)
    return diff is not None and all(c.denominator == 1 for c in diff)


_AMBIENT_TANGENTS = tuple(ProjectivePoint(*line.direction)
                          for line in catalog.CURVE_LINES)

_SHEAR_INVERSE = inv2(catalog.FRAME_SHEAR)

# The same four tangent directions written in the sheared frame used by the
# generator search.
TILTED_TANGENTS = tuple(
    ProjectivePoint(_SHEAR_INVERSE[0][0] * p.x + _SHEAR_INVERSE[0][1] * p.y,
                    _SHEAR_INVERSE[1][0] * p.x + _SHEAR_INVERSE[1][1] * p.y)
    for p in _AMBIENT_TANGENTS)


def _line_permutation(linear: EisMat, antiholomorphic: bool,
                      points: Sequence[ProjectivePoint]):
    """Images tuple of the induced map on the point set, or None."""
    images = []
    for p in points:
        x, y = p.x, p.y
        if antiholomorphic:
            x, y = x.conjugate(), y.conjugate()
        q = ProjectivePoint(linear[0][0] * x + linear[0][1] * y,
                            linear[1][0] * x + linear[1][1] * y)
        for k, target in enumerate(points, start=1):
            if q == target:
                images.append(k)
                break
        else:
            return None
    return tuple(images)


def preserves_divisor(g: AffineSymmetry) -> bool:
    """Whether g maps the branch divisor of the cover to itself.

    The divisor is four elliptic curves with tangent lines at the two
    quadruple points, so preservation is a line permutation plus
    stabilization of the base set.
    """
    rational_rep(g, catalog.COVER_LATTICE)
    if _line_permutation(g.linear, g.antiholomorphic, _AMBIENT_TANGENTS) is None:
        return False
    for base in (_ZERO_VECTOR, catalog.BRANCH_BASE_POINT):
        coords = coords_in(catalog.COVER_LATTICE, g.translation - base)
        if coords is not None and all(c.denominator == 1 for c in coords):
            return True
    return False


def tangent_line_permutation(g: AffineSymmetry) -> Permutation:
    """The permutation of the four tangent lines induced by g."""
    if not preserves_divisor(g):
        raise NotDivisorPreserving("symmetry moves the branch divisor")
    return Permutation(
        _line_permutation(g.linear, g.antiholomorphic, _AMBIENT_TANGENTS))


def cross_ratio(p1: ProjectivePoint, p2: ProjectivePoint,
                p3: ProjectivePoint, p4: ProjectivePoint) -> EisRat:
    """((p1-p3)(p2-p4)) / ((p2-p3)(p1-p4)), degenerating by cancellation."""
    points = (p1, p2, p3, p4)
    for i in range(4):
        for j in range(i + 1, 4):
            if points[i] == points[j]:
                raise DegenerateQuadruple("repeated point in the quadruple")

    def d(p, q):
        return p.x * q.y - q.x * p.y

    return (d(p1, p3) * d(p2, p4)) / (d(p2, p3) * d(p1, p4))


def pull_back(g: AffineSymmetry, bundle: LineBundleClass) -> LineBundleClass:
    """Pullback of a bundle class along g, translation part included."""
    moved = translate(bundle, g.translation)
    if g.antiholomorphic:
        return pullback_antihom(moved, g.linear, bundle.lattice)
    return pullback_hom(moved, g.linear, bundle.lattice)


def action_on_square_roots(g: AffineSymmetry,
                           roots: Sequence[LineBundleClass]) -> Permutation:
    """Permutation of {1..16} given by pulling each square root back."""
    if not preserves_divisor(g):
        raise NotDivisorPreserving("symmetry moves the branch divisor")
    roots = list(roots)
    images = []
    for root in roots:
        pulled = pull_back(g, root)
        try:
            images.append(roots.index(pulled) + 1)
        except ValueError:
            raise RootNotFound("pullback left the supplied list of roots")
    return Permutation(images)


def search_generators(height_bound: int) -> List[AffineSymmetry]:
    """All sheared-frame symmetries with small entries moving the tangent
    quadruple by one of the two target permutations.

    Entries run over a fixed congruence pattern (upper-left with even zeta
    part, upper-right with both parts even, bottom row unrestricted), pruned
    by unit determinant, then by the induced tangent permutation, and finally
    by preservation of the cover lattice after conjugating back to the
    standard frame.
    """
    if height_bound < 2:
        raise ValueError("height bound must be at least 2")
    b = height_bound
    targets = ((3, 4, 1, 2), (2, 3, 1, 4))
    shear = catalog.FRAME_SHEAR
    out = []
    span = range(-b, b + 1)
    even = [k for k in span if k % 2 == 0]
    top_left = [(x, y) for x in span for y in even]
    top_right = [(x, y) for x in even for y in even]
    bottom = [(x, y) for x in span for y in span]
    for a11 in top_left:
        for a22 in bottom:
            # det = a11*a22 - a12*a21 must be a unit of the ring
            head = (a11[0] * a22[0] - a11[1] * a22[1],
                    a11[0] * a22[1] + a11[1] * a22[0] + a11[1] * a22[1])
            for a12 in top_right:
                for a21 in bottom:
                    cross = (a12[0] * a21[0] - a12[1] * a21[1],
                             a12[0] * a21[1] + a12[1] * a21[0] + a12[1] * a21[1])
                    da, db = head[0] - cross[0], head[1] - cross[1]
                    if da * da + da * db + db * db != 1:
                        continue
                    linear = mat([[EisRat(*a11), EisRat(*a12)],
                                  [EisRat(*a21), EisRat(*a22)]])
                    if _line_permutation(linear, False, TILTED_TANGENTS) \
                            not in targets:
                        continue
                    ambient = mat_mul(mat_mul(shear, linear), _SHEAR_INVERSE)
                    candidate = AffineSymmetry(ambient)
                    try:
                        rational_rep(candidate, catalog.COVER_LATTICE)
                    except NotLatticePreserving:
                        continue
                    out.append(AffineSymmetry(linear))
    return out


def verify_presentation(g2: AffineSymmetry, g3: AffineSymmetry) -> bool:
    """Check the defining relations of the holomorphic symmetry group.

    Squares and the relevant cubes must equal the negation map on the cover,
    negation must be an involution, and the point swap must commute with the
    anti-holomorphic reflection.
    """
    basis = catalog.COVER_LATTICE
    try:
        square = g2.compose(g2)
        cube = g3.compose(g3).compose(g3)
        prod = g2.compose(g3)
        prod3 = prod.compose(prod).compose(prod)
        ok = (maps_equal(square, NEGATION, basis)
              and maps_equal(cube, NEGATION, basis)
              and maps_equal(prod3, NEGATION, basis)
              and maps_equal(NEGATION.compose(NEGATION),
                             AffineSymmetry.identity(), basis))
        swap, refl = BASE_POINT_SWAP, ANTIHOLO_REFLECTION
        comm = swap.compose(refl).compose(swap.inverse()).compose(
            refl.inverse())
        return ok and maps_equal(comm, AffineSymmetry.identity(), basis)
    except NotLatticePreserving:
        return False


def gamma_action_on_sigma() -> Permutation:
    """Permutation of the three selected characters under the order-3
    symmetry of the product surface."""
    g = PRODUCT_ORDER3
    basis = catalog.PRODUCT_LATTICE
    rational_rep(g, basis)
    if not maps_equal(g.compose(g).compose(g), AffineSymmetry.identity(),
                      basis):
        raise ValueError("product symmetry is not of order 3")
    if _line_permutation(g.linear, False, _AMBIENT_TANGENTS) is None:
        raise NotDivisorPreserving("product symmetry moves the tangent lines")
    chars = all_characters()
    selected = classify_characters().selected
    images = []
    for k in selected:
        pulled = CharacterMod2(
            chars[k].value(_apply_linear(g.linear, v))
            for v in basis.vectors)
        images.append(selected.index(chars.index(pulled)) + 1)
    return Permutation(images)


# canonical symmetries of the cover
ORDER4_SYMMETRY = AffineSymmetry(catalog.ORDER4_GEN)
ORDER6_SYMMETRY = AffineSymmetry(catalog.ORDER6_GEN)
NEGATION = AffineSymmetry([[-1, 0], [0, -1]])
BASE_POINT_SWAP = AffineSymmetry(mat_identity(2),
                                 translation=catalog.BRANCH_BASE_POINT)
ANTIHOLO_REFLECTION = AffineSymmetry(catalog.SIGMA_LINEAR,
                                     antiholomorphic=True)
TILTED_ORDER4_SYMMETRY = AffineSymmetry(catalog.TILTED_ORDER4)
TILTED_ORDER6_SYMMETRY = AffineSymmetry(catalog.TILTED_ORDER6)
# order-3 symmetry of the product surface
PRODUCT_ORDER3 = AffineSymmetry(catalog.GAMMA_ORDER3)
