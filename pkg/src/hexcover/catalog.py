"""The concrete geometry this package is about, assembled once.

The product abelian surface is C^2 modulo the self-product of the
hexagonal lattice; four elliptic curves through the origin sum to a
branch divisor whose bundle is not 2-divisible there.  The cover surface
is the quotient by an index-2 sublattice on which the pulled-back bundle
acquires sixteen square roots.  Everything downstream (torsion analysis,
symmetry action, orbit count) consumes the objects defined here.
"""

from __future__ import annotations

from fractions import Fraction

from .appell_humbert import (
    HermitianForm,
    LineBundleClass,
    pullback_hom,
    square_roots,
    tensor,
)
from .eisenstein import EisRat, ZETA, mat, mat_identity
from .lattice import AmbientVector, ComplexLine, LatticeBasis

# --- lattices ---------------------------------------------------------------

# Ordered basis (l1, l2, u1, u2) with l1 = zeta*u1, l2 = zeta*u2.
PRODUCT_LATTICE = LatticeBasis.from_rows(
    [(0, 1, 0, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 0, 1, 0)])

# Index-2 sublattice on which the branch bundle becomes 2-divisible,
# ordered basis (u1, l1+u2, l2+u2, 2*u2).
COVER_LATTICE = LatticeBasis.from_rows(
    [(1, 0, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1), (0, 0, 2, 0)])

# Period lattice of the second complex factor, carrying the genus-1
# theta bundle; ordered basis (u2, zeta*u2).
GENUS1_LATTICE = LatticeBasis.from_rows([(0, 0, 1, 0), (0, 0, 0, 1)])

# --- the four elliptic curves ----------------------------------------------

ONE = EisRat(1)

# Complex tangent lines of the curves in the standard frame (u1, u2).
CURVE_LINES = (
    ComplexLine((ONE, EisRat(0))),
    ComplexLine((EisRat(0), ONE)),
    ComplexLine((ONE, ONE)),
    ComplexLine((ONE, ZETA)),
)

# Published rank-2 period lattices of the curves inside the product
# lattice: span{l1, u1}, span{l2, u2}, span{l1+l2, u1+u2},
# span{l1+l2-u2, l2+u1}.
CURVE_LATTICES = (
    LatticeBasis.from_rows([(0, 1, 0, 0), (1, 0, 0, 0)]),
    LatticeBasis.from_rows([(0, 0, 0, 1), (0, 0, 1, 0)]),
    LatticeBasis.from_rows([(0, 1, 0, 1), (1, 0, 1, 0)]),
    LatticeBasis.from_rows([(0, 1, -1, 1), (1, 0, 0, 1)]),
)

# Linear forms cutting out the curves, written as analytic maps from C^2
# into the second factor: (z1, z2) -> (0, F_k(z1, z2)) for
# F_k = z2, z1, z1 - z2, zeta*z1 - z2.
CURVE_MAPS = (
    mat([[0, 0], [0, 1]]),
    mat([[0, 0], [1, 0]]),
    mat([[0, 0], [1, -1]]),
    mat([[0, 0], [ZETA, -1]]),
)

# --- bundles ----------------------------------------------------------------

# Theta bundle of the second-factor curve at the origin: degenerate form
# with semicharacter -1 on both generators.
GENUS1_THETA = LineBundleClass.build(
    HermitianForm([[0, 0], [0, 2]]), GENUS1_LATTICE,
    (Fraction(1, 2), Fraction(1, 2)))

# Bundles of the four curves on the product surface, by pullback.
CURVE_BUNDLES = tuple(
    pullback_hom(GENUS1_THETA, f, PRODUCT_LATTICE) for f in CURVE_MAPS)

# Their published hermitian matrices, for cross-checking.
CURVE_FORMS = (
    HermitianForm([[0, 0], [0, 2]]),
    HermitianForm([[2, 0], [0, 0]]),
    HermitianForm([[2, -2], [-2, 2]]),
    HermitianForm([[EisRat(2), EisRat(0, -2)], [EisRat(-2, 2), EisRat(2)]]),
)
SUM_FORM = HermitianForm(
    [[EisRat(6), EisRat(-2, -2)], [EisRat(-4, 2), EisRat(6)]])

# Principal polarization of product type on the product lattice.
PRINCIPAL_FORM = HermitianForm([[2, 0], [0, 2]])

# Branch bundle on the product surface and its pullback to the cover.
BRANCH_PRODUCT = tensor(tensor(CURVE_BUNDLES[0], CURVE_BUNDLES[1]),
                        tensor(CURVE_BUNDLES[2], CURVE_BUNDLES[3]))
BRANCH_COVER = pullback_hom(BRANCH_PRODUCT, mat_identity(2), COVER_LATTICE)

# The sixteen square roots of the cover branch bundle, in canonical order.
SQUARE_ROOT_BUNDLES = tuple(square_roots(BRANCH_COVER))

# --- symmetries -------------------------------------------------------------

# Analytic matrices in the standard frame (u1, u2).
ORDER4_GEN = mat([[ZETA, -1], [ZETA, -ZETA]])
ORDER6_GEN = mat([[0, ZETA - 1], [1 - ZETA, ZETA - 1]])
GAMMA_ORDER3 = mat([[-ZETA, 1], [0, 1]])

# Anti-holomorphic involution v -> SIGMA_LINEAR . conj(v).
SIGMA_LINEAR = mat([[0, ZETA - 1], [ZETA - 1, 0]])

# Base change from the cover frame (w1, w2) = (u1, zeta*u1 + u2) to the
# standard frame, and the two generators written in the cover frame.
FRAME_SHEAR = mat([[1, ZETA], [0, 1]])
TILTED_ORDER4 = mat([[1, 2 * ZETA - 2], [ZETA, -1]])
TILTED_ORDER6 = mat([[-1, 0], [1 - ZETA, ZETA]])

# On the cover surface the branch divisor has two quadruple points: the
# origin and this representative of the kernel of the degree-2 isogeny
# back to the product surface, zeta*u1 (a 2-torsion point of the cover).
BRANCH_BASE_POINT = AmbientVector((0, 1, 0, 0))
