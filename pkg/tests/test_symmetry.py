import itertools
import random
from fractions import Fraction

import pytest

from hexcover import catalog
from hexcover.eisenstein import EisRat, is_unit, det2, mat, mat_conj, mat_mul, mat_scale
from hexcover.lattice import AmbientVector
from hexcover.permgroup import PermGroup, Permutation, commutator
from hexcover.symmetry import (
    ANTIHOLO_REFLECTION,
    AffineSymmetry,
    BASE_POINT_SWAP,
    DegenerateQuadruple,
    NEGATION,
    NotDivisorPreserving,
    NotLatticePreserving,
    ORDER4_SYMMETRY,
    ORDER6_SYMMETRY,
    PRODUCT_ORDER3,
    ProjectivePoint,
    RootNotFound,
    TILTED_ORDER4_SYMMETRY,
    TILTED_ORDER6_SYMMETRY,
    TILTED_TANGENTS,
    action_on_square_roots,
    cross_ratio,
    gamma_action_on_sigma,
    maps_equal,
    preserves_divisor,
    pull_back,
    rational_rep,
    search_generators,
    tangent_line_permutation,
    verify_presentation,
)
from hexcover.appell_humbert import translate

import golden


ROOTS = list(catalog.SQUARE_ROOT_BUNDLES)


def eis_matrix(pairs):
    return mat([[EisRat(*entry) for entry in row] for row in pairs])


def perm_of(cycles):
    return Permutation.from_cycles(cycles, 16)


def test_projective_point_equality_is_scale_invariant():
    zeta = EisRat(0, 1)
    p = ProjectivePoint(1, zeta)
    q = ProjectivePoint(zeta, zeta * zeta)
    assert p == q and hash(p) == hash(q)
    assert p != ProjectivePoint(1, 0)
    with pytest.raises(ValueError):
        ProjectivePoint(0, 0)


def test_affine_symmetry_validation():
    with pytest.raises(ValueError):
        AffineSymmetry([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        AffineSymmetry([[1, 0, 0], [0, 1, 0]])


def test_compose_apply_consistency():
    rng = random.Random(2024)
    pool = [ORDER4_SYMMETRY, ORDER6_SYMMETRY, NEGATION, BASE_POINT_SWAP,
            ANTIHOLO_REFLECTION, AffineSymmetry.identity()]
    for _ in range(40):
        g = rng.choice(pool)
        h = rng.choice(pool)
        v = AmbientVector([Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                           for _ in range(4)])
        assert g.compose(h).apply(v) == g.apply(h.apply(v))
        assert g.inverse().apply(g.apply(v)) == v


def test_anti_flag_composition():
    anti2 = ANTIHOLO_REFLECTION.compose(ANTIHOLO_REFLECTION)
    assert not anti2.antiholomorphic
    assert maps_equal(anti2, AffineSymmetry.identity(), catalog.COVER_LATTICE)
    mixed = ANTIHOLO_REFLECTION.compose(ORDER4_SYMMETRY)
    assert mixed.antiholomorphic


def test_rational_rep_examples():
    got = rational_rep(ORDER4_SYMMETRY, catalog.COVER_LATTICE)
    assert got == golden.RATIONAL_REP_ORDER4
    ident = rational_rep(AffineSymmetry.identity(), catalog.COVER_LATTICE)
    assert ident == tuple(tuple(int(i == j) for j in range(4))
                          for i in range(4))
    got_sigma = rational_rep(ANTIHOLO_REFLECTION, catalog.COVER_LATTICE)
    assert got_sigma == golden.RATIONAL_REP_SIGMA


def test_rational_rep_rejects_nonpreserving():
    with pytest.raises(NotLatticePreserving):
        rational_rep(AffineSymmetry([[Fraction(1, 2), 0], [0, 1]]),
                     catalog.COVER_LATTICE)
    with pytest.raises(NotLatticePreserving):
        rational_rep(AffineSymmetry([[2, 0], [0, 1]]), catalog.COVER_LATTICE)


def test_maps_equal_up_to_lattice_translation():
    tau = BASE_POINT_SWAP
    conjugated = tau.compose(NEGATION).compose(tau.inverse())
    assert maps_equal(conjugated, NEGATION, catalog.COVER_LATTICE)
    assert not maps_equal(NEGATION, AffineSymmetry.identity(),
                          catalog.COVER_LATTICE)
    assert not maps_equal(BASE_POINT_SWAP, AffineSymmetry.identity(),
                          catalog.COVER_LATTICE)


def test_preserves_divisor_on_generators():
    for g in (ORDER4_SYMMETRY, ORDER6_SYMMETRY, BASE_POINT_SWAP,
              ANTIHOLO_REFLECTION, NEGATION):
        assert preserves_divisor(g)


def test_preserves_divisor_rejects_generic_torsion_translation():
    half = AmbientVector([Fraction(c, 2)
                          for c in catalog.COVER_LATTICE.vectors[2].coordinates])
    g = AffineSymmetry([[1, 0], [0, 1]], translation=half)
    assert not preserves_divisor(g)
    # translating by a full lattice vector is fine
    g0 = AffineSymmetry([[1, 0], [0, 1]],
                        translation=catalog.COVER_LATTICE.vectors[2])
    assert preserves_divisor(g0)


def test_preserves_divisor_rejects_line_breaking_map():
    shear2 = AffineSymmetry(mat_mul(catalog.FRAME_SHEAR, catalog.FRAME_SHEAR))
    rational_rep(shear2, catalog.COVER_LATTICE)  # lattice is preserved
    assert not preserves_divisor(shear2)
    with pytest.raises(NotDivisorPreserving):
        tangent_line_permutation(shear2)


def test_tangent_line_permutations():
    assert tangent_line_permutation(ORDER4_SYMMETRY).cycles() == \
        golden.TANGENT_PERM_ORDER4
    assert tangent_line_permutation(ORDER6_SYMMETRY).cycles() == \
        golden.TANGENT_PERM_ORDER6
    assert tangent_line_permutation(ANTIHOLO_REFLECTION).cycles() == \
        golden.TANGENT_PERM_SIGMA
    assert tangent_line_permutation(NEGATION) == Permutation.identity(4)


def test_tilted_tangent_points_match_published():
    published = [ProjectivePoint(EisRat(*num), EisRat(*den))
                 for num, den in golden.TANGENT_POINTS_COVER_FRAME]
    assert list(TILTED_TANGENTS) == published


def test_cross_ratio_of_tangent_quadruple():
    value = cross_ratio(*TILTED_TANGENTS)
    assert value == EisRat(*golden.CROSS_RATIO)
    # the value is the inverse of the primitive sixth root of unity
    assert EisRat(0, 1) * value == EisRat(1)
    # same quadruple written in the standard frame
    ambient = [ProjectivePoint(*line.direction) for line in catalog.CURVE_LINES]
    assert cross_ratio(*ambient) == value


def test_cross_ratio_convention_anchor():
    zero = ProjectivePoint(0, 1)
    one = ProjectivePoint(1, 1)
    inf = ProjectivePoint(1, 0)
    x = ProjectivePoint(3, 1)
    assert cross_ratio(zero, one, inf, x) == EisRat(Fraction(2, 3))


def test_cross_ratio_klein_invariance():
    points = (ProjectivePoint(0, 1), ProjectivePoint(1, 1),
              ProjectivePoint(1, 0), ProjectivePoint(5, 1))
    base = cross_ratio(*points)
    klein = {(), ((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))}
    for images in itertools.permutations(range(4)):
        perm = Permutation(i + 1 for i in images)
        rearranged = [points[perm(k) - 1] for k in range(1, 5)]
        value = cross_ratio(*rearranged)
        if perm.cycles() in klein:
            assert value == base
        else:
            assert value != base


def test_cross_ratio_degenerate():
    p = ProjectivePoint(1, 1)
    with pytest.raises(DegenerateQuadruple):
        cross_ratio(p, p, ProjectivePoint(1, 0), ProjectivePoint(0, 1))


def test_search_recovers_tilted_generators():
    found = search_generators(3)
    assert len(found) == 4
    matrices = {g.linear for g in found}
    want = {
        TILTED_ORDER4_SYMMETRY.linear,
        mat_scale(-1, TILTED_ORDER4_SYMMETRY.linear),
        TILTED_ORDER6_SYMMETRY.linear,
        mat_scale(-1, TILTED_ORDER6_SYMMETRY.linear),
    }
    assert matrices == want
    for g in found:
        assert not g.antiholomorphic
        assert is_unit(det2(g.linear))
    # the same four already appear at the minimal bound
    assert {g.linear for g in search_generators(2)} == want
    with pytest.raises(ValueError):
        search_generators(1)


def test_shear_conjugation_recovers_standard_generators():
    shear = catalog.FRAME_SHEAR
    from hexcover.eisenstein import inv2
    unshear = inv2(shear)
    assert mat_mul(mat_mul(shear, TILTED_ORDER4_SYMMETRY.linear), unshear) \
        == catalog.ORDER4_GEN
    assert mat_mul(mat_mul(shear, TILTED_ORDER6_SYMMETRY.linear), unshear) \
        == catalog.ORDER6_GEN
    # the anti-holomorphic reflection moves to the sheared frame the same way
    tilted_refl = mat_mul(mat_mul(unshear, catalog.SIGMA_LINEAR),
                          mat_conj(shear))
    assert tilted_refl == eis_matrix(golden.SIGMA_LINEAR_COVER_FRAME)


def test_presentation_relations():
    assert verify_presentation(ORDER4_SYMMETRY, ORDER6_SYMMETRY)
    assert not verify_presentation(AffineSymmetry.identity(), ORDER6_SYMMETRY)


def test_negated_generator():
    # squares are unaffected by the sign, but the triple product flips:
    # (-g . g')^3 = -(g g')^3 = +1, so the literal relation list fails even
    # though the two elements generate the same order-24 group
    negated = AffineSymmetry(mat_scale(-1, catalog.ORDER4_GEN))
    assert maps_equal(negated.compose(negated), NEGATION,
                      catalog.COVER_LATTICE)
    prod = negated.compose(ORDER6_SYMMETRY)
    triple = prod.compose(prod).compose(prod)
    assert maps_equal(triple, AffineSymmetry.identity(),
                      catalog.COVER_LATTICE)
    assert not verify_presentation(negated, ORDER6_SYMMETRY)
    pneg = action_on_square_roots(negated, ROOTS)
    pg3 = action_on_square_roots(ORDER6_SYMMETRY, ROOTS)
    pg2 = action_on_square_roots(ORDER4_SYMMETRY, ROOTS)
    assert PermGroup([pneg, pg3]).elements() == \
        PermGroup([pg2, pg3]).elements()


def test_action_matches_published_cycles():
    assert action_on_square_roots(ORDER4_SYMMETRY, ROOTS) == \
        perm_of(golden.PERM_ORDER4)
    assert action_on_square_roots(ORDER6_SYMMETRY, ROOTS) == \
        perm_of(golden.PERM_ORDER6)
    assert action_on_square_roots(ANTIHOLO_REFLECTION, ROOTS) == \
        perm_of(golden.PERM_SIGMA)
    neg = action_on_square_roots(NEGATION, ROOTS)
    tau = action_on_square_roots(BASE_POINT_SWAP, ROOTS)
    assert neg == tau == perm_of(golden.PERM_NEGATION)


def test_action_is_a_homomorphism():
    pairs = [(ORDER4_SYMMETRY, ORDER6_SYMMETRY),
             (ORDER6_SYMMETRY, ANTIHOLO_REFLECTION),
             (ANTIHOLO_REFLECTION, BASE_POINT_SWAP),
             (ANTIHOLO_REFLECTION, ANTIHOLO_REFLECTION)]
    for g, h in pairs:
        lhs = action_on_square_roots(g.compose(h), ROOTS)
        rhs = action_on_square_roots(g, ROOTS) * action_on_square_roots(h, ROOTS)
        assert lhs == rhs


def test_commutator_square_is_negation():
    pg2 = action_on_square_roots(ORDER4_SYMMETRY, ROOTS)
    pg3 = action_on_square_roots(ORDER6_SYMMETRY, ROOTS)
    c = commutator(pg2, pg3)
    assert c * c == perm_of(golden.PERM_NEGATION)
    # and at the level of maps on the surface
    g2, g3 = ORDER4_SYMMETRY, ORDER6_SYMMETRY
    comm = g2.compose(g3).compose(g2.inverse()).compose(g3.inverse())
    assert maps_equal(comm.compose(comm), NEGATION, catalog.COVER_LATTICE)


def test_action_errors():
    shear2 = AffineSymmetry(mat_mul(catalog.FRAME_SHEAR, catalog.FRAME_SHEAR))
    with pytest.raises(NotDivisorPreserving):
        action_on_square_roots(shear2, ROOTS)
    broken = list(ROOTS)
    off = AmbientVector((Fraction(1, 3), 0, 0, 0))
    broken[6] = translate(broken[6], off)
    with pytest.raises(RootNotFound):
        action_on_square_roots(BASE_POINT_SWAP, broken)


def test_holomorphic_group_structure():
    pg2 = action_on_square_roots(ORDER4_SYMMETRY, ROOTS)
    pg3 = action_on_square_roots(ORDER6_SYMMETRY, ROOTS)
    group = PermGroup([pg2, pg3])
    assert group.order == golden.HOLO_GROUP_ORDER
    fp = group.fingerprint()
    assert fp.name == "SL(2,3)"
    order2 = [p for p in group.elements() if p.order() == 2]
    assert order2 == [perm_of(golden.PERM_NEGATION)]
    orbits = group.orbits()
    assert {frozenset(o) for o in orbits} == set(golden.HOLO_ORBIT_PARTITION)


def test_full_group_structure():
    pg2 = action_on_square_roots(ORDER4_SYMMETRY, ROOTS)
    pg3 = action_on_square_roots(ORDER6_SYMMETRY, ROOTS)
    psigma = action_on_square_roots(ANTIHOLO_REFLECTION, ROOTS)
    group = PermGroup([pg2, pg3, psigma])
    assert group.order == golden.FULL_GROUP_ORDER
    assert group.fingerprint().name == "GL(2,3)"
    orbits = group.orbits()
    assert {frozenset(o) for o in orbits} == set(golden.FULL_ORBIT_PARTITION)


def test_pull_back_translation_only():
    moved = pull_back(BASE_POINT_SWAP, ROOTS[0])
    assert moved == ROOTS[6]


def test_gamma_character_cycle():
    got = gamma_action_on_sigma()
    assert got == Permutation.from_cycles([golden.GAMMA_CHARACTER_CYCLE], 3)
    assert got.order() == 3


def test_gamma_lattice_images():
    rep = rational_rep(PRODUCT_ORDER3, catalog.PRODUCT_LATTICE)
    # columns: images of (l1, l2, u1, u2) are e1-l1, l1+l2, -l1, e1+e2
    assert rep == ((-1, 1, -1, 0),
                   (0, 1, 0, 0),
                   (1, 0, 0, 1),
                   (0, 0, 0, 1))
    cubed = PRODUCT_ORDER3.compose(PRODUCT_ORDER3).compose(PRODUCT_ORDER3)
    assert maps_equal(cubed, AffineSymmetry.identity(),
                      catalog.PRODUCT_LATTICE)
    assert tangent_line_permutation is not None  # gamma checked internally
