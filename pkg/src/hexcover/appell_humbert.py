"""Line bundles on complex tori as hermitian forms plus semicharacters.

A bundle class is a pair (h, chi): a hermitian form h on C^2 whose
imaginary part is integral on the period lattice, and a semicharacter chi
satisfying chi(x + y) = chi(x) chi(y) exp(pi*i*Im h(x, y)).  The whole
calculus (tensor, pullback along holomorphic and anti-holomorphic maps,
translation, square roots) acts on that data.

Conventions:

* Hermitian matrices carry a global 1/sqrt(3) scale: the stored 2x2
  matrix M gives h(v, w) = t(v).M.conj(w) / sqrt(3).  With this scale
  every matrix that occurs here has entries in Z[zeta].
* Semicharacter values are exponents q in Q/Z (value exp(2*pi*i*q)),
  stored reduced into [0, 1).
* Genus-1 bundles are carried on rank-2 lattices inside C^2 with a
  degenerate 2x2 form, so a single matrix shape serves everywhere.
* Pfaffians are taken in the ambient orientation fixed by
  lattice.orientation, which makes ample classes positive.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .eisenstein import (
    EisMat,
    EisRat,
    ReIm,
    mat,
    mat_add,
    mat_apply,
    mat_conj,
    mat_mul,
    mat_transpose,
)
from .lattice import (
    AmbientVector,
    LatticeBasis,
    RankMismatch,
    coords_in,
    orientation,
)


class LatticeMismatch(ValueError):
    """Operands live on different lattices."""


class NotLatticeMap(ValueError):
    """The analytic map does not carry the source lattice into the target."""


class NotInLattice(ValueError):
    """Evaluation point is not a lattice vector."""


class NotIntegral(ValueError):
    """The alternating form is not integer-valued on the lattice."""


# The sixteen order-2 characters of a rank-4 lattice in the fixed published
# ordering, as sign tuples on the ordered basis; index 0 is trivial.  This
# ordering is what makes square-root labels and the induced permutations
# reproducible.
ORDER_TWO_SIGN_PATTERNS: Tuple[Tuple[int, int, int, int], ...] = (
    (1, 1, 1, 1),
    (-1, -1, 1, -1),
    (1, -1, -1, 1),
    (-1, 1, -1, -1),
    (1, 1, -1, 1),
    (-1, 1, 1, 1),
    (-1, 1, -1, 1),
    (1, 1, 1, -1),
    (1, -1, 1, -1),
    (-1, 1, 1, -1),
    (1, 1, -1, -1),
    (-1, -1, -1, 1),
    (1, -1, 1, 1),
    (1, -1, -1, -1),
    (-1, -1, 1, 1),
    (-1, -1, -1, -1),
)


class HermitianForm:
    """Conjugate-symmetric 2x2 matrix over Q(zeta), scaled by 1/sqrt(3)."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Sequence[Sequence[object]]) -> None:
        m = mat(matrix)
        if len(m) != 2 or any(len(r) != 2 for r in m):
            raise ValueError("hermitian forms here are 2x2")
        if mat_conj(mat_transpose(m)) != m:
            raise ValueError("matrix is not conjugate-symmetric")
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("HermitianForm is immutable")

    @classmethod
    def zero(cls) -> "HermitianForm":
        return cls(((0, 0), (0, 0)))

    def value(self, v: AmbientVector, w: AmbientVector) -> ReIm:
        z = v.to_pair()
        y = w.to_pair()
        acc = EisRat(0)
        for i in range(2):
            for j in range(2):
                acc = acc + z[i] * self.matrix[i][j] * y[j].conjugate()
        return ReIm.from_scaled(acc)

    def im_value(self, v: AmbientVector, w: AmbientVector) -> Fraction:
        return self.value(v, w).im

    def scaled(self, c: Fraction) -> "HermitianForm":
        c = Fraction(c)
        return HermitianForm(tuple(tuple(EisRat(x.a * c, x.b * c) for x in row)
                                   for row in self.matrix))

    def __add__(self, other: "HermitianForm") -> "HermitianForm":
        if not isinstance(other, HermitianForm):
            return NotImplemented
        return HermitianForm(mat_add(self.matrix, other.matrix))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HermitianForm):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"HermitianForm({[[str(x) for x in row] for row in self.matrix]})"


class AltFormOnLattice:
    """Values Im h(b_i, b_j) of a hermitian form on an ordered basis."""

    __slots__ = ("lattice", "matrix")

    def __init__(self, lattice: LatticeBasis,
                 matrix: Sequence[Sequence[Fraction]]) -> None:
        m = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        n = lattice.rank
        if len(m) != n or any(len(r) != n for r in m):
            raise ValueError("matrix shape must match the lattice rank")
        for i in range(n):
            for j in range(n):
                if m[i][j] != -m[j][i]:
                    raise ValueError("alternating matrix must be skew")
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("AltFormOnLattice is immutable")

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.matrix for x in row)

    def value_on_coords(self, n: Sequence[int], m: Sequence[int]) -> Fraction:
        acc = Fraction(0)
        for i, ni in enumerate(n):
            if not ni:
                continue
            for j, mj in enumerate(m):
                if mj:
                    acc += ni * self.matrix[i][j] * mj
        return acc

    def upper_triangle(self) -> Tuple[Fraction, ...]:
        n = self.lattice.rank
        return tuple(self.matrix[i][j]
                     for i in range(n) for j in range(i + 1, n))

    def scaled(self, c: Fraction) -> "AltFormOnLattice":
        c = Fraction(c)
        return AltFormOnLattice(self.lattice,
                                tuple(tuple(x * c for x in row)
                                      for row in self.matrix))

    def __add__(self, other: "AltFormOnLattice") -> "AltFormOnLattice":
        if not isinstance(other, AltFormOnLattice):
            return NotImplemented
        if self.lattice != other.lattice:
            raise LatticeMismatch("alternating forms on different lattices")
        return AltFormOnLattice(self.lattice,
                                tuple(tuple(a + b for a, b in zip(ra, rb))
                                      for ra, rb in zip(self.matrix,
                                                        other.matrix)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AltFormOnLattice):
            return NotImplemented
        return self.lattice == other.lattice and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash((self.lattice, self.matrix))


def im_on_lattice(h: HermitianForm, lattice: LatticeBasis) -> AltFormOnLattice:
    vs = lattice.vectors
    matrix = tuple(tuple(h.im_value(vi, vj) for vj in vs) for vi in vs)
    return AltFormOnLattice(lattice, matrix)


def pfaffian(e: AltFormOnLattice) -> Fraction:
    """Oriented pfaffian of a rank-4 alternating form."""
    if e.lattice.rank != 4:
        raise RankMismatch("pfaffian needs a rank-4 lattice")
    m = e.matrix
    raw = m[0][1] * m[2][3] - m[0][2] * m[1][3] + m[0][3] * m[1][2]
    return orientation(e.lattice) * raw


def intersection_number(h1: HermitianForm, h2: HermitianForm,
                        lattice: LatticeBasis) -> int:
    e1 = im_on_lattice(h1, lattice)
    e2 = im_on_lattice(h2, lattice)
    if not e1.is_integral() or not e2.is_integral():
        raise NotIntegral("both forms must be integral on the lattice")
    total = pfaffian(im_on_lattice(h1 + h2, lattice))
    val = total - pfaffian(e1) - pfaffian(e2)
    assert val.denominator == 1
    return int(val)


class Semicharacter:
    """Function chi on a lattice with chi(x+y) = chi(x)chi(y)e^{pi i E(x,y)}.

    Stored as exponents in Q/Z on the ordered basis together with the
    alternating form E = Im h restricted to the lattice; the closed
    evaluation formula below extends the basis values to the whole
    lattice, consistently because E is integral.
    """

    __slots__ = ("lattice", "exponents", "form")

    def __init__(self, lattice: LatticeBasis, exponents: Sequence[Fraction],
                 form: AltFormOnLattice) -> None:
        if form.lattice != lattice:
            raise LatticeMismatch("semicharacter form on a different lattice")
        if not form.is_integral():
            raise NotIntegral("semicharacter needs an integral alternating form")
        exps = tuple(Fraction(q) % 1 for q in exponents)
        if len(exps) != lattice.rank:
            raise ValueError("one exponent per basis vector")
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "form", form)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Semicharacter is immutable")

    def eval_coords(self, n: Sequence[int]) -> Fraction:
        """Exponent of chi at sum(n[j] * basis[j])."""
        expo = sum((Fraction(nj) * qj for nj, qj in zip(n, self.exponents)),
                   Fraction(0))
        rank = self.lattice.rank
        for j in range(rank):
            if not n[j]:
                continue
            for k in range(j + 1, rank):
                if n[k]:
                    expo += Fraction(n[j] * n[k], 2) * self.form.matrix[j][k]
        return expo % 1

    def eval(self, v: AmbientVector) -> Fraction:
        sol = coords_in(self.lattice, v)
        if sol is None:
            raise NotInLattice("vector outside the lattice span")
        if any(c.denominator != 1 for c in sol):
            raise NotInLattice("vector has fractional lattice coordinates")
        return self.eval_coords([int(c) for c in sol])

    def __mul__(self, other: "Semicharacter") -> "Semicharacter":
        if not isinstance(other, Semicharacter):
            return NotImplemented
        if self.lattice != other.lattice:
            raise LatticeMismatch("semicharacters on different lattices")
        exps = tuple(a + b for a, b in zip(self.exponents, other.exponents))
        return Semicharacter(self.lattice, exps, self.form + other.form)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Semicharacter):
            return NotImplemented
        return (self.lattice == other.lattice
                and self.exponents == other.exponents
                and self.form == other.form)

    def __hash__(self) -> int:
        return hash((self.lattice, self.exponents, self.form))

    def __repr__(self) -> str:
        return f"Semicharacter({[str(q) for q in self.exponents]})"


def semichar_eval(chi: Semicharacter, v: AmbientVector) -> Fraction:
    return chi.eval(v)


class LineBundleClass:
    """Pair (hermitian form, semicharacter) on a fixed lattice."""

    __slots__ = ("form", "character")

    def __init__(self, form: HermitianForm, character: Semicharacter) -> None:
        if im_on_lattice(form, character.lattice) != character.form:
            raise LatticeMismatch(
                "semicharacter form is not Im of the hermitian form")
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "character", character)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LineBundleClass is immutable")

    @classmethod
    def build(cls, form: HermitianForm, lattice: LatticeBasis,
              exponents: Sequence[Fraction]) -> "LineBundleClass":
        alt = im_on_lattice(form, lattice)
        return cls(form, Semicharacter(lattice, exponents, alt))

    @property
    def lattice(self) -> LatticeBasis:
        return self.character.lattice

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LineBundleClass):
            return NotImplemented
        return self.form == other.form and self.character == other.character

    def __hash__(self) -> int:
        return hash((self.form, self.character))

    def __repr__(self) -> str:
        return f"LineBundleClass({self.form!r}, {self.character!r})"


def tensor(l1: LineBundleClass, l2: LineBundleClass) -> LineBundleClass:
    if l1.lattice != l2.lattice:
        raise LatticeMismatch("tensor product needs a common lattice")
    return LineBundleClass(l1.form + l2.form, l1.character * l2.character)


def _push_vector(f: EisMat, v: AmbientVector, conjugate_first: bool) -> AmbientVector:
    z1, z2 = v.to_pair()
    if conjugate_first:
        z1, z2 = z1.conjugate(), z2.conjugate()
    w = mat_apply(f, (z1, z2))
    return AmbientVector.from_pair(w[0], w[1])


def pullback_hom(bundle: LineBundleClass, f: EisMat,
                 target: LatticeBasis) -> LineBundleClass:
    """Pullback along the holomorphic map with analytic matrix f, viewed
    as a map from the torus on target into the bundle's torus."""
    f = mat(f)
    m2 = mat_mul(mat_mul(mat_transpose(f), bundle.form.matrix), mat_conj(f))
    exps = []
    for b in target.vectors:
        image = _push_vector(f, b, conjugate_first=False)
        try:
            exps.append(bundle.character.eval(image))
        except NotInLattice as exc:
            raise NotLatticeMap(
                f"image of {b!r} is not in the source lattice") from exc
    return LineBundleClass.build(HermitianForm(m2), target, exps)


def pullback_antihom(bundle: LineBundleClass, s: EisMat,
                     target: LatticeBasis) -> LineBundleClass:
    """Pullback along the anti-holomorphic map v -> s . conj(v)."""
    s = mat(s)
    t = mat_mul(mat_mul(mat_transpose(s), bundle.form.matrix), mat_conj(s))
    m2 = mat_conj(t)
    exps = []
    for b in target.vectors:
        image = _push_vector(s, b, conjugate_first=True)
        try:
            exps.append(-bundle.character.eval(image))
        except NotInLattice as exc:
            raise NotLatticeMap(
                f"image of {b!r} is not in the source lattice") from exc
    return LineBundleClass.build(HermitianForm(m2), target, exps)


def translate(bundle: LineBundleClass, v: AmbientVector) -> LineBundleClass:
    """Pullback along translation by v: the form is unchanged and the
    semicharacter picks up the character exp(2*pi*i*Im h(v, .))."""
    exps = [q + bundle.form.im_value(v, b)
            for q, b in zip(bundle.character.exponents,
                            bundle.lattice.vectors)]
    return LineBundleClass(bundle.form,
                           Semicharacter(bundle.lattice, exps,
                                         bundle.character.form))


def is_symmetric(bundle: LineBundleClass) -> bool:
    return all(q in (Fraction(0), Fraction(1, 2))
               for q in bundle.character.exponents)


def symmetric_semichar_from_multiplicities(
        rank: int,
        multiplicities: Mapping[Tuple[int, ...], int]) -> Dict[Tuple[int, ...], int]:
    """Semicharacter of a symmetric divisor D from its multiplicities at
    the 2-torsion points.

    Keys of multiplicities are parity vectors of length rank; the vector
    of all zeros is the origin.  The value at a lattice vector with
    parity p is (-1) ** (m(D, 0) + m(D, p/2)); missing keys mean
    multiplicity 0.  Returns {parity: +-1} for all 2**rank classes.
    """
    zero = tuple([0] * rank)
    m0 = multiplicities.get(zero, 0)
    out: Dict[Tuple[int, ...], int] = {}
    for parity in itertools.product((0, 1), repeat=rank):
        m = m0 if parity == zero else multiplicities.get(parity, 0)
        out[parity] = -1 if (m0 + m) % 2 else 1
    return out


def square_roots(bundle: LineBundleClass) -> List[LineBundleClass]:
    """All Appell-Humbert square roots (h/2, psi) with psi**2 the bundle's
    semicharacter; empty when Im(h)/2 is not integral on the lattice.

    The order is deterministic: the first root has basis exponents in
    [0, 1/2); the rest multiply it by the nontrivial order-2 characters,
    for rank 4 in the fixed published ordering.
    """
    half_alt = bundle.character.form.scaled(Fraction(1, 2))
    if not half_alt.is_integral():
        return []
    half_form = bundle.form.scaled(Fraction(1, 2))
    base = [q / 2 for q in bundle.character.exponents]
    rank = bundle.lattice.rank
    if rank == 4:
        patterns: Sequence[Tuple[int, ...]] = ORDER_TWO_SIGN_PATTERNS
    else:
        patterns = tuple(itertools.product((1, -1), repeat=rank))
    roots = []
    for pattern in patterns:
        exps = [q + (Fraction(1, 2) if s < 0 else Fraction(0))
                for q, s in zip(base, pattern)]
        roots.append(LineBundleClass.build(half_form, bundle.lattice, exps))
    return roots
