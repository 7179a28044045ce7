"""Finite-dimensional unital associative algebras given by structure constants.

An algebra of dimension n over a Field is the data c[i][j][k] with
b_i * b_j = sum_k c[i][j][k] b_k, plus the coefficient vector of the unit.
Associativity on all basis triples and the two-sided unit law are checked at
construction time.  Elements are plain coefficient tuples.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (DimensionMismatch, Echelon, Field, Matrix, echelon,
                     is_zero_vector, kernel, vadd, vzero)


class AlgebraError(Exception):
    pass


class NotCentralIdempotent(AlgebraError):
    pass


@dataclass(frozen=True)
class IdealByIdempotent:
    """The ideal A*e of a central idempotent e, with a canonical basis."""

    generator: tuple
    basis: Echelon


class Algebra:

    def __init__(self, field: Field, structure, unit, basis_names=None):
        self.field = field
        self.structure = tuple(
            tuple(tuple(field.coerce(c) for c in row) for row in plane)
            for plane in structure)
        self.dim = len(self.structure)
        for plane in self.structure:
            if len(plane) != self.dim or any(len(row) != self.dim for row in plane):
                raise DimensionMismatch("structure constants are not dim^3")
        self.unit = self.element(unit)
        if basis_names is None:
            basis_names = tuple("b%d" % i for i in range(self.dim))
        self.basis_names = tuple(basis_names)
        if len(self.basis_names) != self.dim:
            raise DimensionMismatch("basis name count mismatch")
        self._ideals: dict = {}
        self._center: tuple | None = None
        self._check_laws()

    @classmethod
    def diagonal(cls, field: Field, n: int, basis_names=None) -> "Algebra":
        """k^n with pairwise orthogonal idempotent basis vectors summing to 1."""
        one, zero = field.one, field.zero
        structure = [[[one if i == j == k else zero for k in range(n)]
                      for j in range(n)] for i in range(n)]
        return cls(field, structure, [one] * n, basis_names)

    def _check_laws(self) -> None:
        basis = [self.basis_vector(i) for i in range(self.dim)]
        for i, bi in enumerate(basis):
            if self.multiply(self.unit, bi) != bi or self.multiply(bi, self.unit) != bi:
                raise AlgebraError("declared unit is not a two-sided identity")
        for i, bi in enumerate(basis):
            for j, bj in enumerate(basis):
                ij = self.multiply(bi, bj)
                for k, bk in enumerate(basis):
                    if self.multiply(ij, bk) != self.multiply(bi, self.multiply(bj, bk)):
                        raise AlgebraError(
                            "multiplication not associative at basis triple "
                            "(%d, %d, %d)" % (i, j, k))

    # -- elements ---------------------------------------------------------

    def element(self, coeffs) -> tuple:
        v = tuple(self.field.coerce(c) for c in coeffs)
        if len(v) != self.dim:
            raise DimensionMismatch("element length %d != dim %d" % (len(v), self.dim))
        return v

    def basis_vector(self, i: int) -> tuple:
        return tuple(self.field.one if j == i else self.field.zero
                     for j in range(self.dim))

    def zero(self) -> tuple:
        return vzero(self.field, self.dim)

    def from_named(self, parts: dict) -> tuple:
        """Element from {basis_name: coefficient}."""
        idx = {n: i for i, n in enumerate(self.basis_names)}
        out = [self.field.zero] * self.dim
        for name, c in parts.items():
            out[idx[name]] = self.field.coerce(c)
        return tuple(out)

    # -- multiplication ----------------------------------------------------

    def multiply(self, x, y) -> tuple:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("element does not match algebra dimension")
        zero = self.field.zero
        out = [zero] * self.dim
        for i, xi in enumerate(x):
            if xi == zero:
                continue
            plane = self.structure[i]
            for j, yj in enumerate(y):
                if yj == zero:
                    continue
                c = xi * yj
                row = plane[j]
                for k in range(self.dim):
                    if row[k] != zero:
                        out[k] = out[k] + c * row[k]
        return tuple(out)

    def left_mul_matrix(self, x) -> Matrix:
        """Matrix of y -> x*y on coefficient columns."""
        cols = [self.multiply(x, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix.from_cols(self.field, cols)

    def right_mul_matrix(self, x) -> Matrix:
        """Matrix of y -> y*x on coefficient columns."""
        cols = [self.multiply(self.basis_vector(j), x) for j in range(self.dim)]
        return Matrix.from_cols(self.field, cols)

    def commutes_with_all(self, x) -> bool:
        return all(self.multiply(x, self.basis_vector(i)) ==
                   self.multiply(self.basis_vector(i), x) for i in range(self.dim))

    # -- center, idempotents, ideals ----------------------------------------

    def center_basis(self) -> tuple:
        """Canonical basis of {x : x*b == b*x for every basis element b}."""
        if self._center is None:
            rows = []
            for i in range(self.dim):
                b = self.basis_vector(i)
                delta = self.left_mul_matrix(b) - self.right_mul_matrix(b)
                rows.extend(delta.data)
            m = Matrix(self.field, rows, ncols=self.dim)
            self._center = kernel(m)
        return self._center

    def is_central_idempotent(self, e) -> bool:
        e = self.element(e)
        return self.multiply(e, e) == e and self.commutes_with_all(e)

    def ideal_basis(self, e) -> IdealByIdempotent:
        """Canonical basis of A*e for a central idempotent e."""
        e = self.element(e)
        key = e
        if key not in self._ideals:
            if not self.is_central_idempotent(e):
                raise NotCentralIdempotent("%r is not a central idempotent" % (e,))
            images = [self.multiply(self.basis_vector(i), e) for i in range(self.dim)]
            self._ideals[key] = IdealByIdempotent(e, echelon(self.field, images, self.dim))
        return self._ideals[key]

    def check_object_decomposition(self, idems) -> bool:
        """True iff the given central idempotents are orthogonal and sum to 1."""
        total = self.zero()
        idems = [self.element(e) for e in idems]
        for e in idems:
            if not self.is_central_idempotent(e):
                return False
        for a in range(len(idems)):
            for b in range(len(idems)):
                if a != b and not is_zero_vector(
                        self.field, self.multiply(idems[a], idems[b])):
                    return False
            total = vadd(total, idems[a])
        return total == self.unit

    # -- subalgebras on idempotents ------------------------------------------

    def subalgebra(self, e) -> tuple:
        """The unital algebra A*e in its canonical ideal basis.

        Returns (sub, basis) where `basis` is the Echelon of A*e inside this
        algebra; coordinates move through basis.coords / basis.combine.
        """
        ideal = self.ideal_basis(e)
        basis = ideal.basis
        structure = []
        for u in basis.rows:
            plane = []
            for w in basis.rows:
                plane.append(basis.coords(self.multiply(u, w)))
            structure.append(plane)
        names = tuple("u%d" % i for i in range(basis.dim))
        sub = Algebra(self.field, structure, basis.coords(ideal.generator), names)
        return sub, basis
