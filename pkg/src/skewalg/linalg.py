"""Exact dense linear algebra over the rationals and over prime fields GF(p).

Everything in this module is exact: scalars are either `fractions.Fraction`
(arbitrary precision, kept in lowest terms with positive denominator by the
stdlib) or `ModP` residues.  All matrices are dense and immutable; row
reduction uses deterministic leftmost-pivot elimination so that every
downstream basis, solution set and certificate is byte-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class LinalgError(Exception):
    pass


class DimensionMismatch(LinalgError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class ModP:
    """A residue modulo a prime p.  Mixed-modulus arithmetic is an error."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _lift(self, other) -> "ModP":
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixed moduli: %d vs %d" % (self.p, other.p))
            return other
        if isinstance(other, int):
            return ModP(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ModP(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ModP(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ModP(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ModP(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        # p prime, so a^(p-2) inverts a
        return ModP(self.value * pow(other.value, self.p - 2, self.p), self.p)

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return "ModP(%d, %d)" % (self.value, self.p)

    def __str__(self):
        return str(self.value)


class Field:
    """The scalar domain: the rationals (p is None) or GF(p) for a prime p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError("modulus %r is not prime" % (p,))
        self.p = p

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def zero(self):
        return Fraction(0) if self.p is None else ModP(0, self.p)

    @property
    def one(self):
        return Fraction(1) if self.p is None else ModP(1, self.p)

    def from_int(self, n: int):
        return Fraction(n) if self.p is None else ModP(n, self.p)

    def parse(self, text):
        """Parse "3/4", "-2" or a plain int into a scalar of this field."""
        if isinstance(text, int):
            return self.from_int(text)
        if not isinstance(text, str):
            raise ValueError("cannot parse scalar from %r" % (text,))
        text = text.strip()
        if self.p is None:
            return Fraction(text)
        if "/" in text:
            num, den = text.split("/", 1)
            return ModP(int(num), self.p) / ModP(int(den), self.p)
        return ModP(int(text), self.p)

    def show(self, x) -> str:
        return str(x)

    def coerce(self, x):
        """Accept ints and same-field scalars; reject everything else."""
        if isinstance(x, int):
            return self.from_int(x)
        if self.p is None:
            if isinstance(x, Fraction):
                return x
        elif isinstance(x, ModP) and x.p == self.p:
            return x
        raise ValueError("scalar %r does not belong to %s" % (x, self))

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field.rationals()" if self.p is None else "Field.prime(%d)" % self.p

    def __str__(self):
        return "Q" if self.p is None else "GF(%d)" % self.p


# -- vectors are plain tuples of scalars -------------------------------------

def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def vzero(field: Field, n: int) -> tuple:
    return (field.zero,) * n


def is_zero_vector(field: Field, v: Sequence) -> bool:
    z = field.zero
    return all(a == z for a in v)


class Matrix:
    """An immutable dense matrix over one Field."""

    __slots__ = ("field", "nrows", "ncols", "data", "_rref", "_pivots")

    def __init__(self, field: Field, data: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(field.coerce(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise DimensionMismatch("ragged rows")
            if ncols is not None and ncols != width:
                raise DimensionMismatch("declared ncols does not match rows")
        else:
            width = 0 if ncols is None else ncols
        self.field = field
        self.nrows = len(rows)
        self.ncols = width
        self.data = rows
        self._rref = None
        self._pivots = None

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        zero = field.zero
        return cls(field, [[zero] * ncols for _ in range(nrows)])

    @classmethod
    def from_cols(cls, field: Field, cols: Sequence[Sequence]) -> "Matrix":
        if not cols:
            return cls(field, [])
        n = len(cols[0])
        return cls(field, [[cols[j][i] for j in range(len(cols))] for i in range(n)])

    def row(self, i: int) -> tuple:
        return self.data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise DimensionMismatch("vector length %d != %d columns" % (len(v), self.ncols))
        return tuple(sum((r[j] * v[j] for j in range(self.ncols)), self.field.zero)
                     for r in self.data)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionMismatch("%dx%d times %dx%d" %
                                    (self.nrows, self.ncols, other.nrows, other.ncols))
        zero = self.field.zero
        out = []
        for r in self.data:
            out.append([sum((r[k] * other.data[k][j] for k in range(self.ncols)), zero)
                        for j in range(other.ncols)])
        return Matrix(self.field, out)

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("shape mismatch in addition")
        return Matrix(self.field, [vadd(a, b) for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("shape mismatch in subtraction")
        return Matrix(self.field, [vsub(a, b) for a, b in zip(self.data, other.data)])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.data == other.data)

    def __hash__(self):
        return hash((self.field, self.data))

    def scale(self, c) -> "Matrix":
        return Matrix(self.field, [vscale(c, r) for r in self.data])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [self.col(j) for j in range(self.ncols)])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise DimensionMismatch("vstack column mismatch")
        return Matrix(self.field, self.data + other.data)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise DimensionMismatch("hstack row mismatch")
        return Matrix(self.field, [a + b for a, b in zip(self.data, other.data)])

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(all(x == z for x in r) for r in self.data)

    def rref(self) -> "Matrix":
        """Reduced row echelon form, same shape, row space preserved."""
        if self._rref is None:
            ech = Echelonizer(self.field, self.ncols)
            for r in self.data:
                ech.insert(r)
            rows = list(ech.rows)
            pad = vzero(self.field, self.ncols)
            while len(rows) < self.nrows:
                rows.append(pad)
            self._rref = Matrix(self.field, rows)
            self._pivots = tuple(ech.pivots)
        return self._rref

    def pivots(self) -> tuple:
        self.rref()
        return self._pivots

    def rank(self) -> int:
        return len(self.pivots())

    def kernel_basis(self) -> tuple:
        return kernel(self)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise DimensionMismatch("only square matrices invert")
        n = self.nrows
        red = self.hstack(Matrix.identity(self.field, n)).rref()
        if red.pivots()[:n] != tuple(range(n)) or len(red.pivots()) != n:
            raise LinalgError("matrix is singular")
        return Matrix(self.field, [r[n:] for r in red.data])

    def __repr__(self):
        return "Matrix(%s, %r)" % (self.field, [[str(x) for x in r] for r in self.data])


class Echelonizer:
    """Maintains a reduced row echelon basis under row insertion.

    Rows are fully reduced against each other (pivot entries are 1 and each
    pivot column is cleared everywhere else), and kept sorted by pivot column,
    so `rows` is always a canonical basis of the span of everything inserted.
    """

    __slots__ = ("field", "ncols", "rows", "pivots")

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: list[tuple] = []
        self.pivots: list[int] = []

    def reduce(self, row: Sequence) -> list:
        out = list(row)
        zero = self.field.zero
        for r, p in zip(self.rows, self.pivots):
            c = out[p]
            if c != zero:
                for j in range(p, self.ncols):
                    out[j] = out[j] - c * r[j]
        return out

    def insert(self, row: Sequence) -> bool:
        """Insert a row; returns True if it enlarged the span."""
        if len(row) != self.ncols:
            raise DimensionMismatch("row width %d != %d" % (len(row), self.ncols))
        out = self.reduce(row)
        zero = self.field.zero
        piv = next((j for j in range(self.ncols) if out[j] != zero), None)
        if piv is None:
            return False
        inv = self.field.one / out[piv]
        new = tuple(x * inv for x in out)
        # clear the new pivot column in the old rows
        for k, r in enumerate(self.rows):
            c = r[piv]
            if c != zero:
                self.rows[k] = tuple(a - c * b for a, b in zip(r, new))
        at = next((k for k, p in enumerate(self.pivots) if p > piv), len(self.pivots))
        self.rows.insert(at, new)
        self.pivots.insert(at, piv)
        return True

    def contains(self, row: Sequence) -> bool:
        zero = self.field.zero
        return all(x == zero for x in self.reduce(row))

    def to_echelon(self) -> "Echelon":
        return Echelon(self.field, self.ncols, tuple(self.rows), tuple(self.pivots))


@dataclass(frozen=True)
class Echelon:
    """A canonical basis of a subspace: the nonzero rows of a reduced REF."""

    field: Field
    ncols: int
    rows: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence) -> tuple:
        """Residual of v after eliminating all pivot coordinates."""
        out = list(v)
        zero = self.field.zero
        for r, p in zip(self.rows, self.pivots):
            c = out[p]
            if c != zero:
                for j in range(self.ncols):
                    out[j] = out[j] - c * r[j]
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        return is_zero_vector(self.field, self.reduce(v))

    def coords(self, v: Sequence) -> tuple:
        """Coordinates of v in this basis (pivot entries); v must lie in the span."""
        c = tuple(v[p] for p in self.pivots)
        if not self.contains(v):
            raise LinalgError("vector is not in the subspace")
        return c

    def combine(self, coeffs: Sequence) -> tuple:
        if len(coeffs) != len(self.rows):
            raise DimensionMismatch("coefficient count mismatch")
        out = [self.field.zero] * self.ncols
        for c, r in zip(coeffs, self.rows):
            if c != self.field.zero:
                for j in range(self.ncols):
                    out[j] = out[j] + c * r[j]
        return tuple(out)

    def __eq__(self, other):
        return (isinstance(other, Echelon) and self.field == other.field
                and self.ncols == other.ncols and self.rows == other.rows)


def echelon(field: Field, vectors: Iterable[Sequence], ncols: int) -> Echelon:
    ech = Echelonizer(field, ncols)
    for v in vectors:
        ech.insert(v)
    return ech.to_echelon()


def intersect(a: Echelon, b: Echelon) -> Echelon:
    """Canonical basis of the intersection of two row spaces."""
    if a.ncols != b.ncols or a.field != b.field:
        raise DimensionMismatch("incompatible subspaces")
    if a.dim == 0 or b.dim == 0:
        return echelon(a.field, [], a.ncols)
    # v = x*A = y*B  <=>  (x, y) in ker [A^T | -B^T]
    cols = [list(r) for r in a.rows] + [[-x for x in r] for r in b.rows]
    m = Matrix.from_cols(a.field, cols)
    vecs = [a.combine(k[: a.dim]) for k in kernel(m)]
    return echelon(a.field, vecs, a.ncols)


def rref(m: Matrix) -> Matrix:
    """Reduced row echelon form of m (same shape)."""
    return m.rref()


def kernel(m: Matrix) -> tuple:
    """Canonical basis of the null space {x : m.apply(x) == 0}."""
    red = m.rref()
    piv = set(m.pivots())
    free = [j for j in range(m.ncols) if j not in piv]
    piv_list = m.pivots()
    zero, one = m.field.zero, m.field.one
    vecs = []
    for f in free:
        v = [zero] * m.ncols
        v[f] = one
        for r, p in zip(red.data, piv_list):
            v[p] = -r[f]
        vecs.append(tuple(v))
    return echelon(m.field, vecs, m.ncols).rows


@dataclass(frozen=True)
class AffineSolutionSet:
    """All solutions of a linear system, as particular + span(kernel_basis).

    Canonical form: kernel_basis is a reduced echelon basis and the particular
    solution has zero entries at every kernel pivot coordinate, so two equal
    solution sets always compare equal.  `particular` is None iff the system
    is inconsistent.
    """

    particular: tuple | None
    kernel_basis: tuple

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    @property
    def dim(self) -> int:
        return len(self.kernel_basis)

    def element(self, coeffs: Sequence) -> tuple:
        if self.particular is None:
            raise LinalgError("empty solution set")
        out = list(self.particular)
        for c, k in zip(coeffs, self.kernel_basis):
            for j in range(len(out)):
                out[j] = out[j] + c * k[j]
        return tuple(out)


def solve_affine(a: Matrix, b: Sequence) -> AffineSolutionSet:
    """Full solution set of a.apply(x) == b."""
    if len(b) != a.nrows:
        raise DimensionMismatch("rhs length %d != %d rows" % (len(b), a.nrows))
    field = a.field
    aug = Matrix(field, [row + (field.coerce(x),) for row, x in zip(a.data, b)],
                 ncols=a.ncols + 1)
    red = aug.rref()
    if a.ncols in aug.pivots():
        return AffineSolutionSet(None, ())
    zero = field.zero
    part = [zero] * a.ncols
    for r, p in zip(red.data, aug.pivots()):
        part[p] = r[a.ncols]
    kern = kernel(a)
    ke = echelon(field, kern, a.ncols)
    return AffineSolutionSet(ke.reduce(part), ke.rows)
