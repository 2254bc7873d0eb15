"""Dense matrices over binary fields, with rows packed into Python ints.

Convention: vectors are rows and matrices act on the right, ``v -> v M``.
The product ``A * B`` therefore means "first A, then B", matching the
permutation convention in :mod:`amalgamkit.actions`.

A row of an ``r x c`` matrix over GF(2^k) is an int with entry ``j`` in bits
``k*j .. k*j+k-1``.  Over GF(2) this is one bit per entry, so adding rows is
one XOR of machine words regardless of the dimension.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

from .errors import (
    FieldMismatch,
    NonSquare,
    NotFixedPointFree,
    NotInvariant,
    NotScalarizable,
    OrderExceedsBound,
    ShapeMismatch,
    Singular,
    WrongOrder,
)
from .fields import (
    CYCLOTOMIC_7,
    GF2,
    GF8,
    BinaryField,
    FieldElement,
    FieldPoly,
    Poly2,
    poly_factor_gf2,
    poly_order,
)

DEFAULT_ORDER_BOUND = 10**6


def _pivot_col(row: int, k: int) -> int:
    return ((row & -row).bit_length() - 1) // k


@dataclass(frozen=True)
class DenseMatrix:
    field: BinaryField
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ShapeMismatch(f"{len(self.rows)} rows stored, header says {self.nrows}")
        limit = 1 << (self.field.degree * self.ncols)
        for r in self.rows:
            if not 0 <= r < limit:
                raise ShapeMismatch("row wider than the declared column count")
        if self.field.degree > 1:
            # every k-bit entry is automatically < 2^k, so nothing else to check
            pass

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_entries(cls, F: BinaryField, entries: Sequence[Sequence[int]]) -> "DenseMatrix":
        entries = [list(r) for r in entries]
        ncols = len(entries[0]) if entries else 0
        if any(len(r) != ncols for r in entries):
            raise ShapeMismatch("ragged rows")
        return cls(F, len(entries), ncols, tuple(F.pack(r) for r in entries))

    @classmethod
    def identity(cls, F: BinaryField, n: int) -> "DenseMatrix":
        k = F.degree
        return cls(F, n, n, tuple(1 << (k * i) for i in range(n)))

    @classmethod
    def zero(cls, F: BinaryField, nrows: int, ncols: int | None = None) -> "DenseMatrix":
        return cls(F, nrows, nrows if ncols is None else ncols, (0,) * nrows)

    @classmethod
    def scalar(cls, F: BinaryField, n: int, c: int) -> "DenseMatrix":
        k = F.degree
        return cls(F, n, n, tuple(c << (k * i) for i in range(n)))

    @classmethod
    def companion(cls, p: Poly2 | FieldPoly) -> "DenseMatrix":
        """Companion matrix of a monic polynomial, acting on rows.

        Row i is e_{i+1} for i < n-1 and the last row holds the negated
        low coefficients, so ``e_0`` has annihilator ``p``.
        """
        if isinstance(p, Poly2):
            F, n, coeffs = GF2, p.degree, list(p.coeffs)
        else:
            F, n, coeffs = p.field, p.degree, p.coeffs
        if n < 1:
            raise ShapeMismatch("companion matrix needs degree >= 1")
        k = F.degree
        rows = [1 << (k * (i + 1)) for i in range(n - 1)]
        rows.append(F.pack(coeffs[:n]))
        return cls(F, n, n, tuple(rows))

    @classmethod
    def permutation(cls, F: BinaryField, images: Sequence[int]) -> "DenseMatrix":
        """Matrix with ``e_i P = e_{images[i]}``."""
        k = F.degree
        return cls(F, len(images), len(images), tuple(1 << (k * j) for j in images))

    # -- basic access -------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entry(self, i: int, j: int) -> int:
        return self.field.entry(self.rows[i], j)

    def entries(self) -> list[list[int]]:
        return [self.field.unpack(r, self.ncols) for r in self.rows]

    def is_identity(self) -> bool:
        k = self.field.degree
        return self.is_square() and all(r == 1 << (k * i) for i, r in enumerate(self.rows))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def vec_mul(self, v: int) -> int:
        """The row vector ``v M`` (``v`` packed like a row)."""
        return _row_times(v, self.rows, self.field, self.nrows, self.ncols)

    def __mul__(self, other: "DenseMatrix") -> "DenseMatrix":
        return mat_mul(self, other)

    __matmul__ = __mul__

    def __add__(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        _same_field(self, other)
        return DenseMatrix(self.field, self.nrows, self.ncols,
                           tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def scale(self, c: int) -> "DenseMatrix":
        F = self.field
        return DenseMatrix(F, self.nrows, self.ncols,
                           tuple(F.scale_packed(r, c, self.ncols) for r in self.rows))

    def inverse(self) -> "DenseMatrix":
        return mat_inv(self)

    def __pow__(self, n: int) -> "DenseMatrix":
        if not self.is_square():
            raise NonSquare(f"power of a {self.shape} matrix")
        base = self
        if n < 0:
            base, n = mat_inv(self), -n
        result = DenseMatrix.identity(self.field, self.nrows)
        while n:
            if n & 1:
                result = mat_mul(result, base)
            n >>= 1
            if n:
                base = mat_mul(base, base)
        return result

    def transpose(self) -> "DenseMatrix":
        e = self.entries()
        return DenseMatrix.from_entries(self.field, [list(col) for col in zip(*e)]) \
            if e else DenseMatrix.zero(self.field, self.ncols, 0)

    def rank(self) -> int:
        return len(echelonize(self.rows, self.ncols, self.field)[0])

    def order(self, bound: int = DEFAULT_ORDER_BOUND) -> int:
        return element_order(self, bound)

    def blow_up(self) -> "DenseMatrix":
        """The same linear map viewed over GF(2), dimension multiplied by k.

        Packed vectors need no conversion: a GF(2^k)-vector's int is its GF(2)
        image.
        """
        F, k = self.field, self.field.degree
        if k == 1:
            return self
        rows = []
        for r in self.rows:
            for s in range(k):
                rows.append(F.scale_packed(r, 1 << s, self.ncols))
        return DenseMatrix(GF2, self.nrows * k, self.ncols * k, tuple(rows))

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.field.order}:{self.field.modulus.bits}:{self.nrows}x{self.ncols}:".encode())
        width = (self.field.degree * self.ncols + 7) // 8
        for r in self.rows:
            h.update(r.to_bytes(max(width, 1), "little"))
        return h.hexdigest()

    def __str__(self) -> str:
        sep = "" if self.field.order <= 10 else " "
        return "\n".join(sep.join(str(x) for x in row) for row in self.entries())


def _same_field(A: DenseMatrix, B: DenseMatrix) -> None:
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")


def _row_times(v: int, rows: Sequence[int], F: BinaryField, nrows: int, ncols: int) -> int:
    acc = 0
    if F.degree == 1:
        while v:
            low = v & -v
            acc ^= rows[low.bit_length() - 1]
            v ^= low
        return acc
    k, mask = F.degree, F.mask
    j = 0
    while v:
        c = v & mask
        if c:
            acc ^= F.scale_packed(rows[j], c, ncols)
        v >>= k
        j += 1
    return acc


def mat_mul(A: DenseMatrix, B: DenseMatrix) -> DenseMatrix:
    if A.ncols != B.nrows:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    _same_field(A, B)
    F, Brows, n, m = A.field, B.rows, B.nrows, B.ncols
    return DenseMatrix(F, A.nrows, m, tuple(_row_times(a, Brows, F, n, m) for a in A.rows))


# ---------------------------------------------------------------------------
# elimination

def echelonize(rows: Iterable[int], ncols: int, F: BinaryField) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of the span of ``rows``.

    Returns (basis, pivots) sorted by pivot column; each pivot entry is 1 and
    every other basis row is zero in that column.
    """
    k = F.degree
    piv: dict[int, int] = {}
    for v in rows:
        for col, r in piv.items():
            c = F.entry(v, col)
            if c:
                v ^= F.scale_packed(r, c, ncols)
        if v == 0:
            continue
        col = _pivot_col(v, k)
        c = F.entry(v, col)
        if c != 1:
            v = F.scale_packed(v, F.inv(c), ncols)
        for pc, r in list(piv.items()):
            e = F.entry(r, col)
            if e:
                piv[pc] = r ^ F.scale_packed(v, e, ncols)
        piv[col] = v
    pivots = sorted(piv)
    return [piv[c] for c in pivots], pivots


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n with its basis in reduced row echelon form."""

    field: BinaryField
    ambient: int
    basis: tuple[int, ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, F: BinaryField, ambient: int, vectors: Iterable[int]) -> "Subspace":
        basis, pivots = echelonize(vectors, ambient, F)
        return cls(F, ambient, tuple(basis), tuple(pivots))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: int) -> int:
        F = self.field
        for col, r in zip(self.pivots, self.basis):
            c = F.entry(v, col)
            if c:
                v ^= F.scale_packed(r, c, self.ambient)
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __contains__(self, v: int) -> bool:
        return self.contains(v)

    def matrix(self) -> DenseMatrix:
        return DenseMatrix(self.field, self.dim, self.ambient, self.basis)

    def is_invariant(self, M: DenseMatrix) -> bool:
        return all(self.contains(M.vec_mul(b)) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient, self.basis + other.basis)

    def vectors(self):
        """Every vector of the subspace (use only for small dimensions)."""
        F = self.field
        out = [0]
        for b in self.basis:
            out = [v ^ F.scale_packed(b, c, self.ambient) for v in out for c in F.elements()]
        return out


class LeftSolver:
    """Solve ``c B = w`` for a fixed matrix ``B`` with independent rows."""

    def __init__(self, B: DenseMatrix):
        F, r, n = B.field, B.nrows, B.ncols
        k = F.degree
        aug = [row | (1 << (k * (n + i))) for i, row in enumerate(B.rows)]
        basis, pivots = echelonize(aug, n + r, F)
        if not pivots or pivots[-1] >= n or len(pivots) != r:
            raise Singular("rows of B are dependent")
        self.field, self.n, self.r = F, n, r
        self._low = (1 << (k * n)) - 1
        self._rows = list(zip(pivots, basis))

    def solve(self, w: int) -> int | None:
        """Packed coefficient vector ``c`` with ``c B = w``, or None if w is not in the row space."""
        F, k, n = self.field, self.field.degree, self.n
        coeffs = 0
        for col, row in self._rows:
            c = F.entry(w, col)
            if c:
                w ^= F.scale_packed(row & self._low, c, n)
                coeffs ^= F.scale_packed(row >> (k * n), c, self.r)
        return coeffs if w == 0 else None


def nullspace(A: DenseMatrix) -> Subspace:
    """The left nullspace ``{v : v A = 0}``."""
    F, r, c = A.field, A.nrows, A.ncols
    k = F.degree
    aug = [row | (1 << (k * (c + i))) for i, row in enumerate(A.rows)]
    basis, pivots = echelonize(aug, c + r, F)
    kernel = [row >> (k * c) for row, p in zip(basis, pivots) if p >= c]
    return Subspace.span(F, r, kernel)


def mat_inv(A: DenseMatrix) -> DenseMatrix:
    if not A.is_square():
        raise NonSquare(f"cannot invert a {A.shape} matrix")
    F, n = A.field, A.nrows
    k = F.degree
    aug = [row | (1 << (k * (n + i))) for i, row in enumerate(A.rows)]
    basis, pivots = echelonize(aug, 2 * n, F)
    if len(pivots) < n or pivots[n - 1] >= n:
        raise Singular("matrix is singular")
    return DenseMatrix(F, n, n, tuple(row >> (k * n) for row in basis[:n]))


# ---------------------------------------------------------------------------
# polynomials of matrices

def poly_eval_at_matrix(p: Poly2 | FieldPoly, M: DenseMatrix) -> DenseMatrix:
    """``sum p_i M^i`` by Horner's rule."""
    if not M.is_square():
        raise NonSquare(f"cannot evaluate a polynomial at a {M.shape} matrix")
    coeffs = list(p.coeffs)
    n, F = M.nrows, M.field
    if isinstance(p, FieldPoly) and p.field != F:
        raise FieldMismatch(f"polynomial over {p.field}, matrix over {F}")
    result = DenseMatrix.zero(F, n)
    for c in reversed(coeffs):
        result = mat_mul(result, M) + DenseMatrix.scalar(F, n, c)
    return result


def _vector_annihilator(v: int, M: DenseMatrix) -> tuple[FieldPoly, list[int]]:
    """Monic polynomial p of least degree with ``v p(M) = 0``, and the Krylov vectors."""
    F, n = M.field, M.ncols
    k = F.degree
    basis: dict[int, tuple[int, int]] = {}
    krylov = []
    w = v
    for j in range(n + 1):
        r, p = w, 1 << (k * j)
        for col, (row, rp) in basis.items():
            c = F.entry(r, col)
            if c:
                r ^= F.scale_packed(row, c, n)
                p ^= F.scale_packed(rp, c, n + 1)
        if r == 0:
            return FieldPoly(F, p), krylov
        col = _pivot_col(r, k)
        c = F.entry(r, col)
        if c != 1:
            ci = F.inv(c)
            r = F.scale_packed(r, ci, n)
            p = F.scale_packed(p, ci, n + 1)
        for pc, (row, rp) in list(basis.items()):
            e = F.entry(row, col)
            if e:
                basis[pc] = (row ^ F.scale_packed(r, e, n), rp ^ F.scale_packed(p, e, n + 1))
        basis[col] = (r, p)
        krylov.append(w)
        w = M.vec_mul(w)
    raise AssertionError("Krylov sequence did not terminate")


def min_poly(M: DenseMatrix) -> Poly2 | FieldPoly:
    """Minimal polynomial of ``M``: a :class:`Poly2` over GF(2), else a :class:`FieldPoly`.

    Least common multiple of the annihilators of the standard basis vectors,
    skipping vectors already inside the invariant subspace spanned so far.
    """
    if not M.is_square():
        raise NonSquare(f"minimal polynomial of a {M.shape} matrix")
    F, n = M.field, M.nrows
    k = F.degree
    result = FieldPoly(F, 1)
    seen = Subspace(F, n, (), ())
    for i in range(n):
        e = 1 << (k * i)
        if seen.contains(e):
            continue
        ann, krylov = _vector_annihilator(e, M)
        result = result.lcm(ann)
        seen = Subspace.span(F, n, seen.basis + tuple(krylov))
        if seen.dim == n:
            break
    if F.degree == 1:
        return result.to_poly2()
    return result


def element_order(M: DenseMatrix, bound: int = DEFAULT_ORDER_BOUND) -> int:
    """Multiplicative order of an invertible matrix.

    Over GF(2): factor the minimal polynomial, take the lcm of the orders of
    its irreducible factors and multiply by the least power of 2 that covers
    the largest multiplicity.  Other fields are reduced to GF(2) first.
    """
    if not M.is_square():
        raise NonSquare(f"order of a {M.shape} matrix")
    B = M.blow_up()
    mp = min_poly(B)
    if mp.bits & 1 == 0:
        raise Singular("matrix is singular (x divides its minimal polynomial)")
    factors = poly_factor_gf2(mp)
    n = 1
    for f, _ in factors:
        n = lcm(n, poly_order(f))
    top = max(m for _, m in factors) if factors else 1
    two = 1
    while two < top:
        two *= 2
    n *= two
    if n > bound:
        raise OrderExceedsBound(f"order {n} exceeds bound {bound}")
    return n


# ---------------------------------------------------------------------------
# homogeneous components of an element of order 7

CUBIC_A = Poly2(0b1101)   # x^3 + x^2 + 1
CUBIC_B = Poly2(0b1011)   # x^3 + x + 1


def split_homogeneous(M: DenseMatrix) -> tuple[Subspace, Subspace]:
    """Nullspaces of (x^3+x^2+1)(M) and (x^3+x+1)(M), in that order."""
    if not M.is_square():
        raise NonSquare(f"cannot split a {M.shape} matrix")
    if M.field != GF2:
        raise FieldMismatch("split_homogeneous works over GF(2)")
    mp = min_poly(M)
    if (mp % Poly2(0b11)).is_zero():
        raise NotFixedPointFree(f"minimal polynomial {mp} is divisible by x+1")
    if not (CYCLOTOMIC_7 % mp).is_zero():
        raise WrongOrder(f"minimal polynomial {mp} does not divide x^6+...+1")
    return (nullspace(poly_eval_at_matrix(CUBIC_A, M)),
            nullspace(poly_eval_at_matrix(CUBIC_B, M)))


@dataclass(frozen=True)
class GF8Structure:
    """A GF(2)-subspace on which an order-7 matrix acts as a GF(8) scalar.

    ``vectors`` is a GF(8)-basis; the GF(2)-basis is ``v M^s`` for each basis
    vector ``v`` and s = 0, 1, 2.  A GF(8) element with coordinates
    ``d_0 + d_1 g + d_2 g^2`` in powers of ``scalar`` = g corresponds to
    ``d_0 v + d_1 vM + d_2 vM^2``.
    """

    matrix: DenseMatrix
    component: Subspace
    field: BinaryField
    scalar: FieldElement
    vectors: tuple[int, ...]
    gf2_basis: tuple[int, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @cached_property
    def _solver(self) -> LeftSolver:
        return LeftSolver(DenseMatrix(GF2, len(self.gf2_basis), self.matrix.ncols, self.gf2_basis))

    @cached_property
    def _to_power_basis(self) -> dict[int, tuple[int, int, int]]:
        F, g = self.field, self.scalar.bits
        table = {}
        for d in range(8):
            x = 0
            for s in range(3):
                if (d >> s) & 1:
                    x ^= F.pow(g, s)
            table[x] = (d & 1, (d >> 1) & 1, (d >> 2) & 1)
        return table

    def to_gf8(self, w: int) -> int:
        coeffs = self._solver.solve(w)
        if coeffs is None:
            raise NotInvariant("vector lies outside the component")
        F, g = self.field, self.scalar.bits
        entries = []
        for j in range(self.dim):
            x = 0
            for s in range(3):
                if (coeffs >> (3 * j + s)) & 1:
                    x ^= F.pow(g, s)
            entries.append(x)
        return F.pack(entries)

    def from_gf8(self, row: int) -> int:
        F = self.field
        w = 0
        for j, e in enumerate(F.unpack(row, self.dim)):
            for s, bit in enumerate(self._to_power_basis[e]):
                if bit:
                    w ^= self.gf2_basis[3 * j + s]
        return w

    def restrict(self, X: DenseMatrix) -> DenseMatrix:
        """``X`` on the component, as a GF(8) matrix through the basis map.

        ``X`` must preserve the component and commute with the order-7 matrix
        there; otherwise NotInvariant.
        """
        M = self.matrix
        for b in self.gf2_basis:
            if M.vec_mul(X.vec_mul(b)) != X.vec_mul(M.vec_mul(b)):
                raise NotInvariant("matrix does not commute with the scalar action")
        rows = tuple(self.to_gf8(X.vec_mul(v)) for v in self.vectors)
        return DenseMatrix(self.field, self.dim, self.dim, rows)


def rebase_as_gf8(M: DenseMatrix, C: Subspace, field: BinaryField = GF8) -> GF8Structure:
    """View the M-invariant component ``C`` as a GF(8)-space on which M is a scalar."""
    if not C.is_invariant(M):
        raise NotInvariant("component is not invariant under the matrix")
    if C.dim == 0:
        raise NotScalarizable("zero-dimensional component")
    solver = LeftSolver(C.matrix())
    restricted = DenseMatrix(GF2, C.dim, C.dim, tuple(solver.solve(M.vec_mul(b)) for b in C.basis))
    mp = min_poly(restricted)
    if mp.degree != 3 or len(poly_factor_gf2(mp)) != 1 or poly_factor_gf2(mp)[0][1] != 1:
        raise NotScalarizable(f"minimal polynomial {mp} on the component is not an irreducible cubic")
    root = next(x for x in range(2, 8)
                if _eval_poly2_in_field(mp, x, field) == 0)
    chosen: list[int] = []
    gf2_basis: list[int] = []
    span = Subspace(GF2, C.ambient, (), ())
    for v in C.basis:
        if span.contains(v):
            continue
        orbit = [v, M.vec_mul(v)]
        orbit.append(M.vec_mul(orbit[1]))
        chosen.append(v)
        gf2_basis.extend(orbit)
        span = Subspace.span(GF2, C.ambient, span.basis + tuple(orbit))
    structure = GF8Structure(M, C, field, field.element(root), tuple(chosen), tuple(gf2_basis))
    if structure.restrict(M) != DenseMatrix.scalar(field, len(chosen), root):
        raise NotScalarizable("order-7 matrix is not scalar in the constructed basis")
    return structure


def _eval_poly2_in_field(p: Poly2, x: int, F: BinaryField) -> int:
    acc = 0
    for c in reversed(p.coeffs):
        acc = F.mul(acc, x) ^ c
    return acc


def extend_scalars(M: DenseMatrix, F: BinaryField) -> DenseMatrix:
    """A GF(2) matrix reinterpreted over the extension field ``F``."""
    if M.field != GF2:
        raise FieldMismatch("only GF(2) matrices extend")
    return DenseMatrix.from_entries(F, M.entries())
