"""Exact dense linear algebra over QScalar.

Matrices are immutable values; every operation returns a fresh matrix.
Elimination is fraction-free in Bareiss form: each update step is
(p * a_ij - a_ic * a_rj) / p_prev with the division exact in the field,
which keeps intermediate entries equal to minors of the input and stops
coefficient blowup.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch, MixedContext, NotSquare, SingularConjugator
from .scalars import FieldContext, QScalar


class QMatrix:
    """A rows x cols grid of QScalar, all sharing one FieldContext."""

    __slots__ = ("ctx", "nrows", "ncols", "rows")

    def __init__(self, ctx: FieldContext, rows):
        rows = tuple(tuple(entry for entry in row) for row in rows)
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        for row in rows:
            if len(row) != ncols:
                raise DimensionMismatch("ragged rows")
            for entry in row:
                if not isinstance(entry, QScalar):
                    raise TypeError(f"matrix entries must be QScalar, got {type(entry)}")
                if entry.ctx != ctx:
                    raise MixedContext("matrix entry from a different field context")
        self.ctx = ctx
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(ctx: FieldContext, nrows: int, ncols: int) -> "QMatrix":
        z = ctx.zero()
        return QMatrix(ctx, [[z] * ncols for _ in range(nrows)])

    @staticmethod
    def identity(ctx: FieldContext, n: int) -> "QMatrix":
        z, o = ctx.zero(), ctx.one()
        return QMatrix(ctx, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def diagonal(ctx: FieldContext, entries) -> "QMatrix":
        entries = list(entries)
        z = ctx.zero()
        n = len(entries)
        return QMatrix(ctx, [[entries[i] if i == j else z for j in range(n)]
                             for i in range(n)])

    @staticmethod
    def from_rational_rows(ctx: FieldContext, rows) -> "QMatrix":
        """Build from a grid of ints/Fractions (convenience for tests)."""
        return QMatrix(ctx, [[ctx.rational(x) for x in row] for row in rows])

    # -- basic protocol ------------------------------------------------------

    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r][c]

    def __eq__(self, other):
        return (
            isinstance(other, QMatrix)
            and self.ctx == other.ctx
            and self.rows == other.rows
            and self.ncols == other.ncols
        )

    def __hash__(self):
        return hash((self.ctx, self.ncols, self.rows))

    def __repr__(self):
        from .scalars import format_scalar
        body = "; ".join(
            ", ".join(format_scalar(x) for x in row) for row in self.rows
        )
        return f"QMatrix({self.nrows}x{self.ncols}: {body})"

    def is_zero(self) -> bool:
        return all(entry.is_zero() for row in self.rows for entry in row)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    # -- ring operations -----------------------------------------------------

    def _check_same_shape(self, other):
        if self.ctx != other.ctx:
            raise MixedContext("matrices from different field contexts")
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionMismatch(
                f"{self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}")

    def __add__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return QMatrix(self.ctx, [
            [x + y for x, y in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)
        ])

    def __sub__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return QMatrix(self.ctx, [
            [x - y for x, y in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)
        ])

    def __neg__(self):
        return QMatrix(self.ctx, [[-x for x in row] for row in self.rows])

    def scale(self, scalar) -> "QMatrix":
        if isinstance(scalar, (int, Fraction)):
            scalar = self.ctx.rational(scalar)
        return QMatrix(self.ctx, [[scalar * x for x in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QScalar)):
            return self.scale(other)
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.ctx != other.ctx:
            raise MixedContext("matrices from different field contexts")
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        zero = self.ctx.zero()
        # accumulate only over nonzero left entries: matrices here are often sparse
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            nz = [(k, x) for k, x in enumerate(row) if not x.is_zero()]
            new_row = []
            for col in cols:
                acc = zero
                for k, x in nz:
                    y = col[k]
                    if not y.is_zero():
                        acc = acc + x * y
                new_row.append(acc)
            out.append(new_row)
        return QMatrix(self.ctx, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not self.is_square():
            raise NotSquare("matrix power needs a square matrix")
        if exponent < 0:
            raise ValueError("negative matrix powers are not supported")
        out = QMatrix.identity(self.ctx, self.nrows)
        base = self
        while exponent:
            if exponent & 1:
                out = out * base
            base = base * base if exponent > 1 else base
            exponent >>= 1
        return out

    def transpose(self) -> "QMatrix":
        if self.nrows == 0 or self.ncols == 0:
            return QMatrix.zero(self.ctx, self.ncols, self.nrows)
        return QMatrix(self.ctx, list(zip(*self.rows)))

    def trace(self) -> QScalar:
        if not self.is_square():
            raise NotSquare("trace needs a square matrix")
        total = self.ctx.zero()
        for i in range(self.nrows):
            total = total + self.rows[i][i]
        return total

    def map_entries(self, fn) -> "QMatrix":
        """Apply a scalar function entrywise (e.g. a field automorphism)."""
        return QMatrix(self.ctx, [[fn(x) for x in row] for row in self.rows])

    def submatrix(self, row_range, col_range) -> "QMatrix":
        rows = [[self.rows[i][j] for j in col_range] for i in row_range]
        if not rows:
            return QMatrix.zero(self.ctx, 0, 0)
        return QMatrix(self.ctx, rows)


def direct_sum(*matrices: QMatrix) -> QMatrix:
    """Block-diagonal stacking of the given matrices."""
    if not matrices:
        raise DimensionMismatch("direct_sum needs at least one matrix")
    ctx = matrices[0].ctx
    for m in matrices:
        if m.ctx != ctx:
            raise MixedContext("direct_sum over mixed field contexts")
    total_r = sum(m.nrows for m in matrices)
    total_c = sum(m.ncols for m in matrices)
    z = ctx.zero()
    grid = [[z] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for m in matrices:
        for i, row in enumerate(m.rows):
            grid[r0 + i][c0:c0 + m.ncols] = row
        r0 += m.nrows
        c0 += m.ncols
    return QMatrix(ctx, grid)


# ---------------------------------------------------------------------------
# elimination: rank, kernel, inverse
# ---------------------------------------------------------------------------

def _bareiss_forward(grid):
    """In-place fraction-free forward elimination; returns pivot columns.

    grid is a list of lists of QScalar.  After the call, rows 0..rank-1 are
    in echelon form and everything below them is zero.
    """
    m = len(grid)
    n = len(grid[0]) if m else 0
    piv_cols = []
    r = 0
    prev_inv = None
    for c in range(n):
        piv = None
        for i in range(r, m):
            if not grid[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            grid[r], grid[piv] = grid[piv], grid[r]
        pivot = grid[r][c]
        row_r = grid[r]
        for i in range(r + 1, m):
            row_i = grid[i]
            lead = row_i[c]
            if lead.is_zero():
                # Bareiss still rescales skipped rows by pivot/prev_pivot
                for j in range(c + 1, n):
                    x = row_i[j]
                    if not x.is_zero():
                        y = pivot * x
                        row_i[j] = y * prev_inv if prev_inv is not None else y
            else:
                zero = lead.ctx.zero()
                for j in range(c + 1, n):
                    y = pivot * row_i[j] - lead * row_r[j]
                    row_i[j] = y * prev_inv if prev_inv is not None else y
                row_i[c] = zero
        prev_inv = pivot.inverse()
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    return piv_cols


def rank(A: QMatrix) -> int:
    """Exact rank via fraction-free elimination."""
    grid = [list(row) for row in A.rows]
    return len(_bareiss_forward(grid))


def _rref(A: QMatrix):
    """Reduced row echelon form: returns (rows, pivot column list)."""
    grid = [list(row) for row in A.rows]
    piv_cols = _bareiss_forward(grid)
    # back-substitution: normalize pivots to 1 and clear above
    for i in range(len(piv_cols) - 1, -1, -1):
        p = piv_cols[i]
        inv = grid[i][p].inverse()
        row_i = [x * inv for x in grid[i]]
        grid[i] = row_i
        for k in range(i):
            f = grid[k][p]
            if not f.is_zero():
                row_k = grid[k]
                for j in range(p, A.ncols):
                    row_k[j] = row_k[j] - f * row_i[j]
    return grid, piv_cols


def kernel_basis(A: QMatrix):
    """Deterministic basis of the right kernel {x : Ax = 0}.

    Returns cols - rank vectors (tuples of QScalar), one per free column in
    ascending column order, each with a 1 in its free position.
    """
    grid, piv_cols = _rref(A)
    n = A.ncols
    piv_set = set(piv_cols)
    zero, one = A.ctx.zero(), A.ctx.one()
    basis = []
    for free in range(n):
        if free in piv_set:
            continue
        vec = [zero] * n
        vec[free] = one
        for i, p in enumerate(piv_cols):
            vec[p] = -grid[i][free]
        basis.append(tuple(vec))
    return basis


def inverse(A: QMatrix) -> QMatrix:
    """Matrix inverse; raises SingularConjugator when A is singular."""
    if not A.is_square():
        raise NotSquare("inverse needs a square matrix")
    n = A.nrows
    eye = QMatrix.identity(A.ctx, n)
    augmented = QMatrix(A.ctx, [list(r) + list(e) for r, e in zip(A.rows, eye.rows)])
    grid, piv_cols = _rref(augmented)
    if piv_cols != list(range(n)):
        raise SingularConjugator("matrix is singular")
    return QMatrix(A.ctx, [row[n:] for row in grid])


def conjugate(g: QMatrix, A: QMatrix) -> QMatrix:
    """g A g^{-1} for invertible g."""
    if not g.is_square() or not A.is_square():
        raise NotSquare("conjugation needs square matrices")
    if g.nrows != A.nrows:
        raise DimensionMismatch("conjugator size does not match matrix size")
    return g * A * inverse(g)


# ---------------------------------------------------------------------------
# characteristic polynomial
# ---------------------------------------------------------------------------

def char_poly(A: QMatrix):
    """Monic characteristic polynomial det(xI - A), little-endian QScalar list.

    Faddeev-LeVerrier: exact over any field of characteristic zero (the
    divisions are by the integers 1..n).
    """
    if not A.is_square():
        raise NotSquare("char_poly needs a square matrix")
    n = A.nrows
    ctx = A.ctx
    one = ctx.one()
    if n == 0:
        return [one]
    coeffs = [None] * (n + 1)
    coeffs[n] = one
    M = QMatrix.identity(ctx, n)
    for k in range(1, n + 1):
        AM = A * M
        c = -(AM.trace() / k)
        coeffs[n - k] = c
        if k < n:
            M = AM + QMatrix.identity(ctx, n).scale(c)
    return coeffs


def eval_poly_at_matrix(coeffs, A: QMatrix) -> QMatrix:
    """Evaluate a little-endian QScalar polynomial at a square matrix."""
    if not A.is_square():
        raise NotSquare("polynomial evaluation needs a square matrix")
    out = QMatrix.zero(A.ctx, A.nrows, A.nrows)
    for c in reversed(list(coeffs)):
        out = out * A + QMatrix.identity(A.ctx, A.nrows).scale(c)
    return out
