"""q-commutant spaces, q-layered matrices, and Hom/Ext of q-commuting pairs.

For a fixed square A, the q-commutant is the space of all B with AB = qBA.
Its dimension is governed by the Jordan structure of A: a single Jordan pair
J_m(a1), J_n(a2) admits a nonzero solution only when a1 = q*a2, and then the
solution space is the min(m,n)-parameter family of q-layered matrices built
by ``q_layered``.  The same elimination machinery computes Hom and Ext groups
between two q-commuting pairs via an explicit length-2 complex.
"""

from dataclasses import dataclass

from .errors import LengthMismatch, MixedContext, NotSquare, RelationViolated
from .matrices import QMatrix, kernel_basis, rank
from .scalars import QScalar


@dataclass(frozen=True)
class MatrixPair:
    """A pair of n x n matrices with AB = qBA, checked at construction."""

    A: QMatrix
    B: QMatrix
    ctx: object

    def __init__(self, A: QMatrix, B: QMatrix):
        if A.ctx is not B.ctx:
            raise MixedContext("A and B live in different field contexts")
        if A.nrows != A.ncols or B.nrows != B.ncols:
            raise NotSquare("matrix pair entries must be square")
        if A.nrows != B.nrows:
            raise RelationViolated(
                f"sizes differ: {A.nrows} vs {B.nrows}"
            )
        q = A.ctx.q()
        if A * B != (B * A) * q:
            raise RelationViolated("AB = qBA fails for this pair")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "ctx", A.ctx)

    @property
    def size(self) -> int:
        return self.A.nrows


def q_layered(m: int, n: int, v, ctx=None) -> QMatrix:
    """The m x n q-layered matrix with layer vector v, |v| = min(m, n).

    Row 1 carries v_1..v_min in the last min(m, n) columns; each later row is
    the previous one shifted right one column and scaled by q.  The output L
    satisfies J_m(a) L = q L J_n(a/q) for every eigenvalue a.
    """
    if m < 0 or n < 0:
        raise ValueError("matrix sides must be nonnegative")
    v = list(v)
    low = min(m, n)
    if len(v) != low:
        raise LengthMismatch(f"layer vector needs length {low}, got {len(v)}")
    if ctx is None:
        if not v:
            raise ValueError("cannot infer the context from an empty vector")
        ctx = v[0].ctx
    for x in v:
        if not isinstance(x, QScalar) or x.ctx is not ctx:
            raise MixedContext("layer vector entries must share one context")
    q = ctx.q()
    zero = ctx.zero()
    offset = n - low
    rows = []
    scale = ctx.one()
    for i in range(m):
        row = [zero] * n
        for k in range(low):
            j = offset + k + i
            if j >= n:
                break
            row[j] = v[k] * scale
        rows.append(row)
        scale = scale * q
    return QMatrix(ctx, rows)


def q_layered_block(s: int, t: int, blocks, ctx=None) -> QMatrix:
    """Block analogue of ``q_layered``: scalar slots become uniform blocks.

    blocks is a vector of min(s, t) matrices of one common shape; slot (i, k)
    of the layered pattern holds q^(i-1) times blocks[k].
    """
    if s < 0 or t < 0:
        raise ValueError("block grid sides must be nonnegative")
    blocks = list(blocks)
    low = min(s, t)
    if len(blocks) != low:
        raise LengthMismatch(f"block vector needs length {low}, got {len(blocks)}")
    if ctx is None:
        if not blocks:
            raise ValueError("cannot infer the context from an empty vector")
        ctx = blocks[0].ctx
    shape = (blocks[0].nrows, blocks[0].ncols) if blocks else (0, 0)
    for blk in blocks:
        if not isinstance(blk, QMatrix) or blk.ctx is not ctx:
            raise MixedContext("blocks must share one context")
        if (blk.nrows, blk.ncols) != shape:
            raise LengthMismatch("blocks must all have the same shape")
    br, bc = shape
    q = ctx.q()
    zero = ctx.zero()
    rows = [[zero] * (t * bc) for _ in range(s * br)]
    offset = t - low
    scale = ctx.one()
    for i in range(s):
        for k in range(low):
            j = offset + k + i
            if j >= t:
                break
            blk = blocks[k]
            for r in range(br):
                for c in range(bc):
                    val = blk.rows[r][c]
                    if not val.is_zero():
                        rows[i * br + r][j * bc + c] = val * scale
        scale = scale * q
    return QMatrix(ctx, rows)


def _qcommutant_operator(A: QMatrix, q: QScalar) -> QMatrix:
    """Matrix of X -> AX - qXA on n x n matrices, flattened row-major.

    Column r*n + s is the image of the unit matrix E_rs; that image is
    A[:, r] placed in column s minus q times A[s, :] placed in row r, so the
    operator is assembled entry by entry without matrix products.
    """
    ctx = A.ctx
    n = A.nrows
    zero = ctx.zero()
    grid = [[zero] * (n * n) for _ in range(n * n)]
    for r in range(n):
        for s in range(n):
            col = r * n + s
            for i in range(n):
                a = A.rows[i][r]
                if not a.is_zero():
                    grid[i * n + s][col] = grid[i * n + s][col] + a
            for j in range(n):
                a = A.rows[s][j]
                if not a.is_zero():
                    grid[r * n + j][col] = grid[r * n + j][col] - q * a
    return QMatrix(ctx, grid)


def _unflatten(ctx, vec, nrows, ncols) -> QMatrix:
    rows = [list(vec[i * ncols:(i + 1) * ncols]) for i in range(nrows)]
    return QMatrix(ctx, rows)


def qcommutant_basis(A: QMatrix, ctx=None):
    """Basis of {B : AB = qBA} as a list of n x n matrices.

    Computed as the exact kernel of the n^2 x n^2 operator X -> AX - qXA,
    matrices flattened row-major; the basis order follows the deterministic
    kernel ordering of the eliminator.
    """
    if ctx is None:
        ctx = A.ctx
    if A.ctx is not ctx:
        raise MixedContext("matrix does not belong to the given context")
    if A.nrows != A.ncols:
        raise NotSquare("the q-commutant is defined for square matrices")
    n = A.nrows
    if n == 0:
        return []
    op = _qcommutant_operator(A, ctx.q())
    return [_unflatten(ctx, vec, n, n) for vec in kernel_basis(op)]


def predicted_commutant_dim(spec, ctx=None) -> int:
    """Commutant dimension read off a Jordan spec without elimination.

    Sums min(m_i, m_j) over ordered Jordan block pairs whose eigenvalues
    satisfy a_i = q * a_j; equals len(qcommutant_basis(realize(spec))).
    """
    if ctx is None:
        ctx = spec.ctx
    if spec.ctx is not ctx:
        raise MixedContext("spec does not belong to the given context")
    q = ctx.q()
    blocks = list(spec.single_blocks())
    total = 0
    for a_i, m_i in blocks:
        for a_j, m_j in blocks:
            if a_i == q * a_j:
                total += min(m_i, m_j)
    return total


@dataclass(frozen=True)
class HomExtReport:
    """Dimensions of Hom, Ext^1, Ext^2 between two q-commuting pairs."""

    hom_dim: int
    ext1_dim: int
    ext2_dim: int
    hom_basis: tuple


def _flatten(M: QMatrix):
    for row in M.rows:
        yield from row


def _stack_columns(ctx, columns, nrows) -> QMatrix:
    zero = ctx.zero()
    grid = [[zero] * len(columns) for _ in range(nrows)]
    for c, col in enumerate(columns):
        for r, val in enumerate(col):
            grid[r][c] = val
    return QMatrix(ctx, grid)


def hom_ext(M1: MatrixPair, M2: MatrixPair) -> HomExtReport:
    """Hom and Ext dimensions between module pairs M1 and M2.

    Uses the length-2 complex on n2 x n1 matrices:

        d0(F) = (F A1 - A2 F,  F B1 - B2 F)
        d1(G, H) = G B1 - q B2 G + A2 H - q H A1

    hom = dim ker d0, ext1 = dim ker d1 - rank d0, ext2 = n1 n2 - rank d1.
    The alternating sum of the three dimensions is zero by rank-nullity.
    """
    if M1.ctx is not M2.ctx:
        raise MixedContext("pairs live in different field contexts")
    ctx = M1.ctx
    q = ctx.q()
    A1, B1 = M1.A, M1.B
    A2, B2 = M2.A, M2.B
    n1, n2 = M1.size, M2.size
    dim = n1 * n2
    if dim == 0:
        return HomExtReport(0, 0, 0, ())

    units = []
    zero = ctx.zero()
    one = ctx.one()
    for r in range(n2):
        for s in range(n1):
            rows = [[zero] * n1 for _ in range(n2)]
            rows[r][s] = one
            units.append(QMatrix(ctx, rows))

    d0_cols = []
    for E in units:
        top = E * A1 - A2 * E
        bot = E * B1 - B2 * E
        d0_cols.append(list(_flatten(top)) + list(_flatten(bot)))
    d0 = _stack_columns(ctx, d0_cols, 2 * dim)

    d1_cols = []
    for E in units:  # G slots first, then H slots
        img = E * B1 - (B2 * E) * q
        d1_cols.append(list(_flatten(img)))
    for E in units:
        img = A2 * E - (E * A1) * q
        d1_cols.append(list(_flatten(img)))
    d1 = _stack_columns(ctx, d1_cols, dim)

    hom_vectors = kernel_basis(d0)
    rank_d0 = dim - len(hom_vectors)
    rank_d1 = rank(d1)
    ext1 = (2 * dim - rank_d1) - rank_d0
    ext2 = dim - rank_d1
    basis = tuple(_unflatten(ctx, vec, n2, n1) for vec in hom_vectors)
    return HomExtReport(len(basis), ext1, ext2, basis)
