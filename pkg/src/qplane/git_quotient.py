"""GIT-quotient bookkeeping: closed-orbit indices, trace invariants, and
semisimplification of stratum points.

Closed orbits in the quotient are labeled by triples (p, m, r) with
ell*p + m + r = n: p full-cycle summands, m one-dimensional (a, 0) summands
and r one-dimensional (0, b) summands.  The invariant ring is generated by
the traces of words A^i B^j, so equality of trace fingerprints certifies
that two pairs map to the same quotient point.
"""

from dataclasses import dataclass

from .commutant import MatrixPair
from .components import ComponentIndex
from .errors import BadIndex, UnsupportedShape
from .jordan import jordan_block
from .matrices import QMatrix, direct_sum
from .scalars import INFINITE


@dataclass(frozen=True)
class GitIndex:
    """Type (p, m, r) of a closed orbit; ell*p + m + r = n in context."""

    p: int
    m: int
    r: int

    def __post_init__(self):
        if self.p < 0 or self.m < 0 or self.r < 0:
            raise BadIndex("closed-orbit type entries must be nonnegative")

    def size(self, ell) -> int:
        if ell is INFINITE:
            if self.p:
                raise BadIndex("full-cycle summands need a root of unity")
            return self.m + self.r
        return ell * self.p + self.m + self.r


def enumerate_TPL(ell, n: int):
    """All valid (p, m, r) with ell*p + m + r = n.

    At ell = 1 the three summand kinds coincide and the only type is
    (n, 0, 0); in the infinite regime p is forced to zero.
    """
    if n < 0:
        raise BadIndex("n must be nonnegative")
    if ell is INFINITE:
        return [GitIndex(0, m, n - m) for m in range(n, -1, -1)]
    if not isinstance(ell, int) or ell < 1:
        raise BadIndex("the order must be a positive integer or INFINITE")
    if ell == 1:
        return [GitIndex(n, 0, 0)]
    out = []
    for p in range(n // ell, -1, -1):
        rest = n - ell * p
        for m in range(rest, -1, -1):
            out.append(GitIndex(p, m, rest - m))
    return out


def dim_git(idx: GitIndex, ell, n: int) -> int:
    """Dimension of the closed-orbit family of type idx inside size n."""
    if idx.size(ell) != n:
        raise BadIndex(f"type {idx} does not have size {n}")
    if ell is INFINITE:
        return n
    return n + (2 - ell) * idx.p


def git_index_of_stratum(idx: ComponentIndex) -> GitIndex:
    """Closed-orbit type of the semisimplification of a generic stratum point.

    Full-cycle summands survive; every other dense summand of size i breaks
    into i one-dimensional (a, 0) pieces and every nilpotent-kind summand of
    size j into j pieces (0, b).
    """
    ell = idx.ell
    p = idx.m_top
    if ell is INFINITE:
        m = sum((i + 1) * c for i, c in enumerate(idx.m))
    else:
        m = sum((i + 1) * c for i, c in enumerate(idx.m[:ell - 1]))
    r = sum((j + 1) * c for j, c in enumerate(idx.r))
    return GitIndex(p, m, r)


# ---------------------------------------------------------------------------
# Trace fingerprints
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TraceFingerprint:
    """Grid of Tr(A^i B^j) for 0 <= i, j <= max_degree."""

    max_degree: int
    grid: tuple


def _trace_of_product(X: QMatrix, Y: QMatrix):
    total = X.ctx.zero()
    n = X.nrows
    for r in range(n):
        row = X.rows[r]
        for k in range(n):
            x = row[k]
            if not x.is_zero():
                total = total + x * Y.rows[k][r]
    return total


def trace_fingerprint(pair: MatrixPair, N=None) -> TraceFingerprint:
    """Exact grid of trace invariants of the pair up to degree N (default n).

    Conjugation-invariant; shared by a pair and its semisimplification.
    """
    if N is None:
        N = pair.size
    if N < 0:
        raise BadIndex("the degree bound must be nonnegative")
    ctx = pair.ctx
    n = pair.size
    a_pows = [QMatrix.identity(ctx, n)]
    b_pows = [QMatrix.identity(ctx, n)]
    for _ in range(N):
        a_pows.append(a_pows[-1] * pair.A)
        b_pows.append(b_pows[-1] * pair.B)
    grid = tuple(
        tuple(_trace_of_product(a_pows[i], b_pows[j]) for j in range(N + 1))
        for i in range(N + 1)
    )
    return TraceFingerprint(N, grid)


# ---------------------------------------------------------------------------
# Semisimplification of stratum points
# ---------------------------------------------------------------------------

def _interval_cuts(A: QMatrix, B: QMatrix):
    """Positions where both matrices split block-diagonally."""
    n = A.nrows
    cuts = [0]
    for c in range(1, n):
        clean = True
        for i in range(c):
            for j in range(c, n):
                if not (A.rows[i][j].is_zero() and A.rows[j][i].is_zero()
                        and B.rows[i][j].is_zero() and B.rows[j][i].is_zero()):
                    clean = False
                    break
            if not clean:
                break
        if clean:
            cuts.append(c)
    cuts.append(n)
    return cuts


def _is_strictly_upper(M: QMatrix) -> bool:
    for i in range(M.nrows):
        for j in range(i + 1):
            if not M.rows[i][j].is_zero():
                return False
    return True


def _semisimplify_block(ctx, Ab: QMatrix, Bb: QMatrix):
    s = Ab.nrows
    a_diagonal = all(
        Ab.rows[i][j].is_zero() for i in range(s) for j in range(s) if i != j
    )
    if a_diagonal and all(not Ab.rows[k][k].is_zero() for k in range(s)):
        if _is_strictly_upper(Bb):
            # dense kind without the wraparound: the orbit closure reaches B = 0
            return Ab, QMatrix.zero(ctx, s, s)
        corner = Bb.rows[s - 1][0]
        lower_clean = all(
            Bb.rows[i][j].is_zero()
            for i in range(s) for j in range(i + 1)
            if (i, j) != (s - 1, 0)
        )
        if not corner.is_zero() and lower_clean and ctx.q_power(s) == ctx.one():
            # full-cycle kind: the orbit is already closed
            return Ab, Bb
        raise UnsupportedShape("unrecognized dense-kind summand")
    if Ab == jordan_block(ctx, s, ctx.zero()):
        upper = all(
            Bb.rows[i][j].is_zero() for i in range(s) for j in range(i)
        )
        if upper:
            diag = QMatrix.diagonal(ctx, [Bb.rows[k][k] for k in range(s)])
            return QMatrix.zero(ctx, s, s), diag
        raise UnsupportedShape("unrecognized nilpotent-kind summand")
    raise UnsupportedShape("summand is neither dense-kind nor nilpotent-kind")


def semisimplify(pair: MatrixPair) -> MatrixPair:
    """Closed-orbit representative of a direct sum of stratum summands.

    Splits the pair at every common block boundary, then per summand: dense
    kind with nilpotent B goes to (A, 0), nilpotent kind goes to
    (0, diag B), full-cycle kind stays.  Idempotent, and the trace
    fingerprint of the output equals that of the input.
    """
    ctx = pair.ctx
    n = pair.size
    if n == 0:
        return pair
    cuts = _interval_cuts(pair.A, pair.B)
    a_blocks = []
    b_blocks = []
    for lo, hi in zip(cuts, cuts[1:]):
        Ab = pair.A.submatrix(range(lo, hi), range(lo, hi))
        Bb = pair.B.submatrix(range(lo, hi), range(lo, hi))
        sa, sb = _semisimplify_block(ctx, Ab, Bb)
        a_blocks.append(sa)
        b_blocks.append(sb)
    return MatrixPair(direct_sum(*a_blocks), direct_sum(*b_blocks))
