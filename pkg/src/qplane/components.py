"""Component indices: enumeration, dimension formulas, theta, and samplers.

A component of the module variety is labeled by a pair of count vectors
(m, r): m_i counts blocks of the dense "diagonalizable A" kind with size i
(the last slot, at a root of unity, counting the extra full-cycle kind) and
r_j counts blocks of the "nilpotent A" kind with size j.  The label is
constrained by ||m|| + ||r|| = n where ||v|| weights a count by its size.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .commutant import MatrixPair, q_layered
from .errors import BadIndex, DegeneratePoint
from .jordan import jordan_block
from .matrices import QMatrix, conjugate, direct_sum, inverse, rank
from .scalars import FieldContext, INFINITE, q_equivalent, substitute_q_inverse
from .chains import restricted_partition_count, partition_count


def _norm(counts) -> int:
    return sum((i + 1) * c for i, c in enumerate(counts))


def _trim(counts) -> tuple:
    counts = list(counts)
    while counts and counts[-1] == 0:
        counts.pop()
    return tuple(counts)


@dataclass(frozen=True)
class ComponentIndex:
    """Label (m, r) of one irreducible component at a fixed q-regime.

    ell is a positive integer or INFINITE.  For finite ell the vectors are
    dense: m has length ell and r has length ell - 1 (shorter input is
    zero-padded).  For the infinite regime both are stored trimmed of
    trailing zeros.
    """

    ell: object
    m: tuple
    r: tuple

    def __init__(self, ell, m=(), r=()):
        m = tuple(int(c) for c in m)
        r = tuple(int(c) for c in r)
        if any(c < 0 for c in m) or any(c < 0 for c in r):
            raise BadIndex("block counts must be nonnegative")
        if not isinstance(ell, int) and ell == INFINITE:
            ell = INFINITE
        if ell is INFINITE:
            m, r = _trim(m), _trim(r)
        else:
            if not isinstance(ell, int) or ell < 1:
                raise BadIndex("the order must be a positive integer or INFINITE")
            if len(m) > ell or len(r) > ell - 1:
                raise BadIndex(
                    f"count vectors too long for order {ell}: "
                    f"|m|={len(m)}, |r|={len(r)}"
                )
            m = m + (0,) * (ell - len(m))
            r = r + (0,) * (ell - 1 - len(r))
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "r", r)

    @property
    def n(self) -> int:
        return _norm(self.m) + _norm(self.r)

    @property
    def m_top(self) -> int:
        """The full-cycle block count m_ell (zero in the infinite regime)."""
        if self.ell is INFINITE:
            return 0
        return self.m[self.ell - 1]

    def __add__(self, other: "ComponentIndex") -> "ComponentIndex":
        if not isinstance(other, ComponentIndex) or other.ell != self.ell:
            return NotImplemented
        pad = max(len(self.m), len(other.m))
        m = tuple(
            (self.m[i] if i < len(self.m) else 0)
            + (other.m[i] if i < len(other.m) else 0)
            for i in range(pad)
        )
        pad = max(len(self.r), len(other.r))
        r = tuple(
            (self.r[i] if i < len(self.r) else 0)
            + (other.r[i] if i < len(other.r) else 0)
            for i in range(pad)
        )
        return ComponentIndex(self.ell, m, r)


def _count_vectors(total: int, max_part: int):
    """All count tuples (c_1..c_max_part) with sum of i*c_i = total.

    Yields tuples of length max_part in a deterministic order (multiplicity
    of the largest part ascending, then recursively).
    """
    if max_part == 0:
        if total == 0:
            yield ()
        return
    if max_part == 1:
        yield (total,)
        return
    for top in range(total // max_part + 1):
        for rest in _count_vectors(total - top * max_part, max_part - 1):
            yield rest + (top,)


def enumerate_ML(ell, n: int):
    """All component indices (m, r) with ||m|| + ||r|| = n, duplicate-free."""
    if n < 0:
        raise BadIndex("n must be nonnegative")
    out = []
    if ell is INFINITE:
        for j in range(n, -1, -1):
            for m in _count_vectors(j, j):
                for r in _count_vectors(n - j, n - j):
                    out.append(ComponentIndex(ell, m, r))
    else:
        for j in range(n, -1, -1):
            for m in _count_vectors(j, min(ell, j) if j else 0):
                for r in _count_vectors(n - j, min(ell - 1, n - j)):
                    out.append(ComponentIndex(ell, m, r))
    return out


def count_ML(ell, n: int) -> int:
    """Closed-form component count: sum of p_{ell-1}(i) * p_ell(j), i+j = n."""
    if n < 0:
        raise BadIndex("n must be nonnegative")
    total = 0
    for i in range(n + 1):
        j = n - i
        if ell is INFINITE:
            total += partition_count(i) * partition_count(j)
        else:
            total += (restricted_partition_count(ell - 1, i)
                      * restricted_partition_count(ell, j))
    return total


def dim_component(idx: ComponentIndex) -> int:
    """Dimension of the component: n^2 + m_ell, or n^2 when q is not a root of unity."""
    n = idx.n
    return n * n + idx.m_top


def dim_component_via_CBS(idx: ComponentIndex) -> int:
    """Same dimension, recomputed from per-block dimensions and cross-terms.

    Each generator block of size s contributes its own stratum dimension
    (s^2, except the full-cycle kind which has s^2 + 1), plus n_i * n_j for
    every ordered pair of distinct blocks; the Hom correction terms vanish
    at generic points, so they are omitted.
    """
    ell = idx.ell
    sizes = []
    dims = []
    for i, c in enumerate(idx.m):
        size = i + 1
        block_dim = size * size
        if ell is not INFINITE and size == ell:
            block_dim += 1
        for _ in range(c):
            sizes.append(size)
            dims.append(block_dim)
    for j, c in enumerate(idx.r):
        size = j + 1
        for _ in range(c):
            sizes.append(size)
            dims.append(size * size)
    n = sum(sizes)
    cross = n * n - sum(s * s for s in sizes)
    return sum(dims) + cross


def theta_index(idx: ComponentIndex, ell=None) -> ComponentIndex:
    """The switch (m, r) -> ((r_1..r_{ell-1}, m_ell), (m_1..m_{ell-1})).

    In the infinite regime there is no full-cycle slot and the two vectors
    simply trade places.  Involutive.
    """
    if ell is not None and ell != idx.ell:
        raise BadIndex("index does not belong to the given order")
    if idx.ell is INFINITE:
        return ComponentIndex(INFINITE, idx.r, idx.m)
    ell = idx.ell
    new_m = idx.r + (idx.m[ell - 1],)
    new_r = idx.m[:ell - 1]
    return ComponentIndex(ell, new_m, new_r)


def theta_point(pair: MatrixPair) -> MatrixPair:
    """The point-level switch: (A, B) -> (B, A) transported along q -> 1/q.

    Swapping alone satisfies the inverted relation BA = (1/q)AB; applying
    the q -> 1/q substitution entrywise brings the result back into the
    original context, where it satisfies the standard relation again.
    """
    new_a = pair.B.map_entries(substitute_q_inverse)
    new_b = pair.A.map_entries(substitute_q_inverse)
    return MatrixPair(new_a, new_b)


# ---------------------------------------------------------------------------
# Random sampling of generic stratum points
# ---------------------------------------------------------------------------

class _RationalPool:
    """Seeded source of positive rationals, pairwise non-q-equivalent.

    Base values (eigenvalue seeds of the summands) are drawn with rejection
    so that no two are related by an integer power of q; filler values are
    merely nonzero.
    """

    def __init__(self, ctx, seed):
        self.ctx = ctx
        self.rng = random.Random(seed)
        self.bases = []

    def filler(self):
        num = self.rng.randint(1, 9)
        den = self.rng.randint(1, 9)
        return self.ctx.rational(Fraction(num, den))

    def base(self):
        while True:
            cand = self.filler()
            if all(q_equivalent(cand, b) is None for b in self.bases):
                self.bases.append(cand)
                return cand


def _u_block(ctx, size, pool):
    """One dense-kind summand: A = diag(a, a/q, ...), B strictly upper cyclic.

    At size == ell (finite order only) B gains the wraparound corner entry;
    it is chosen as beta^ell divided by the superdiagonal product so that
    the spectrum of B is {beta q^k}, rational times a root of unity, and
    stays inside the coefficient field.
    """
    a = pool.base()
    q = ctx.q()
    qinv = q.inverse()
    diag = []
    cur = a
    for _ in range(size):
        diag.append(cur)
        cur = cur * qinv
    A = QMatrix.diagonal(ctx, diag)
    zero = ctx.zero()
    rows = [[zero] * size for _ in range(size)]
    supers = [pool.filler() for _ in range(size - 1)]
    for k, b in enumerate(supers):
        rows[k][k + 1] = b
    full_cycle = ctx.ell is not INFINITE and size == ctx.ell
    if full_cycle:
        beta = pool.base()
        prod = ctx.one()
        for b in supers:
            prod = prod * b
        corner = (beta ** size) / prod
        rows[size - 1][0] = corner
    B = QMatrix(ctx, rows)
    return A, B


def _v_block(ctx, size, pool):
    """One nilpotent-kind summand: A = J_size(0), B layered with b_1 a base."""
    A = jordan_block(ctx, size, ctx.zero())
    v = [pool.base()] + [pool.filler() for _ in range(size - 1)]
    B = q_layered(size, size, v, ctx=ctx)
    return A, B


def sample_point(idx: ComponentIndex, seed=0) -> MatrixPair:
    """A generic point of the dense stratum of the component idx.

    Block-diagonal direct sum of m_i dense-kind and r_j nilpotent-kind
    summands, with all eigenvalue bases pairwise non-q-equivalent.  The
    result is deterministic in (idx, seed) and satisfies AB = qBA exactly.
    """
    ctx = FieldContext.for_order(idx.ell)
    pool = _RationalPool(ctx, seed)
    a_blocks = []
    b_blocks = []
    for i, c in enumerate(idx.m):
        for _ in range(c):
            A, B = _u_block(ctx, i + 1, pool)
            a_blocks.append(A)
            b_blocks.append(B)
    for j, c in enumerate(idx.r):
        for _ in range(c):
            A, B = _v_block(ctx, j + 1, pool)
            a_blocks.append(A)
            b_blocks.append(B)
    if not a_blocks:
        return MatrixPair(QMatrix.zero(ctx, 0, 0), QMatrix.zero(ctx, 0, 0))
    return MatrixPair(direct_sum(*a_blocks), direct_sum(*b_blocks))


# ---------------------------------------------------------------------------
# Jacobian rank of the stratum parametrizations
# ---------------------------------------------------------------------------

def _random_invertible(ctx, size, rng):
    while True:
        rows = [
            [ctx.rational(Fraction(rng.randint(-5, 5))) for _ in range(size)]
            for _ in range(size)
        ]
        g = QMatrix(ctx, rows)
        if rank(g) == size:
            return g


def _flatten_pair(Xa: QMatrix, Xb: QMatrix):
    out = []
    for row in Xa.rows:
        out.extend(row)
    for row in Xb.rows:
        out.extend(row)
    return out


def _jacobian_rank_once(kind, size, ctx, rng) -> int:
    pool = _RationalPool(ctx, rng.randint(0, 2 ** 30))
    if kind == "D":
        A, B = _u_block(ctx, size, pool)
    else:
        A, B = _v_block(ctx, size, pool)
    g = _random_invertible(ctx, size, rng)
    ginv = inverse(g)
    Abar = g * A * ginv
    Bbar = g * B * ginv

    rows = []
    zero = ctx.zero()
    one = ctx.one()
    # conjugation directions: d/dt of exp(tY) X exp(-tY) = [Y, X]
    for s in range(size):
        for t in range(size):
            grid = [[zero] * size for _ in range(size)]
            grid[s][t] = one
            Y = QMatrix(ctx, grid)
            rows.append(_flatten_pair(Y * Abar - Abar * Y, Y * Bbar - Bbar * Y))
    Z = QMatrix.zero(ctx, size, size)
    if kind == "D":
        # the A-scale direction: A = a * diag(1, 1/q, ...), so dA/da = A / a
        qinv = ctx.q().inverse()
        diag = []
        cur = one
        for _ in range(size):
            diag.append(cur)
            cur = cur * qinv
        dA = QMatrix.diagonal(ctx, diag)
        rows.append(_flatten_pair(g * dA * ginv, Z))
        positions = [(k, k + 1) for k in range(size - 1)]
        if ctx.ell is not INFINITE and size == ctx.ell:
            positions.append((size - 1, 0))
        for (rr, cc) in positions:
            grid = [[zero] * size for _ in range(size)]
            grid[rr][cc] = one
            rows.append(_flatten_pair(Z, g * QMatrix(ctx, grid) * ginv))
    else:
        for k in range(size):
            e = [zero] * size
            e[k] = one
            Lk = q_layered(size, size, e, ctx=ctx)
            rows.append(_flatten_pair(Z, g * Lk * ginv))
    return rank(QMatrix(ctx, rows))


def parametrization_jacobian_rank(kind: str, i: int, ell, seed=0) -> int:
    """Exact rank of the stratum parametrization differential at a random point.

    kind "D" covers the dense strata (expected rank i^2, or ell^2 + 1 for
    the full-cycle stratum); kind "N" the nilpotent strata (expected i^2).
    Resamples a few times if an unlucky point underperforms and raises
    DegeneratePoint if the rank stays below the expected value.
    """
    if kind not in ("D", "N"):
        raise ValueError("kind must be 'D' or 'N'")
    if i < 1:
        raise BadIndex("block size must be at least 1")
    if ell is not INFINITE:
        if kind == "D" and i > ell:
            raise BadIndex("dense strata have size at most ell")
        if kind == "N" and i > ell - 1:
            raise BadIndex("nilpotent strata have size at most ell - 1")
    ctx = FieldContext.for_order(ell)
    expected = i * i
    if kind == "D" and ell is not INFINITE and i == ell:
        expected += 1
    rng = random.Random(seed)
    best = -1
    for _ in range(4):
        got = _jacobian_rank_once(kind, i, ctx, rng)
        best = max(best, got)
        if best >= expected:
            return best
    raise DegeneratePoint(
        f"rank stayed at {best}, expected {expected}; try another seed"
    )
