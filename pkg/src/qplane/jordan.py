"""Jordan data: build matrices from Jordan specifications and recover them.

A JordanSpec is a multiset of (eigenvalue, partition) pairs; realize() turns
it into the block-diagonal Jordan matrix and jordan_data() inverts that up
to similarity, using exact rank sequences.  q_classes() groups a spec's
eigenvalues into q-equivalence classes with partitions aligned at the
exponents 0, ..., ell-1 (descending powers of q from a chosen base).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EigenvaluesNotFound, NotSquare
from .matrices import QMatrix, char_poly, direct_sum, rank
from .scalars import FieldContext, QScalar, canonical_key, q_equivalent

# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------


def check_partition(nu) -> tuple:
    nu = tuple(int(p) for p in nu)
    if any(p <= 0 for p in nu):
        raise ValueError(f"partition parts must be positive: {nu}")
    if any(nu[i] < nu[i + 1] for i in range(len(nu) - 1)):
        raise ValueError(f"partition must be weakly decreasing: {nu}")
    return nu


def transpose_partition(nu):
    """Conjugate partition: column lengths of the Young diagram."""
    nu = check_partition(nu)
    if not nu:
        return ()
    out = [0] * nu[0]
    for part in nu:
        for i in range(part):
            out[i] += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# Jordan specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JordanSpec:
    """Multiset of (eigenvalue, partition) pairs, canonically ordered.

    Blocks are sorted by the eigenvalue's canonical key at construction so
    that equal multisets compare equal.
    """

    ctx: FieldContext
    blocks: tuple

    def __init__(self, ctx, blocks):
        normalized = []
        seen = []
        for eigenvalue, partition in blocks:
            partition = check_partition(partition)
            if not partition:
                raise ValueError("empty partition in JordanSpec")
            if any(eigenvalue == other for other in seen):
                raise ValueError("repeated eigenvalue in JordanSpec")
            seen.append(eigenvalue)
            normalized.append((eigenvalue, partition))
        normalized.sort(key=lambda blk: canonical_key(blk[0]))
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "blocks", tuple(normalized))

    @property
    def size(self) -> int:
        return sum(sum(partition) for _, partition in self.blocks)

    def single_blocks(self):
        """Flatten to a list of (eigenvalue, block size), one per Jordan block."""
        out = []
        for eigenvalue, partition in self.blocks:
            for part in partition:
                out.append((eigenvalue, part))
        return out


def jordan_block(ctx: FieldContext, size: int, eigenvalue: QScalar) -> QMatrix:
    """J_size(eigenvalue): eigenvalue on the diagonal, 1 on the superdiagonal."""
    z, o = ctx.zero(), ctx.one()
    rows = []
    for i in range(size):
        row = [z] * size
        row[i] = eigenvalue
        if i + 1 < size:
            row[i + 1] = o
        rows.append(row)
    return QMatrix(ctx, rows) if size else QMatrix.zero(ctx, 0, 0)


def block_jordan(ctx: FieldContext, size: int, multiplicity: int,
                 eigenvalue: QScalar) -> QMatrix:
    """The (size*multiplicity)-square matrix with identity blocks on the
    block superdiagonal: similar to `multiplicity` copies of J_size(eigenvalue)."""
    n = size * multiplicity
    z, o = ctx.zero(), ctx.one()
    rows = [[z] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = eigenvalue
    for blk in range(size - 1):
        for t in range(multiplicity):
            rows[blk * multiplicity + t][(blk + 1) * multiplicity + t] = o
    return QMatrix(ctx, rows) if n else QMatrix.zero(ctx, 0, 0)


def realize(spec: JordanSpec) -> QMatrix:
    """Block-diagonal matrix of Jordan blocks in the order given by `spec`."""
    pieces = [jordan_block(spec.ctx, size, eigenvalue)
              for eigenvalue, size in spec.single_blocks()]
    if not pieces:
        return QMatrix.zero(spec.ctx, 0, 0)
    return direct_sum(*pieces)


# ---------------------------------------------------------------------------
# polynomials over QScalar (used for root discovery)
# ---------------------------------------------------------------------------


def _qp_trim(c):
    c = list(c)
    while c and c[-1].is_zero():
        c.pop()
    return c


def _qp_divmod(a, b):
    a = _qp_trim(a)
    b = _qp_trim(b)
    inv = b[-1].inverse()
    quot = [None] * max(len(a) - len(b) + 1, 0)
    zero = b[-1].ctx.zero()
    for i in range(len(quot)):
        quot[i] = zero
    for k in range(len(a) - len(b), -1, -1):
        f = a[k + len(b) - 1] * inv
        if not f.is_zero():
            quot[k] = f
            for j in range(len(b)):
                a[k + j] = a[k + j] - f * b[j]
    return _qp_trim(quot), _qp_trim(a)


def _qp_gcd(a, b):
    a, b = _qp_trim(a), _qp_trim(b)
    while b:
        a, b = b, _qp_divmod(a, b)[1]
    if a:
        inv = a[-1].inverse()
        a = [x * inv for x in a]
    return a


def _qp_derivative(a):
    return [a[k] * k for k in range(1, len(a))]


def _qp_eval(a, x: QScalar) -> QScalar:
    acc = x.ctx.zero()
    for coeff in reversed(a):
        acc = acc * x + coeff
    return acc


def _squarefree_part(p):
    """p / gcd(p, p'): same roots, multiplicity one, monic."""
    d = _qp_derivative(p)
    g = _qp_gcd(p, d)
    if len(g) <= 1:
        s = _qp_trim(p)
    else:
        s = _qp_divmod(p, g)[0]
    inv = s[-1].inverse()
    return [x * inv for x in s]


# ---------------------------------------------------------------------------
# rational root extraction (exact, used on coordinate projections)
# ---------------------------------------------------------------------------


def _divisors(n: int):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


def rational_roots(coeffs):
    """All rational roots of a nonzero polynomial with Fraction coefficients."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("rational_roots needs a nonzero polynomial")
    roots = set()
    low = 0
    while coeffs[low] == 0:
        low += 1
    if low:
        roots.add(Fraction(0))
        coeffs = coeffs[low:]
    if len(coeffs) <= 1:
        return roots
    # clear denominators
    denom_lcm = 1
    for c in coeffs:
        denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in coeffs]
    for p in _divisors(ints[0]):
        for s in _divisors(ints[-1]):
            for cand in (Fraction(p, s), Fraction(-p, s)):
                if cand in roots:
                    continue
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.add(cand)
    return roots


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# root discovery over the two regimes
# ---------------------------------------------------------------------------


def _root_candidates_cyclotomic(sf, ctx):
    """Rational candidates from the coordinate projections of the squarefree
    polynomial (a rational root must kill every coordinate simultaneously)."""
    deg = len(sf[0].coeffs) if sf else 0
    for t in range(deg):
        coord = [c.coeffs[t] for c in sf]
        if any(coord):
            return {ctx.rational(r) for r in rational_roots(coord)}
    return set()


def _root_candidates_generic(sf, ctx):
    """Monomial candidates c*q^k (c rational) for a monic squarefree
    polynomial over Q(q).  The exponent window is bounded by the top/bottom
    q-degrees of the coefficients."""
    d = len(sf) - 1
    if d <= 0:
        return set()
    # clear denominators: S_j in Q[q]
    den_prod = (Fraction(1),)
    from .scalars import _pmul, _ptrim  # dense rational polynomial helpers
    for c in sf:
        den_prod = _pmul(den_prod, c.den)
    cleared = []
    for c in sf:
        num = c.num
        rest = _qp_poly_quotient(den_prod, c.den)
        cleared.append(_pmul(num, rest))
    bound = 1
    for j in range(d):  # the leading coefficient is excluded from the bound
        poly = cleared[j]
        if not poly:
            continue
        top = len(poly) - 1
        low = next(i for i, x in enumerate(poly) if x)
        ref_top = len(cleared[d]) - 1
        ref_low = next(i for i, x in enumerate(cleared[d]) if x)
        bound = max(bound, abs(top - ref_top), abs(low - ref_low))
    candidates = set()
    shift = bound * d + max(len(p) for p in cleared)
    for k in range(-bound, bound + 1):
        # coefficient of q^e in sum_j S_j(q) c^j q^(k j), shifted nonnegative
        table = {}
        for j, poly in enumerate(cleared):
            for e, coeff in enumerate(poly):
                if coeff:
                    slot = table.setdefault(e + k * j + shift, {})
                    slot[j] = slot.get(j, Fraction(0)) + coeff
        for key in sorted(table):
            poly_in_c = [Fraction(0)] * (max(table[key]) + 1)
            for j, coeff in table[key].items():
                poly_in_c[j] = coeff
            if any(poly_in_c):
                for c0 in rational_roots(poly_in_c):
                    if c0 != 0:
                        candidates.add(ctx.rational(c0) * ctx.q_power(k))
                break
    return candidates


def _qp_poly_quotient(num, den):
    """Exact quotient of dense rational polynomials (num divisible by den)."""
    from .scalars import _pdivmod
    q, r = _pdivmod(num, den)
    assert not r
    return q


def _discover_roots(sf, ctx, hints):
    """All roots of the squarefree polynomial findable by the strategy:
    rational-coordinate roots, q-orbits of found roots, hints, and the
    diagonal shortcut handled by the caller."""
    roots = set()

    def try_add(x):
        if any(x == r for r in roots):
            return False
        if _qp_eval(sf, x).is_zero():
            roots.add(x)
            return True
        return False

    try_add(ctx.zero())
    for h in hints:
        try_add(h)
    if ctx.is_generic:
        for cand in _root_candidates_generic(sf, ctx):
            try_add(cand)
    else:
        for cand in _root_candidates_cyclotomic(sf, ctx):
            try_add(cand)
    # close under the q-orbit
    q = ctx.q()
    frontier = [r for r in roots if not r.is_zero()]
    while frontier:
        base = frontier.pop()
        if ctx.is_generic:
            for step in (q, q.inverse()):
                walk = base * step
                while try_add(walk):
                    frontier.append(walk)
                    walk = walk * step
        else:
            power = base
            for _ in range(ctx.ell - 1):
                power = power * q
                if try_add(power):
                    frontier.append(power)
    return roots


def jordan_data(A: QMatrix, hint_eigenvalues=()) -> JordanSpec:
    """Recover the Jordan specification of A from exact rank sequences.

    The number of blocks of size >= k at eigenvalue lam equals
    rank((A - lam I)^(k-1)) - rank((A - lam I)^k).  Eigenvalues are found by
    the discoverable-root strategy; if the characteristic polynomial does
    not split over the field this raises EigenvaluesNotFound.
    """
    if not A.is_square():
        raise NotSquare("jordan_data needs a square matrix")
    n = A.nrows
    ctx = A.ctx
    if n == 0:
        return JordanSpec(ctx, ())
    poly = char_poly(A)
    sf = _squarefree_part(poly)
    hints = list(hint_eigenvalues)
    hints.extend(A.rows[i][i] for i in range(n))  # cheap extra candidates
    roots = _discover_roots(sf, ctx, hints)
    blocks = []
    covered = 0
    for lam in sorted(roots, key=canonical_key):
        shifted = A - QMatrix.identity(ctx, n).scale(lam)
        ranks = [n]
        power = QMatrix.identity(ctx, n)
        while True:
            power = power * shifted
            ranks.append(rank(power))
            if ranks[-1] == ranks[-2]:
                break
        sizes = []
        counts = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
        counts.append(0)
        for k in range(len(counts) - 1, 0, -1):
            sizes.extend([k] * (counts[k - 1] - counts[k]))
        sizes.sort(reverse=True)
        if sizes:
            blocks.append((lam, tuple(sizes)))
            covered += sum(sizes)
    if covered != n:
        raise EigenvaluesNotFound(
            f"only {covered} of {n} dimensions of the spectrum were resolved "
            "in the field; pass hint_eigenvalues for the rest")
    return JordanSpec(ctx, blocks)


# ---------------------------------------------------------------------------
# q-equivalence classes of a spec
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QClass:
    """One q-equivalence class of eigenvalues with aligned partitions.

    ``base`` is None for the nilpotent class (partitions then has exactly
    one entry: the partition of the 0-eigenvalue).  Otherwise partitions[i]
    is the partition attached to base * q^(-i); empty tuples mark absent
    eigenvalues.  For the root-of-unity regime the alignment always has
    length ell; for the generic regime it spans the occupied exponent range.
    """

    base: QScalar | None
    partitions: tuple

    @property
    def is_nilpotent(self) -> bool:
        return self.base is None


def q_classes(spec: JordanSpec, ctx: FieldContext):
    """Group the eigenvalues of `spec` into q-classes, aligned as in the
    column construction (base at exponent 0, then descending powers)."""
    nilpotent = None
    nonzero = []
    for eigenvalue, partition in spec.blocks:
        if eigenvalue.is_zero():
            nilpotent = partition
        else:
            nonzero.append((eigenvalue, partition))
    groups = []  # list of lists of (offset relative to group ref, eigenvalue, partition)
    for eigenvalue, partition in nonzero:
        for group in groups:
            ref = group[0][1]
            m = q_equivalent(eigenvalue, ref)
            if m is not None:
                group.append((m, eigenvalue, partition))
                break
        else:
            groups.append([(0, eigenvalue, partition)])
    classes = []
    for group in groups:
        classes.append(_align_group(group, ctx))
    classes.sort(key=lambda cls: canonical_key(cls.base))
    if nilpotent is not None:
        classes.append(QClass(base=None, partitions=(nilpotent,)))
    return classes


def _align_group(group, ctx):
    """Choose a base and produce the aligned partition tuple for one class.

    Base rule: a member whose predecessor slot (base*q) is unoccupied, so
    the base starts a maximal run; when the class occupies a full cycle
    every slot is occupied and the member with the lexicographically
    smallest canonical coefficient vector is used (ties likewise).
    """
    ell = ctx.ell
    if ctx.is_generic:
        # member = ref * q^m; base = member with the largest exponent
        top = max(m for m, _, _ in group)
        span = top - min(m for m, _, _ in group) + 1
        slots = [()] * span
        base = None
        for m, eigenvalue, partition in group:
            slots[top - m] = partition
            if m == top:
                base = eigenvalue
        return QClass(base=base, partitions=tuple(slots))
    occupied = {m % ell for m, _, _ in group}
    candidates = []
    for m, eigenvalue, partition in group:
        starts_run = ((m + 1) % ell) not in occupied
        candidates.append((not starts_run, canonical_key(eigenvalue), m, eigenvalue))
    candidates.sort()
    base_exp, base = candidates[0][2], candidates[0][3]
    slots = [()] * ell
    for m, eigenvalue, partition in group:
        # eigenvalue = base * q^(m - base_exp); slot k holds base * q^(-k)
        slots[(base_exp - m) % ell] = partition
    return QClass(base=base, partitions=tuple(slots))
