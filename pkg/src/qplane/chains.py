"""Chain decomposition of q-orbits and partition counting.

A q-chain with base a and length k is the multiset {a, a/q, ..., a/q^(k-1)}.
Every finite multiset of nonzero scalars splits uniquely into q-chains that
are maximal (no two chains could be merged into a longer one); the greedy
longest-run-first extraction below produces that decomposition.  The
per-length chain counts of a single q-equivalence class depend only on the
multiplicity vector of the class and are also computed in closed form by
``associated_sequence``.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import LengthMismatch, ZeroElement
from .scalars import INFINITE, QScalar, canonical_key, q_equivalent


@lru_cache(maxsize=None)
def restricted_partition_count(s: int, t: int) -> int:
    """Number of partitions of t with every part at most s.

    Conventions: p_s(0) = 1 for all s >= 0, and p_0(t) = 0 for t > 0.
    """
    if s < 0 or t < 0:
        raise ValueError("partition counts need nonnegative arguments")
    if t == 0:
        return 1
    if s == 0:
        return 0
    if s > t:
        s = t
    return restricted_partition_count(s - 1, t) + restricted_partition_count(s, t - s)


def partition_count(t: int) -> int:
    """Number of partitions of t (no restriction on parts)."""
    return restricted_partition_count(t, t)


def _window_min_sums(counts, ell):
    """f(i) = sum over start positions of the minimum of a width-(i+1) window.

    Windows are cyclic when ell is finite and are truncated by zeros outside
    the support when ell is infinite (an out-of-range slot counts as 0, so
    any window leaving the support contributes nothing).
    """
    s = len(counts)
    f = []
    if ell is INFINITE:
        for i in range(s + 1):
            total = 0
            for j in range(s - i):
                total += min(counts[j:j + i + 1])
            f.append(total)
        f.append(0)
    else:
        for i in range(ell):
            total = 0
            for j in range(ell):
                total += min(counts[(j + k) % ell] for k in range(i + 1))
            f.append(total)
        f.append(ell * min(counts))
    return f


def associated_sequence(counts, ell):
    """Per-length chain counts (m_1, ..., m_L) of one q-equivalence class.

    ``counts`` lists the multiplicities of base*q^0, base*q^(-1), ... for a
    fixed base; cyclically when ell is finite (the vector must then have
    length ell), linearly when ell is INFINITE.  Entry m_i is the number of
    chains of length i in the maximal decomposition; for finite ell the last
    slot counts full cycles.
    """
    counts = tuple(int(c) for c in counts)
    if any(c < 0 for c in counts):
        raise ValueError("multiplicities must be nonnegative")
    if ell is INFINITE:
        top = len(counts)
    else:
        if len(counts) != ell:
            raise LengthMismatch(
                f"cyclic count vector must have length {ell}, got {len(counts)}"
            )
        top = ell
    if top == 0:
        return ()
    f = _window_min_sums(counts, ell)
    m = [0] * top
    m[top - 1] = min(counts)
    for i in range(1, top):
        m[i - 1] = f[i - 1] - 2 * f[i] + f[i + 1]
    return tuple(m)


@dataclass(frozen=True)
class ChainDecomposition:
    """Maximal q-chain decomposition of a multiset of nonzero scalars.

    chains holds (base, length) pairs; the chain with base a and length k
    covers a, a/q, ..., a/q^(k-1).  length_counts[i-1] is the number of
    chains of length i (padded to length ell when ell is finite, trimmed to
    the longest chain otherwise).
    """

    chains: tuple
    length_counts: tuple

    @property
    def size(self) -> int:
        return sum(length for _, length in self.chains)


def _class_groups(elements):
    """Group scalars by q-equivalence; yields (reference, [(offset, x), ...])."""
    groups = []
    for x in elements:
        for ref, members in groups:
            m = q_equivalent(x, ref)
            if m is not None:
                members.append((m, x))
                break
        else:
            groups.append((x, [(0, x)]))
    return groups


def _extract_chains(offsets, ell):
    """Greedy longest-run-first extraction from an offset multiset.

    Offsets are exponents relative to the class reference (residues mod ell
    in the cyclic case).  A chain topped at offset t occupies t, t-1, ...;
    returns (top offset, length) pairs in extraction order.
    """
    mult = {}
    for t in offsets:
        mult[t] = mult.get(t, 0) + 1
    out = []
    while mult:
        best = None
        for t in mult:
            length = 0
            if ell is INFINITE:
                while (t - length) in mult:
                    length += 1
            else:
                while length < ell and ((t - length) % ell) in mult:
                    length += 1
            if best is None or length > best[0] or (length == best[0] and t < best[1]):
                best = (length, t)
        length, t = best
        out.append((t, length))
        for k in range(length):
            off = (t - k) % ell if ell is not INFINITE else t - k
            mult[off] -= 1
            if mult[off] == 0:
                del mult[off]
    return out


def chain_decompose(elements, ctx=None) -> ChainDecomposition:
    """Decompose a multiset of nonzero scalars into maximal q-chains.

    Greedy longest-chain-first per q-equivalence class; among equal-length
    candidates the smallest top exponent wins.  Raises ZeroElement if the
    multiset contains zero.
    """
    elements = list(elements)
    for x in elements:
        if not isinstance(x, QScalar):
            raise TypeError("chain_decompose expects QScalar elements")
        if x.is_zero():
            raise ZeroElement("q-chains are made of nonzero scalars")
    if ctx is None and elements:
        ctx = elements[0].ctx
    if ctx is None:
        return ChainDecomposition(chains=(), length_counts=())
    ell = ctx.ell

    # Re-anchor each class at its canonically smallest member so the output
    # does not depend on the input order.
    groups = []
    for ref, members in _class_groups(elements):
        anchor = min((x for _, x in members), key=canonical_key)
        shift = q_equivalent(ref, anchor)
        offsets = [
            (m + shift) % ell if ell is not INFINITE else m + shift
            for m, _ in members
        ]
        groups.append((anchor, offsets))
    groups.sort(key=lambda g: canonical_key(g[0]))

    chains = []
    for anchor, offsets in groups:
        for top, length in _extract_chains(offsets, ell):
            chains.append((anchor * ctx.q_power(top), length))

    if ell is INFINITE:
        longest = max((length for _, length in chains), default=0)
    else:
        longest = ell
    length_counts = [0] * longest
    for _, length in chains:
        length_counts[length - 1] += 1
    return ChainDecomposition(chains=tuple(chains), length_counts=tuple(length_counts))
