import random
from fractions import Fraction

import pytest

from qplane import (EigenvaluesNotFound, FieldContext, JordanSpec, QMatrix,
                    block_jordan, check_partition, conjugate, jordan_block,
                    jordan_data, q_classes, q_equivalent, rank, realize,
                    transpose_partition)

C3 = FieldContext.root_of_unity(3)
GEN = FieldContext.generic()


def random_invertible(ctx, n, rng):
    while True:
        g = QMatrix.from_rational_rows(
            ctx, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        if rank(g) == n:
            return g


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

def test_check_partition_rejects_bad_input():
    with pytest.raises(ValueError):
        check_partition([1, 2])
    with pytest.raises(ValueError):
        check_partition([2, 0])
    assert check_partition([3, 1, 1]) == (3, 1, 1)


def test_transpose_partition_examples():
    assert transpose_partition([3, 1]) == (2, 1, 1)
    assert transpose_partition([]) == ()
    assert transpose_partition([4]) == (1, 1, 1, 1)


def test_transpose_partition_involution():
    rng = random.Random(0)
    for _ in range(100):
        nu = sorted((rng.randint(1, 6) for _ in range(rng.randint(0, 5))),
                    reverse=True)
        assert transpose_partition(transpose_partition(nu)) == tuple(nu)


# ---------------------------------------------------------------------------
# realize
# ---------------------------------------------------------------------------

def test_realize_single_nilpotent_block():
    spec = JordanSpec(C3, [(C3.zero(), [2])])
    assert realize(spec) == jordan_block(C3, 2, C3.zero())


def test_realize_q_commuting_diagonal():
    a = GEN.rational(2)
    spec = JordanSpec(GEN, [(a, [1]), (a / GEN.q(), [1])])
    M = realize(spec)
    assert M.nrows == 2
    assert M[0, 1].is_zero() and M[1, 0].is_zero()
    assert {M[0, 0], M[1, 1]} == {a, a / GEN.q()}


def test_realize_partition_gives_multiple_blocks():
    a = C3.rational(5)
    spec = JordanSpec(C3, [(a, [2, 1])])
    M = realize(spec)
    assert M.nrows == 3
    assert M[0, 1] == C3.one()
    assert M[1, 2].is_zero()
    assert M.trace() == C3.rational(15)


def test_jordan_block_trace():
    a = GEN.q() + GEN.one()
    assert jordan_block(GEN, 2, a).trace() == a + a


def test_block_jordan_is_similar_to_repeated_blocks():
    a = C3.rational(2)
    M = block_jordan(C3, 2, 3, a)
    assert jordan_data(M) == JordanSpec(C3, [(a, [2, 2, 2])])


# ---------------------------------------------------------------------------
# jordan_data
# ---------------------------------------------------------------------------

def test_jordan_data_nilpotent_block():
    spec = jordan_data(jordan_block(C3, 3, C3.zero()))
    assert spec == JordanSpec(C3, [(C3.zero(), [3])])


def test_jordan_data_recovers_conjugated_spec():
    rng = random.Random(1)
    a = GEN.rational(Fraction(2, 3))
    spec = JordanSpec(GEN, [(a, [2, 1])])
    M = realize(spec)
    for _ in range(5):
        g = random_invertible(GEN, 3, rng)
        assert jordan_data(conjugate(g, M)) == spec


def test_jordan_data_irrational_spectrum_raises():
    # companion matrix of x^2 - 2: no eigenvalue in Q(zeta_3)
    A = QMatrix.from_rational_rows(C3, [[0, 2], [1, 0]])
    with pytest.raises(EigenvaluesNotFound):
        jordan_data(A)


def test_jordan_data_accepts_hints():
    A = QMatrix.from_rational_rows(C3, [[0, 2], [1, 0]])
    # still unfindable even with an unrelated hint
    with pytest.raises(EigenvaluesNotFound):
        jordan_data(A, hint_eigenvalues=[C3.rational(7)])


def test_jordan_data_mixed_q_orbit():
    q = GEN.q()
    a = GEN.rational(3)
    spec = JordanSpec(GEN, [(a, [2]), (a / q, [1, 1]), (GEN.zero(), [1])])
    M = realize(spec)
    rng = random.Random(2)
    g = random_invertible(GEN, 5, rng)
    assert jordan_data(conjugate(g, M)) == spec


def test_round_trip_random_specs():
    rng = random.Random(3)
    for trial in range(20):
        ell = rng.choice([2, 3, 4])
        ctx = FieldContext.root_of_unity(ell)
        q = ctx.q()
        base = ctx.rational(rng.randint(1, 5))
        blocks = []
        total = 0
        for k in range(ell):
            if rng.random() < 0.5:
                continue
            parts = sorted((rng.randint(1, 2) for _ in range(rng.randint(1, 2))),
                           reverse=True)
            eigenvalue = base * q ** k
            blocks.append((eigenvalue, parts))
            total += sum(parts)
        if not blocks or total > 8:
            continue
        spec = JordanSpec(ctx, blocks)
        assert jordan_data(realize(spec)) == spec


# ---------------------------------------------------------------------------
# q_classes
# ---------------------------------------------------------------------------

def test_q_classes_inequivalent_eigenvalues_split():
    spec = JordanSpec(C3, [(C3.rational(2), [1]), (C3.rational(3), [1])])
    classes = q_classes(spec, C3)
    assert len(classes) == 2
    assert all(not cls.is_nilpotent for cls in classes)


def test_q_classes_orbit_groups_with_nilpotent_tail():
    q = C3.q()
    a = C3.rational(2)
    spec = JordanSpec(C3, [(a, [2]), (a / q, [1]), (C3.zero(), [1])])
    classes = q_classes(spec, C3)
    assert len(classes) == 2
    cls = classes[0]
    assert cls.base == a
    assert cls.partitions == ((2,), (1,), ())
    assert classes[1].is_nilpotent
    assert classes[1].partitions == ((1,),)


def test_q_classes_base_at_order_two():
    c2 = FieldContext.root_of_unity(2)
    spec = JordanSpec(c2, [(c2.one(), [1]), (c2.rational(-1), [1])])
    classes = q_classes(spec, c2)
    assert len(classes) == 1
    assert classes[0].base == c2.one()
    assert classes[0].partitions == ((1,), (1,))


def test_q_classes_generic_span():
    q = GEN.q()
    three = GEN.rational(3)
    spec = JordanSpec(GEN, [(three * q ** 5, [1]), (three * q ** 2, [2])])
    classes = q_classes(spec, GEN)
    assert len(classes) == 1
    cls = classes[0]
    assert cls.base == three * q ** 5
    assert cls.partitions == ((1,), (), (), (2,))


def test_q_classes_bases_pairwise_inequivalent():
    rng = random.Random(4)
    for _ in range(20):
        ell = rng.choice([2, 3, 4, 5])
        ctx = FieldContext.root_of_unity(ell)
        q = ctx.q()
        blocks = {}
        for _ in range(rng.randint(1, 4)):
            value = ctx.rational(rng.randint(1, 6)) * q ** rng.randint(0, ell - 1)
            blocks[value] = [rng.randint(1, 3)]
        spec = JordanSpec(ctx, list(blocks.items()))
        classes = q_classes(spec, ctx)
        bases = [cls.base for cls in classes if not cls.is_nilpotent]
        for i in range(len(bases)):
            for j in range(i + 1, len(bases)):
                assert q_equivalent(bases[i], bases[j]) is None
        # every input block lands in exactly one class
        placed = sum(sum(1 for p in cls.partitions if p) for cls in classes)
        assert placed == len(spec.blocks)
