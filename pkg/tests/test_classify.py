import random

import pytest

from qplane import (BadIndex, ComponentIndex, FieldContext, INFINITE,
                    JordanSpec, MatrixPair, QMatrix, classify,
                    classify_nilpotent_block, classify_q_class, conjugate,
                    jordan_block, q_classes, q_layered, qcommutant_basis,
                    rank, realize)

GEN = FieldContext.generic()
C2 = FieldContext.root_of_unity(2)
C3 = FieldContext.root_of_unity(3)


def pair_with_random_commutant_member(A, rng):
    basis = qcommutant_basis(A)
    B = QMatrix.zero(A.ctx, A.nrows, A.nrows)
    for element in basis:
        B = B + element.scale(A.ctx.rational(rng.randint(-3, 3)))
    return MatrixPair(A, B)


# ---------------------------------------------------------------------------
# nilpotent blocks
# ---------------------------------------------------------------------------

def test_nilpotent_block_with_wraparound():
    out = classify_nilpotent_block(4, 1, 3)
    assert out == ComponentIndex(3, m=(0, 0, 1), r=(1, 0))


def test_nilpotent_block_doubled():
    out = classify_nilpotent_block(3, 2, 2)
    assert out == ComponentIndex(2, m=(0, 2), r=(2,))


def test_nilpotent_block_below_ell():
    for ell in (3, 4, 5):
        for s in range(1, ell):
            out = classify_nilpotent_block(s, 1, ell)
            assert sum(out.m) == 0
            assert out.r[s - 1] == 1
            assert sum(out.r) == 1


def test_nilpotent_block_exact_multiple():
    out = classify_nilpotent_block(6, 1, 3)
    assert out == ComponentIndex(3, m=(0, 0, 2), r=(0, 0))


def test_nilpotent_block_infinite_regime():
    out = classify_nilpotent_block(4, 2, INFINITE)
    assert sum(out.m) == 0
    assert out.r == (0, 0, 0, 2)


# ---------------------------------------------------------------------------
# nonzero q-classes
# ---------------------------------------------------------------------------

def class_of(spec, ctx):
    classes = [cls for cls in q_classes(spec, ctx) if not cls.is_nilpotent]
    assert len(classes) == 1
    return classes[0]


def test_full_cycle_of_singletons():
    q = C3.q()
    a = C3.rational(2)
    spec = JordanSpec(C3, [(a, [1]), (a / q, [1]), (a / q ** 2, [1])])
    out = classify_q_class(class_of(spec, C3), 3)
    assert out == ComponentIndex(3, m=(0, 0, 1), r=(0, 0))


def test_diagonalizable_multiplicity_pattern():
    c4 = FieldContext.root_of_unity(4)
    q = c4.q()
    a = c4.rational(2)
    spec = JordanSpec(c4, [(a, [1] * 3), (a / q, [1] * 2),
                           (a / q ** 2, [1] * 3), (a / q ** 3, [1])])
    out = classify_q_class(class_of(spec, c4), 4)
    assert out.m == (2, 0, 1, 1)
    assert sum(out.r) == 0


def test_two_step_partitions():
    q = C3.q()
    a = C3.rational(2)
    spec = JordanSpec(C3, [(a, [2]), (a / q, [1])])
    out = classify_q_class(class_of(spec, C3), 3)
    assert out.m == (1, 1, 0)


def test_classify_q_class_rejects_nilpotent_class():
    spec = JordanSpec(C3, [(C3.zero(), [2])])
    cls = q_classes(spec, C3)[0]
    with pytest.raises(BadIndex):
        classify_q_class(cls, 3)


# ---------------------------------------------------------------------------
# full classifier
# ---------------------------------------------------------------------------

def test_classify_diagonal_cycle():
    q = C3.q()
    a = C3.rational(2)
    A = QMatrix.diagonal(C3, [a, a / q, a / q ** 2])
    rng = random.Random(0)
    pair = pair_with_random_commutant_member(A, rng)
    assert classify(pair) == ComponentIndex(3, m=(0, 0, 1), r=(0, 0))


def test_classify_nilpotent_jordan_block():
    A = jordan_block(C2, 3, C2.zero())
    rng = random.Random(1)
    pair = pair_with_random_commutant_member(A, rng)
    assert classify(pair) == ComponentIndex(2, m=(0, 1), r=(1,))


def test_classify_at_width_one():
    c1 = FieldContext.root_of_unity(1)
    for n in (1, 2, 3):
        A = QMatrix.diagonal(c1, [c1.rational(k + 2) for k in range(n)])
        B = QMatrix.zero(c1, n, n)
        assert classify(MatrixPair(A, B)) == ComponentIndex(1, m=(n,), r=())


def test_classify_accepts_jordan_spec_directly():
    spec = JordanSpec(C3, [(C3.zero(), [4])])
    assert classify(spec) == ComponentIndex(3, m=(0, 0, 1), r=(1, 0))


def test_classify_mixed_spectrum():
    # a 2-chain at base 2, plus a nilpotent J2, over width 3
    q = C3.q()
    spec = JordanSpec(C3, [(C3.rational(2), [1]), (C3.rational(2) / q, [1]),
                           (C3.zero(), [2])])
    out = classify(spec)
    assert out == ComponentIndex(3, m=(0, 1, 0), r=(0, 1))
    assert out.n == 4


def test_classify_generic_regime_gapped_class():
    # eigenvalues a and a q^{-3}: the gap splits them into two singleton runs
    q = GEN.q()
    a = GEN.rational(2)
    spec = JordanSpec(GEN, [(a, [1]), (a / q ** 3, [1])])
    out = classify(spec)
    assert out.m == (2,)
    assert sum(out.r) == 0


def test_classify_conjugation_invariance():
    rng = random.Random(2)
    q = C3.q()
    a = C3.rational(2)
    A = QMatrix.diagonal(C3, [a, a / q, C3.zero()])
    pair = pair_with_random_commutant_member(A, rng)
    base = classify(pair)
    for _ in range(5):
        while True:
            g = QMatrix.from_rational_rows(
                C3, [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
            if rank(g) == 3:
                break
        moved = MatrixPair(conjugate(g, pair.A), conjugate(g, pair.B))
        assert classify(moved) == base


def test_classify_depends_only_on_A():
    rng = random.Random(3)
    q = C2.q()
    A = QMatrix.diagonal(C2, [C2.rational(2), C2.rational(2) / q,
                              C2.zero(), C2.zero()])
    outputs = set()
    for _ in range(10):
        pair = pair_with_random_commutant_member(A, rng)
        outputs.add(classify(pair))
    assert len(outputs) == 1


def test_classify_size_conservation():
    rng = random.Random(4)
    for _ in range(20):
        ell = rng.choice([2, 3, 4])
        ctx = FieldContext.root_of_unity(ell)
        q = ctx.q()
        blocks = {}
        total = 0
        while total < 1 or (total < 7 and rng.random() < 0.5):
            value = ctx.rational(rng.choice([0, 2, 3])) * q ** rng.randint(0, ell - 1)
            key = repr(value)
            if key in blocks:
                continue
            parts = sorted((rng.randint(1, 3) for _ in range(rng.randint(1, 2))),
                           reverse=True)
            blocks[key] = (value, parts)
            total += sum(parts)
        spec = JordanSpec(ctx, list(blocks.values()))
        out = classify(spec)
        assert out.n == spec.size
