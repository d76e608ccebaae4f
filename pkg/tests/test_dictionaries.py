"""Dictionary builders: published matrices, kernel vectors, exact coherence."""

from fractions import Fraction

import numpy as np
import pytest

from spark_forge import (
    FieldContext,
    INFINITY,
    apply,
    build_dictionary,
    build_dictionary_thm1,
    build_dictionary_thm2,
    build_null_vector,
    build_null_vector_thm1,
    build_null_vector_thm2,
    coherence,
)

# the 4 x 12 scaled dictionary for q=2, as published
Q2_MATRIX = [
    [1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0],
    [0, 0, 1, 1, 0, 0, 1, 1, 1, -1, 0, 0],
    [1, -1, 0, 0, 0, 0, 1, -1, 0, 0, 1, 1],
    [0, 0, 1, -1, 1, -1, 0, 0, 0, 0, 1, -1],
]


def test_q2_dictionary_golden(gf2):
    d = build_dictionary_thm1(gf2)
    assert np.array_equal(d.matrix, Q2_MATRIX)
    assert d.dimension == 4 and d.n_cols == 12 and d.scale_sq == 2
    assert d.block_labels == (0, 1, INFINITY)


def test_q2_null_vector(gf2):
    x = build_null_vector_thm1(gf2)
    assert x.support == ((0, 1), (7, 1), (8, -1))
    dense = x.dense()
    assert np.array_equal(dense[:4], [1, 0, 0, 0])
    assert np.array_equal(dense[4:8], [0, 0, 0, 1])
    assert np.array_equal(dense[8:], [-1, 0, 0, 0])


def test_q4_null_vector_uses_field_squares(gf4):
    # block 2 puts its entry at (2^2, 2) = (3, 2), block 3 at (2, 3)
    x = build_null_vector_thm1(gf4)
    assert x.support == ((0, 1), (21, 1), (46, 1), (59, 1), (64, -1))
    assert all(v in (-1, 1) for _, v in x.support)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_thm1_kernel_and_coherence(m):
    ctx = FieldContext(m)
    d = build_dictionary_thm1(ctx)
    x = build_null_vector_thm1(ctx)
    assert d.matrix.shape == (ctx.q**2, ctx.q**2 * (ctx.q + 1))
    assert len(x.support) == ctx.q + 1
    assert not apply(d, x).any()
    assert coherence(d) == Fraction(1, ctx.q)


def test_thm1_column_support(gf4):
    d = build_dictionary_thm1(gf4)
    assert ((d.matrix != 0).sum(axis=0) == d.scale_sq).all()


def test_thm2_q2_dictionary(gf2):
    d = build_dictionary_thm2(gf2)
    assert d.matrix.shape == (16, 48)
    assert d.scale_sq == 4 and d.q == 2
    assert ((d.matrix != 0).sum(axis=0) == 4).all()
    assert coherence(d) == Fraction(1, 4)


def test_thm2_q2_null_vector(gf2):
    y = build_null_vector_thm2(gf2)
    assert y.support == ((0, 1), (8, 1), (21, 1), (29, 1), (32, -1), (40, -1))
    d = build_dictionary_thm2(gf2)
    assert not apply(d, y).any()


def test_thm2_q4_dimensions(gf4):
    d = build_dictionary_thm2(gf4)
    assert d.matrix.shape == (256, 1280)
    y = build_null_vector_thm2(gf4)
    assert len(y.support) == 20  # q^2 + q
    assert not apply(d, y).any()


def test_thm2_blocks_match_kept_extension_bases(gf2):
    from spark_forge import build_basis, build_net, permuted_hadamard

    ext = gf2.extension()
    net, hs = build_net(ext), permuted_hadamard(2)
    d = build_dictionary_thm2(gf2)
    for i, label in enumerate(ext.subfield_indices() + [INFINITY]):
        assert np.array_equal(d.block(i), build_basis(net, hs, label).matrix)


def test_build_dispatch():
    d = build_dictionary("thm1", 4)
    x = build_null_vector("thm1", 4)
    assert d.matrix.shape == (16, 80) and len(x.support) == 5


def test_parameter_validation(gf2):
    with pytest.raises(ValueError, match="power of two"):
        build_dictionary("thm1", 3)
    with pytest.raises(ValueError, match="supports q in"):
        build_dictionary("thm1", 32)
    with pytest.raises(ValueError, match="supports q in"):
        build_dictionary("thm2", 8)
    with pytest.raises(ValueError, match="unknown family"):
        build_dictionary("thm3", 2)
    with pytest.raises(ValueError, match="base field"):
        build_dictionary_thm1(gf2.extension())
    with pytest.raises(ValueError, match="base field"):
        build_dictionary_thm2(gf2.extension())


def test_apply_guards(gf2):
    d = build_dictionary_thm1(gf2)
    x4 = build_null_vector_thm1(FieldContext(2))
    with pytest.raises(ValueError):
        apply(d, x4)
    with pytest.raises(ValueError):
        apply(d, np.zeros(5))


def test_apply_dense_matches_sparse(gf2):
    d = build_dictionary_thm1(gf2)
    x = build_null_vector_thm1(gf2)
    assert np.array_equal(apply(d, x), apply(d, x.dense()))


def test_apply_zero_vector(gf2):
    d = build_dictionary_thm1(gf2)
    assert not apply(d, np.zeros(12, dtype=int)).any()
