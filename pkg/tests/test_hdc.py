"""Hypervector algebra: frozen examples, oracle checks, and properties."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from graphhdc import (
    UNDEFINED_SIMILARITY,
    BitArray,
    DimensionMismatch,
    EmptyInput,
    bind,
    bundle_bipolar,
    cosine_similarity,
    or_reduce,
    pack_bits,
    unpack_bits,
    word_count,
)

ROUND_TRIP_DIMS = (1, 63, 64, 65, 1433)


class TestBind:
    def test_elementwise_product(self):
        assert np.array_equal(bind([1, 2, 3], [2, 0, 1]), [2.0, 0.0, 3.0])

    def test_all_ones_is_identity(self, rng):
        x = rng.normal(size=17).astype(np.float32)
        assert np.array_equal(bind(x, np.ones(17)), x)

    def test_matches_scalar_loop(self, rng):
        x = rng.normal(size=64).astype(np.float32)
        y = rng.normal(size=64).astype(np.float32)
        expected = np.array([x[i] * y[i] for i in range(64)], dtype=np.float32)
        assert np.array_equal(bind(x, y), expected)

    def test_length_mismatch_rejected(self):
        with pytest.raises(DimensionMismatch):
            bind([1, 2], [1, 2, 3])

    @given(
        hnp.arrays(np.float32, 11, elements=st.floats(-10, 10, width=32)),
        hnp.arrays(np.float32, 11, elements=st.floats(-10, 10, width=32)),
    )
    def test_commutative(self, x, y):
        assert np.array_equal(bind(x, y), bind(y, x))

    @given(
        hnp.arrays(np.float32, 7, elements=st.floats(-4, 4, width=32)),
        hnp.arrays(np.float32, 7, elements=st.floats(-4, 4, width=32)),
        hnp.arrays(np.float32, 7, elements=st.floats(-4, 4, width=32)),
    )
    def test_associative(self, x, y, z):
        left = bind(bind(x, y), z)
        right = bind(x, bind(y, z))
        assert np.allclose(left, right, rtol=1e-5, atol=1e-6, equal_nan=False)


class TestBundleBipolar:
    def test_majority_example(self):
        vs = [[+1, -1], [+1, +1], [+1, -1]]
        assert np.array_equal(bundle_bipolar(vs), [+1.0, -1.0])

    def test_single_vector_is_its_own_sign(self, rng):
        v = rng.choice([-1.0, 1.0], size=20).astype(np.float32)
        assert np.array_equal(bundle_bipolar([v]), v)

    def test_matches_majority_vote_oracle(self, rng):
        vs = [rng.choice([-1.0, 1.0], size=32) for _ in range(5)]
        got = bundle_bipolar(vs)
        for i in range(32):
            pos = sum(1 for v in vs if v[i] > 0)
            neg = len(vs) - pos
            expected = 1.0 if pos > neg else -1.0 if neg > pos else 0.0
            assert got[i] == expected

    def test_empty_list_rejected(self):
        with pytest.raises(EmptyInput):
            bundle_bipolar([])

    def test_tie_maps_to_zero(self):
        assert np.array_equal(bundle_bipolar([[1.0], [-1.0]]), [0.0])

    @given(
        st.lists(
            hnp.arrays(np.float32, 9, elements=st.sampled_from([-1.0, 1.0])),
            min_size=1,
            max_size=8,
        )
    )
    def test_entries_stay_in_sign_range(self, vs):
        out = bundle_bipolar(vs)
        assert set(np.unique(out)) <= {-1.0, 0.0, 1.0}


class TestCosineSimilarity:
    def test_self_similarity_is_one(self, rng):
        v = rng.normal(size=12)
        assert cosine_similarity(v, v) == pytest.approx(1.0)

    def test_orthogonal_is_zero(self):
        assert cosine_similarity([1, 0], [0, 1]) == 0.0

    def test_positive_scale_invariance(self, rng):
        v = rng.normal(size=12)
        assert cosine_similarity(v, 3 * v) == pytest.approx(1.0)

    def test_zero_norm_gives_sentinel(self):
        assert cosine_similarity([0, 0], [1, 2]) == UNDEFINED_SIMILARITY
        assert cosine_similarity([1, 2], [0, 0]) == UNDEFINED_SIMILARITY

    def test_sentinel_below_any_defined_value(self):
        assert UNDEFINED_SIMILARITY < -1.0

    def test_length_mismatch_rejected(self):
        with pytest.raises(DimensionMismatch):
            cosine_similarity([1], [1, 2])

    @given(
        hnp.arrays(np.float32, 10, elements=st.floats(-5, 5, width=32)),
        hnp.arrays(np.float32, 10, elements=st.floats(-5, 5, width=32)),
        st.floats(0.01, 100.0),
    )
    def test_scale_invariance_property(self, x, y, c):
        base = cosine_similarity(x, y)
        scaled = cosine_similarity(x, c * y)
        if base == UNDEFINED_SIMILARITY:
            assert scaled == UNDEFINED_SIMILARITY
        else:
            assert abs(scaled - base) <= 1e-6

    @given(hnp.arrays(np.float32, 8, elements=st.floats(-9, 9, width=32)))
    def test_range_clipped(self, x):
        s = cosine_similarity(x, x)
        assert s == UNDEFINED_SIMILARITY or -1.0 <= s <= 1.0


def _random_bits(rng, dim, rows=None):
    shape = (dim,) if rows is None else (rows, dim)
    return (rng.random(shape) < 0.5).astype(np.float32)


class TestPackUnpack:
    @pytest.mark.parametrize("dim", ROUND_TRIP_DIMS)
    def test_round_trip_exact(self, rng, dim):
        v = _random_bits(rng, dim)
        assert np.array_equal(unpack_bits(pack_bits(v)), v)

    @pytest.mark.parametrize("dim", ROUND_TRIP_DIMS)
    def test_round_trip_matrix(self, rng, dim):
        m = _random_bits(rng, dim, rows=5)
        assert np.array_equal(unpack_bits(pack_bits(m)), m)

    @pytest.mark.parametrize("dim", (1, 63, 65))
    def test_padding_bits_zero(self, dim):
        bits = pack_bits(np.ones(dim, dtype=np.float32))
        total_set = sum(int(w).bit_count() for w in np.atleast_1d(bits.words))
        assert total_set == dim

    def test_word_count(self):
        assert [word_count(d) for d in (1, 63, 64, 65, 128, 129)] == [1, 1, 1, 2, 2, 3]

    def test_non_binary_rejected(self):
        with pytest.raises(ValueError):
            pack_bits([0.0, 0.5, 1.0])

    def test_wrong_word_shape_rejected(self):
        with pytest.raises(DimensionMismatch):
            BitArray(words=np.zeros(2, dtype=np.uint64), dim=64)

    @given(st.integers(1, 200))
    @settings(max_examples=40)
    def test_round_trip_any_dim(self, dim):
        rng = np.random.default_rng(dim)
        v = _random_bits(rng, dim)
        assert np.array_equal(unpack_bits(pack_bits(v)), v)


class TestOrReduce:
    def test_disjoint_supports(self):
        a = pack_bits([1, 0, 0])
        b = pack_bits([0, 1, 0])
        assert np.array_equal(unpack_bits(or_reduce([a, b])), [1.0, 1.0, 0.0])

    def test_idempotent(self, rng):
        v = pack_bits(_random_bits(rng, 40))
        assert np.array_equal(or_reduce([v, v]).words, v.words)

    def test_matches_per_bit_loop_across_word_boundary(self, rng):
        raws = [_random_bits(rng, 70) for _ in range(4)]
        got = unpack_bits(or_reduce([pack_bits(r) for r in raws]))
        for i in range(70):
            assert got[i] == float(any(r[i] for r in raws))

    def test_empty_list_rejected(self):
        with pytest.raises(EmptyInput):
            or_reduce([])

    def test_commutative(self, rng):
        a = pack_bits(_random_bits(rng, 90))
        b = pack_bits(_random_bits(rng, 90))
        assert np.array_equal(or_reduce([a, b]).words, or_reduce([b, a]).words)

    def test_monotone_support_growth(self, rng):
        raws = [_random_bits(rng, 130) for _ in range(3)]
        merged = unpack_bits(or_reduce([pack_bits(r) for r in raws]))
        for r in raws:
            assert np.all(merged >= r)

    def test_mismatched_lengths_rejected(self, rng):
        with pytest.raises(DimensionMismatch):
            or_reduce([pack_bits(_random_bits(rng, 64)), pack_bits(_random_bits(rng, 65))])
