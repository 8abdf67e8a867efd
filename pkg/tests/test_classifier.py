"""Class centers and nearest-center prediction vs brute-force oracles."""

import numpy as np
import pytest

from graphhdc import (
    ClassCenters,
    CorruptSplit,
    DimensionMismatch,
    LabeledSplit,
    accuracy,
    fit_centers,
    predict,
)

from .oracles import grouped_sums, similarity_table


def split_of(labels, train, val=(), test=()):
    return LabeledSplit(
        labels=np.asarray(labels, dtype=np.int64),
        train_idx=np.asarray(train, dtype=np.int64),
        val_idx=np.asarray(val, dtype=np.int64),
        test_idx=np.asarray(test, dtype=np.int64),
    )


class TestLabeledSplit:
    def test_overlapping_sets_rejected(self):
        with pytest.raises(CorruptSplit):
            split_of([0, 1, 0], train=[0, 1], val=[1])

    def test_negative_ids_rejected(self):
        with pytest.raises(CorruptSplit):
            split_of([0, 1], train=[-1])

    def test_ids_beyond_labels_rejected(self):
        with pytest.raises(CorruptSplit):
            split_of([0, 1], train=[5])

    def test_valid_split_accepted(self):
        s = split_of([0, 1, 1], train=[0], val=[1], test=[2])
        assert s.train_idx.tolist() == [0]


class TestFitCenters:
    def test_singleton_classes_copy_rows(self, rng):
        H = rng.normal(size=(4, 6)).astype(np.float32)
        s = split_of([0, 1, 2, 0], train=[0, 1, 2])
        centers = fit_centers(H, s, 3)
        assert np.allclose(centers.centers, H[:3])
        assert centers.counts.tolist() == [1, 1, 1]

    def test_repeated_vector_doubles_center(self):
        H = np.array([[1.0, 2.0], [1.0, 2.0]], dtype=np.float32)
        s = split_of([0, 0], train=[0, 1])
        centers = fit_centers(H, s, 1)
        assert np.allclose(centers.centers, [[2.0, 4.0]])

    def test_matches_grouped_sum_oracle(self, rng):
        H = rng.normal(size=(40, 5)).astype(np.float32)
        labels = rng.integers(0, 3, size=40).astype(np.int64)
        train = rng.choice(40, size=20, replace=False)
        centers = fit_centers(H, split_of(labels, train), 3)
        want_centers, want_counts = grouped_sums(H, train, labels, 3)
        assert np.allclose(centers.centers, want_centers, atol=1e-5)
        assert np.array_equal(centers.counts, want_counts)

    def test_unused_class_keeps_zero_center(self, rng):
        H = rng.normal(size=(3, 4)).astype(np.float32)
        centers = fit_centers(H, split_of([0, 0, 2], train=[0, 1]), 3)
        assert centers.counts.tolist() == [2, 0, 0]
        assert np.all(centers.centers[1] == 0)

    def test_train_index_out_of_range(self, rng):
        H = rng.normal(size=(3, 4)).astype(np.float32)
        with pytest.raises(IndexError):
            fit_centers(H, split_of([0, 1, 1, 0], train=[3]), 2)

    def test_label_outside_class_range(self, rng):
        H = rng.normal(size=(3, 4)).astype(np.float32)
        with pytest.raises(ValueError):
            fit_centers(H, split_of([0, 5, 1], train=[1]), 2)


def _oracle_predict(H, centers):
    """Full decision procedure on top of the brute-force similarity table."""
    table = similarity_table(H, centers.centers)
    pred = table.argmax(axis=1)
    norms = np.sqrt((np.asarray(H, dtype=np.float64) ** 2).sum(axis=1))
    pred[norms == 0] = int(np.argmax(centers.counts))
    return pred


class TestPredict:
    def test_exact_match_wins(self, rng):
        centers = ClassCenters(
            centers=np.eye(3, dtype=np.float32) * 5, counts=np.array([1, 1, 1])
        )
        H = np.array([[0.0, 0.0, 2.0]], dtype=np.float32)
        assert predict(H, centers, [0]).tolist() == [2]

    def test_all_orthogonal_ties_break_low(self):
        centers = ClassCenters(
            centers=np.array([[1, 0, 0], [0, 1, 0]], dtype=np.float32),
            counts=np.array([1, 1]),
        )
        q = np.array([[0.0, 0.0, 1.0]], dtype=np.float32)
        assert predict(q, centers, [0]).tolist() == [0]

    def test_matches_similarity_table_oracle(self, rng):
        H = rng.normal(size=(10, 4)).astype(np.float32)
        labels = rng.integers(0, 2, size=10).astype(np.int64)
        centers = fit_centers(H, split_of(labels, np.arange(6)), 2)
        got = predict(H, centers, np.arange(10))
        assert np.array_equal(got, _oracle_predict(H, centers))

    def test_zero_norm_query_gets_majority_class(self):
        H = np.array(
            [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]], dtype=np.float32
        )
        s = split_of([1, 1, 1, 0], train=[1, 2, 3])
        centers = fit_centers(H, s, 2)
        # class 1 has the larger training count (2 vs 1)
        assert predict(H, centers, [0]).tolist() == [1]

    def test_zero_norm_center_never_wins(self, rng):
        H = rng.normal(size=(5, 3)).astype(np.float32)
        centers = ClassCenters(
            centers=np.vstack([np.zeros(3, np.float32), rng.normal(size=3).astype(np.float32)]),
            counts=np.array([0, 1]),
        )
        assert set(predict(H, centers, np.arange(5)).tolist()) == {1}

    def test_order_independence(self, rng):
        H = rng.normal(size=(12, 5)).astype(np.float32)
        labels = rng.integers(0, 3, size=12).astype(np.int64)
        centers = fit_centers(H, split_of(labels, np.arange(6)), 3)
        idx = np.arange(12)
        shuffled = rng.permutation(idx)
        direct = predict(H, centers, shuffled)
        via_full = predict(H, centers, idx)[shuffled]
        assert np.array_equal(direct, via_full)

    def test_sum_vs_mean_centers_equal_predictions(self, rng):
        H = rng.normal(size=(30, 7)).astype(np.float32)
        labels = rng.integers(0, 4, size=30).astype(np.int64)
        train = np.arange(20)
        summed = fit_centers(H, split_of(labels, train), 4)
        assert np.all(summed.counts > 0)
        meaned = ClassCenters(
            centers=(summed.centers / summed.counts[:, None]).astype(np.float32),
            counts=summed.counts,
        )
        assert np.array_equal(
            predict(H, summed, np.arange(30)), predict(H, meaned, np.arange(30))
        )

    def test_uniform_positive_scaling_invariant(self, rng):
        H = rng.normal(size=(15, 6)).astype(np.float32)
        labels = rng.integers(0, 3, size=15).astype(np.int64)
        centers = fit_centers(H, split_of(labels, np.arange(9)), 3)
        scaled_centers = fit_centers(H * 4.0, split_of(labels, np.arange(9)), 3)
        assert np.array_equal(
            predict(H, centers, np.arange(15)),
            predict(H * 4.0, scaled_centers, np.arange(15)),
        )

    def test_label_permutation_equivariance(self, rng):
        H = rng.normal(size=(24, 8)).astype(np.float32)
        labels = rng.integers(0, 3, size=24).astype(np.int64)
        train = np.arange(12)
        perm = np.array([2, 0, 1])
        base = predict(H, fit_centers(H, split_of(labels, train), 3), np.arange(24))
        permuted = predict(
            H, fit_centers(H, split_of(perm[labels], train), 3), np.arange(24)
        )
        assert np.array_equal(permuted, perm[base])


class TestAccuracy:
    def test_all_correct(self):
        s = split_of([0, 1, 0], train=[], val=[], test=[0, 1, 2])
        assert accuracy([0, 1, 0], s, "test") == 1.0

    def test_none_correct(self):
        s = split_of([0, 1, 0], train=[], test=[0, 1, 2])
        assert accuracy([1, 0, 1], s, "test") == 0.0

    def test_three_of_four(self):
        s = split_of([0, 1, 0, 1], train=[], test=[0, 1, 2, 3])
        assert accuracy([0, 1, 0, 0], s, "test") == 0.75

    def test_val_selects_val_indices(self):
        s = split_of([0, 1, 1], train=[], val=[1, 2], test=[0])
        assert accuracy([1, 0], s, "val") == 0.5

    def test_unknown_selector_rejected(self):
        s = split_of([0, 1], train=[], test=[0])
        with pytest.raises(ValueError):
            accuracy([0], s, "train")

    def test_length_mismatch_rejected(self):
        s = split_of([0, 1], train=[], test=[0, 1])
        with pytest.raises(DimensionMismatch):
            accuracy([0], s, "test")
