"""Nearest-class-center training and inference over encoded hypervectors.

Training bundles the hypervectors of the labeled nodes into one summed
prototype per class; inference assigns each node to the class whose
prototype is most cosine-similar. Under cosine, summed and averaged
prototypes give identical predictions, so the sum is stored.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import validation
from .errors import CorruptSplit, DimensionMismatch
from .hdc import UNDEFINED_SIMILARITY


@dataclass(frozen=True, eq=False)
class LabeledSplit:
    """Per-node labels plus disjoint train/validation/test node-id sets.

    ``labels`` may be None for splits loaded before a dataset is attached;
    range checks against the node count then fall to the loader.
    """

    labels: np.ndarray | None
    train_idx: np.ndarray
    val_idx: np.ndarray
    test_idx: np.ndarray

    def __post_init__(self) -> None:
        sets = {}
        for name in ("train_idx", "val_idx", "test_idx"):
            arr = np.asarray(getattr(self, name), dtype=np.int64).reshape(-1)
            if arr.size and arr.min() < 0:
                raise CorruptSplit(f"{name} contains negative node ids")
            object.__setattr__(self, name, arr)
            sets[name] = arr
        if self.labels is not None:
            labels = validation.as_label_array(self.labels, "labels")
            object.__setattr__(self, "labels", labels)
            n = labels.shape[0]
            for name, arr in sets.items():
                if arr.size and arr.max() >= n:
                    raise CorruptSplit(f"{name} exceeds the {n} labeled nodes")
        names = list(sets)
        for i, a in enumerate(names):
            for b in names[i + 1 :]:
                if np.intersect1d(sets[a], sets[b]).size:
                    raise CorruptSplit(f"{a} and {b} overlap")


@dataclass(frozen=True, eq=False)
class ClassCenters:
    """Summed prototype per class plus the per-class training-sample count."""

    centers: np.ndarray
    counts: np.ndarray

    @property
    def num_classes(self) -> int:
        return int(self.centers.shape[0])


def fit_centers(H: np.ndarray, split: LabeledSplit, num_classes: int) -> ClassCenters:
    """Sum the training-node hypervectors of each class into its prototype.

    A class with no training samples keeps a zero center; such a center can
    never win the similarity argmax.
    """
    H = validation.as_float_matrix(H, "H")
    train = validation.as_index_array(split.train_idx, H.shape[0], "train_idx")
    if split.labels is None:
        raise ValueError("split has no labels attached")
    y = split.labels[train]
    if y.size and (y.min() < 0 or y.max() >= num_classes):
        raise ValueError(
            f"training labels must lie in [0, {num_classes}), "
            f"found range [{y.min()}, {y.max()}]"
        )
    centers = np.zeros((num_classes, H.shape[1]), dtype=np.float64)
    np.add.at(centers, y, H[train])
    counts = np.bincount(y, minlength=num_classes).astype(np.int64)
    return ClassCenters(centers=centers.astype(np.float32), counts=counts)


def predict(H: np.ndarray, centers: ClassCenters, idx) -> np.ndarray:
    """Most-similar-center class id for each node in ``idx``.

    Ties and undefined similarities resolve toward the lowest class id; a
    query vector with zero norm falls back to the majority training class.
    Deterministic and independent of the order of ``idx``.
    """
    H = validation.as_float_matrix(H, "H")
    idx = validation.as_index_array(idx, H.shape[0], "idx")
    Q = H[idx].astype(np.float64)
    C = centers.centers.astype(np.float64)
    if Q.shape[1] != C.shape[1]:
        raise DimensionMismatch(
            f"feature width {Q.shape[1]} != center width {C.shape[1]}"
        )
    qn = np.sqrt(np.einsum("ij,ij->i", Q, Q))
    cn = np.sqrt(np.einsum("ij,ij->i", C, C))
    denom = qn[:, None] * cn[None, :]
    sims = np.divide(Q @ C.T, denom, out=np.zeros_like(denom), where=denom > 0)
    sims[:, cn == 0] = UNDEFINED_SIMILARITY
    pred = np.argmax(sims, axis=1)
    if (qn == 0).any():
        majority = int(np.argmax(centers.counts))
        pred[qn == 0] = majority
    return pred.astype(np.int64)


def accuracy(pred, split: LabeledSplit, which: str) -> float:
    """Fraction of nodes in the chosen index set predicted correctly."""
    if which not in ("val", "test"):
        raise ValueError(f"which must be 'val' or 'test', got {which!r}")
    if split.labels is None:
        raise ValueError("split has no labels attached")
    idx = split.val_idx if which == "val" else split.test_idx
    pred = np.asarray(pred, dtype=np.int64).reshape(-1)
    if pred.shape[0] != idx.shape[0]:
        raise DimensionMismatch(
            f"{pred.shape[0]} predictions for {idx.shape[0]} {which} nodes"
        )
    if idx.size == 0:
        raise ValueError(f"{which} set is empty")
    return float(np.mean(pred == split.labels[idx]))
