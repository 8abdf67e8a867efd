"""Scikit-learn style estimators wrapping the functional pipeline.

The graph is fixed per estimator (it is structure, not samples), so it is a
constructor parameter; ``X`` rows are node features and ``y`` carries one
integer label per node with ``-1`` marking unlabeled nodes, matching the
convention of sklearn's semi-supervised estimators.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import validation
from .classifier import LabeledSplit, fit_centers, predict as predict_centers
from .errors import ConfigError, DimensionMismatch
from .graph import Adjacency, EdgeList, build_graph
from .propagation import EncodeConfig, encode


def _as_adjacency(graph, num_nodes: int) -> Adjacency:
    if graph is None:
        raise ConfigError("graph is required; pass an Adjacency, EdgeList, or edge array")
    if isinstance(graph, Adjacency):
        if graph.num_nodes != num_nodes:
            raise DimensionMismatch(
                f"graph has {graph.num_nodes} nodes, X has {num_nodes} rows"
            )
        return graph
    if isinstance(graph, EdgeList):
        if graph.num_nodes != num_nodes:
            raise DimensionMismatch(
                f"graph has {graph.num_nodes} nodes, X has {num_nodes} rows"
            )
        return build_graph(graph)
    edges = np.asarray(graph, dtype=np.int64)
    return build_graph(EdgeList(edges=edges, num_nodes=num_nodes))


class NeighborhoodEncoder(BaseEstimator, TransformerMixin):
    """Transformer producing neighborhood-blended node hypervectors.

    ``transform(X)`` runs degree-normalized propagation (bitwise OR for 0/1
    features) over the constructor graph and blends the result with the
    input at weight ``alpha``.
    """

    def __init__(self, graph=None, layers=1, alpha=0.5, mode="auto", workers=1):
        self.graph = graph
        self.layers = layers
        self.alpha = alpha
        self.mode = mode
        self.workers = workers

    def fit(self, X, y=None):
        X = validation.as_float_matrix(X, "X")
        self.config_ = EncodeConfig(layers=self.layers, alpha=self.alpha, mode=self.mode)
        self.graph_ = _as_adjacency(self.graph, X.shape[0])
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "graph_")
        X = validation.as_float_matrix(X, "X")
        if X.shape != (self.graph_.num_nodes, self.n_features_in_):
            raise DimensionMismatch(
                f"X is {X.shape}, fitted for ({self.graph_.num_nodes}, {self.n_features_in_})"
            )
        return encode(self.graph_, X, self.config_, workers=self.workers)


class HDNodeClassifier(BaseEstimator):
    """Transductive node classifier: encode, then nearest class center.

    After ``fit`` the estimator exposes ``embedding_`` (the encoded nodes),
    ``centers_`` (one summed prototype per class), ``classes_`` (sorted
    original label values), and ``transduction_`` (the predicted label of
    every node, labeled or not).
    """

    def __init__(self, graph=None, layers=1, alpha=0.5, mode="auto", workers=1):
        self.graph = graph
        self.layers = layers
        self.alpha = alpha
        self.mode = mode
        self.workers = workers

    def fit(self, X, y):
        X = validation.as_float_matrix(X, "X")
        y = validation.as_label_array(y, "y")
        if y.shape[0] != X.shape[0]:
            raise DimensionMismatch(f"{y.shape[0]} labels for {X.shape[0]} rows")
        if y.min() < -1:
            raise ValueError("labels must be >= 0, with -1 marking unlabeled nodes")
        train_idx = np.flatnonzero(y >= 0)
        if train_idx.size == 0:
            raise ValueError("no labeled nodes: every y value is -1")
        self.classes_ = np.unique(y[train_idx])
        compact = np.searchsorted(self.classes_, y[train_idx])
        dense_y = np.full(y.shape[0], -1, dtype=np.int64)
        dense_y[train_idx] = compact

        config = EncodeConfig(layers=self.layers, alpha=self.alpha, mode=self.mode)
        graph = _as_adjacency(self.graph, X.shape[0])
        self.embedding_ = encode(graph, X, config, workers=self.workers)
        split = LabeledSplit(
            labels=np.where(dense_y >= 0, dense_y, 0),
            train_idx=train_idx,
            val_idx=np.zeros(0, dtype=np.int64),
            test_idx=np.zeros(0, dtype=np.int64),
        )
        self.centers_ = fit_centers(self.embedding_, split, self.classes_.size)
        all_nodes = np.arange(X.shape[0], dtype=np.int64)
        self.transduction_ = self.classes_[
            predict_centers(self.embedding_, self.centers_, all_nodes)
        ]
        return self

    def predict(self, indices=None):
        check_is_fitted(self, "transduction_")
        if indices is None:
            return self.transduction_.copy()
        indices = validation.as_index_array(indices, self.transduction_.shape[0], "indices")
        return self.transduction_[indices]

    def score(self, indices, y_true):
        """Accuracy of the transductive predictions at ``indices``."""
        pred = self.predict(indices)
        y_true = validation.as_label_array(y_true, "y_true")
        if y_true.shape[0] != pred.shape[0]:
            raise DimensionMismatch(f"{y_true.shape[0]} labels for {pred.shape[0]} predictions")
        return float(np.mean(pred == y_true))
