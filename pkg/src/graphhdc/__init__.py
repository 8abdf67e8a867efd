"""Transductive node classification with propagated hypervectors.

The pipeline: build a self-looped symmetric adjacency, run weightless
degree-normalized propagation (bitwise OR on bit-packed rows for 0/1
features), blend the result with the raw features, and classify each node
by its most cosine-similar class center.
"""

from .classifier import ClassCenters, LabeledSplit, accuracy, fit_centers, predict
from .datasets import (
    DatasetBundle,
    SplitSpec,
    generate_splits,
    load_any,
    load_dataset,
    load_geomgcn_raw,
    load_splits,
    write_dataset,
)
from .errors import (
    ConfigError,
    CorruptDataset,
    CorruptSplit,
    DataError,
    DatasetNotFound,
    DimensionMismatch,
    EmptyInput,
    InfeasibleSplit,
    MalformedInput,
    ModeError,
)
from .estimators import HDNodeClassifier, NeighborhoodEncoder
from .graph import Adjacency, EdgeList, build_graph, edge_pairs, neighbors
from .hdc import (
    UNDEFINED_SIMILARITY,
    BitArray,
    bind,
    bundle_bipolar,
    cosine_similarity,
    or_reduce,
    pack_bits,
    unpack_bits,
    word_count,
)
from .propagation import (
    EncodeConfig,
    alpha_blend,
    encode,
    propagate_binary,
    propagate_real,
)

__version__ = "0.1.0"

__all__ = [
    "Adjacency",
    "BitArray",
    "ClassCenters",
    "ConfigError",
    "CorruptDataset",
    "CorruptSplit",
    "DataError",
    "DatasetBundle",
    "DatasetNotFound",
    "DimensionMismatch",
    "EdgeList",
    "EmptyInput",
    "EncodeConfig",
    "HDNodeClassifier",
    "InfeasibleSplit",
    "LabeledSplit",
    "MalformedInput",
    "ModeError",
    "NeighborhoodEncoder",
    "SplitSpec",
    "UNDEFINED_SIMILARITY",
    "accuracy",
    "alpha_blend",
    "bind",
    "build_graph",
    "bundle_bipolar",
    "cosine_similarity",
    "edge_pairs",
    "encode",
    "fit_centers",
    "generate_splits",
    "load_any",
    "load_dataset",
    "load_geomgcn_raw",
    "load_splits",
    "neighbors",
    "or_reduce",
    "pack_bits",
    "predict",
    "propagate_binary",
    "propagate_real",
    "unpack_bits",
    "word_count",
    "write_dataset",
]
