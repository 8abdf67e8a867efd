"""Reassemble pickled citation-network blocks into one plain dataset directory."""

from __future__ import annotations

import json
import pickle
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp

FEATURES_BIN_MAGIC = b"HGXF"
RAW_PARTS = ("x", "y", "tx", "ty", "allx", "ally", "graph")

#: Published (nodes, undirected edges, features, classes); emitted counts
#: are compared against these and any mismatch goes into the log.
EXPECTED_SHAPES = {
    "cora": (2708, 5278, 1433, 7),
    "citeseer": (3327, 4552, 3703, 6),
    "pubmed": (19717, 44324, 500, 3),
}

VAL_SIZE = 500


class ConversionError(Exception):
    """Raw distribution missing, inconsistent, or impossible to reassemble."""


@dataclass
class PlanetoidRaw:
    """The eight raw blocks of one dataset, as unpickled."""

    x: sp.spmatrix
    y: np.ndarray
    tx: sp.spmatrix
    ty: np.ndarray
    allx: sp.spmatrix
    ally: np.ndarray
    graph: dict
    test_index: np.ndarray


def load_raw(input_dir, name: str) -> PlanetoidRaw:
    """Unpickle ``ind.<name>.*`` from ``input_dir``; every file must exist."""
    d = Path(input_dir)
    blocks = {}
    for part in RAW_PARTS:
        path = d / f"ind.{name}.{part}"
        if not path.exists():
            raise ConversionError(f"missing raw file {path}")
        with open(path, "rb") as fh:
            # the distribution was pickled under Python 2
            blocks[part] = pickle.load(fh, encoding="latin1")
    index_path = d / f"ind.{name}.test.index"
    if not index_path.exists():
        raise ConversionError(f"missing raw file {index_path}")
    try:
        test_index = np.array(
            [int(line) for line in index_path.read_text().split()], dtype=np.int64
        )
    except ValueError as exc:
        raise ConversionError(f"{index_path}: {exc}") from None
    return PlanetoidRaw(test_index=test_index, **blocks)


def _dense_f32(block, what: str) -> np.ndarray:
    if sp.issparse(block):
        return np.asarray(block.todense(), dtype=np.float32)
    arr = np.asarray(block, dtype=np.float32)
    if arr.ndim != 2:
        raise ConversionError(f"{what}: expected a matrix, got shape {arr.shape}")
    return arr


def _assemble(raw: PlanetoidRaw, log: list[str]):
    allx = _dense_f32(raw.allx, "allx")
    tx = _dense_f32(raw.tx, "tx")
    ally = np.asarray(raw.ally)
    ty = np.asarray(raw.ty)
    if allx.shape[1] != tx.shape[1]:
        raise ConversionError(
            f"feature widths differ: allx {allx.shape[1]}, tx {tx.shape[1]}"
        )
    if ally.shape[1] != ty.shape[1]:
        raise ConversionError(
            f"class counts differ: ally {ally.shape[1]}, ty {ty.shape[1]}"
        )
    if ally.shape[0] != allx.shape[0] or ty.shape[0] != tx.shape[0]:
        raise ConversionError("label block row counts do not match feature blocks")

    test_index = raw.test_index
    if test_index.size != tx.shape[0]:
        raise ConversionError(
            f"test index lists {test_index.size} nodes, tx has {tx.shape[0]} rows"
        )
    n_allx = allx.shape[0]
    if test_index.min() < n_allx:
        raise ConversionError("test indices overlap the allx block")
    num_nodes = int(test_index.max()) + 1
    d = allx.shape[1]
    num_classes = ally.shape[1]

    features = np.zeros((num_nodes, d), dtype=np.float32)
    onehot = np.zeros((num_nodes, num_classes), dtype=np.float64)
    features[:n_allx] = allx
    onehot[:n_allx] = ally
    # test rows are stored in test.index order; place each at its true position
    features[test_index] = tx
    onehot[test_index] = ty

    tail = np.arange(n_allx, num_nodes)
    gaps = np.setdiff1d(tail, test_index)
    if gaps.size:
        # isolated nodes absent from every block keep zero features/label 0
        log.append(
            f"filled {gaps.size} gap rows in the test range with zero features "
            f"and label 0 (isolated nodes)"
        )
    labels = onehot.argmax(axis=1).astype(np.int64)

    if len(raw.graph) != num_nodes:
        raise ConversionError(
            f"graph dict has {len(raw.graph)} nodes, features imply {num_nodes}"
        )
    pairs = set()
    for u, neighbors in raw.graph.items():
        u = int(u)
        for v in neighbors:
            v = int(v)
            if not (0 <= u < num_nodes and 0 <= v < num_nodes):
                raise ConversionError(f"edge ({u}, {v}) outside [0, {num_nodes})")
            pairs.add((u, v) if u <= v else (v, u))
    edges = np.array(sorted(pairs), dtype=np.int64).reshape(-1, 2)
    return features, labels, edges, num_classes


def _fixed_split(raw: PlanetoidRaw, num_classes: int, num_nodes: int, log: list[str]):
    """Standard protocol: first 20 per class train, next 500 val, listed test."""
    n_train = np.asarray(raw.y).shape[0]
    if n_train != 20 * num_classes:
        raise ConversionError(
            f"train block has {n_train} rows, expected 20 x {num_classes} classes"
        )
    val_end = n_train + VAL_SIZE
    if val_end > num_nodes:
        raise ConversionError(
            f"{VAL_SIZE} validation nodes after {n_train} train rows "
            f"exceed {num_nodes} total nodes"
        )
    test = np.sort(raw.test_index)
    if test[0] < val_end:
        raise ConversionError("test indices overlap the train/validation ranges")
    log.append(
        f"fixed split: train {n_train}, val {VAL_SIZE}, test {test.size}"
    )
    return {
        "train": list(range(n_train)),
        "val": list(range(n_train, val_end)),
        "test": [int(v) for v in test],
    }


def convert(input_dir, name: str, output_dir) -> Path:
    """Convert one raw dataset; returns the written directory."""
    raw = load_raw(input_dir, name)
    log: list[str] = []
    features, labels, edges, num_classes = _assemble(raw, log)
    num_nodes, num_features = features.shape
    split = _fixed_split(raw, num_classes, num_nodes, log)

    is_binary = bool(np.logical_or(features == 0, features == 1).all())
    kind = "binary" if is_binary else "real"
    log.append(
        f"{name}: {num_nodes} nodes, {edges.shape[0]} undirected edges, "
        f"{num_features} features ({kind}), {num_classes} classes"
    )
    expected = EXPECTED_SHAPES.get(name)
    if expected is not None:
        got = (num_nodes, edges.shape[0], num_features, num_classes)
        if got != expected:
            log.append(f"WARNING: shapes {got} differ from published {expected}")

    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    meta = {
        "name": name,
        "num_nodes": int(num_nodes),
        "num_features": int(num_features),
        "num_classes": int(num_classes),
        "feature_kind": kind,
    }
    (out / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    with open(out / "edges.tsv", "w") as fh:
        for u, v in edges:
            fh.write(f"{u}\t{v}\n")
    with open(out / "labels.tsv", "w") as fh:
        for value in labels:
            fh.write(f"{value}\n")
    header = FEATURES_BIN_MAGIC + struct.pack("<III", num_nodes, num_features, 0)
    (out / "features.bin").write_bytes(
        header + np.ascontiguousarray(features, dtype="<f4").tobytes()
    )
    (out / "splits.json").write_text(json.dumps({"splits": [split]}) + "\n")
    (out / "conversion.log").write_text("".join(line + "\n" for line in log))
    return out
