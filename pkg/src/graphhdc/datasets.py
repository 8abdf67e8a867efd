"""Loading, writing, and splitting of benchmark graph datasets.

Two on-disk layouts are understood:

* the neutral directory produced by the offline converter: ``meta.json``,
  ``edges.tsv`` (one unsymmetrized ``u<TAB>v`` pair per line), ``labels.tsv``
  (one integer per line), features as either ``features.bin`` (16-byte
  header ``HGXF | u32 rows | u32 cols | u32 reserved``, then row-major
  little-endian float32) or ``features.tsv`` (space-separated), and an
  optional ``splits.json``;
* the raw two-file web-graph layout: ``out1_graph_edges.txt`` and
  ``out1_node_feature_label.txt`` (``id<TAB>csv-features<TAB>label``), each
  with one header line.

Loading is pure and thread-safe; datasets never download anything.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import validation
from .classifier import LabeledSplit
from .errors import (
    ConfigError,
    CorruptDataset,
    CorruptSplit,
    DatasetNotFound,
    InfeasibleSplit,
    MalformedInput,
)
from .graph import EdgeList

FEATURES_BIN_MAGIC = b"HGXF"
RAW_EDGE_FILE = "out1_graph_edges.txt"
RAW_NODE_FILE = "out1_node_feature_label.txt"

#: Published (nodes, raw edges, features, classes) for the seven bundled
#: benchmarks; used only to attach provenance notes when a loaded dataset
#: disagrees, never to reject it.
KNOWN_SHAPES = {
    "cora": (2708, 5278, 1433, 7),
    "citeseer": (3327, 4552, 3703, 6),
    "pubmed": (19717, 44324, 500, 3),
    "chameleon": (2277, 36101, 2325, 4),
    "cornell": (183, 295, 1703, 5),
    "texas": (183, 309, 1703, 5),
    "wisconsin": (251, 499, 1703, 5),
}


@dataclass(eq=False)
class DatasetBundle:
    """A loaded dataset: graph, features, labels, and provenance notes."""

    name: str
    edge_list: EdgeList
    features: np.ndarray
    labels: np.ndarray
    num_classes: int
    feature_kind: str
    notes: list[str] = field(default_factory=list)

    @property
    def num_nodes(self) -> int:
        return self.edge_list.num_nodes


@dataclass(frozen=True)
class SplitSpec:
    """How to draw train/validation/test node sets.

    ``ratio`` draws per-class stratified partitions with the given ratios;
    ``per_class_count`` draws ``train_per_class`` training nodes per class
    and then fixed-size validation/test sets from the rest. Split ``i`` is
    seeded with ``seed + i`` so any single split is reproducible alone.
    """

    kind: str = "ratio"
    train_per_class: int = 20
    ratios: tuple[float, float, float] = (0.6, 0.2, 0.2)
    val_size: int = 500
    test_size: int = 1000
    n_splits: int = 10
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("ratio", "per_class_count", "fixed"):
            raise ConfigError(f"unknown split kind {self.kind!r}")
        if abs(sum(self.ratios) - 1.0) > 1e-9 or any(r < 0 for r in self.ratios):
            raise ConfigError(f"ratios must be nonnegative and sum to 1: {self.ratios}")
        if min(self.train_per_class, self.val_size, self.test_size) <= 0:
            raise ConfigError("split sizes must be positive")
        if self.n_splits < 1:
            raise ConfigError(f"n_splits must be >= 1, got {self.n_splits}")


def _require(path: Path) -> Path:
    if not path.exists():
        raise DatasetNotFound(f"missing {path}")
    return path


def _load_int_pairs(path: Path) -> np.ndarray:
    text = path.read_text()
    if not text.strip():
        return np.zeros((0, 2), dtype=np.int64)
    try:
        return np.loadtxt(path, dtype=np.int64, ndmin=2)
    except ValueError as exc:
        raise CorruptDataset(f"{path}: {exc}") from None


def _load_features_bin(path: Path) -> np.ndarray:
    blob = path.read_bytes()
    if len(blob) < 16 or blob[:4] != FEATURES_BIN_MAGIC:
        raise CorruptDataset(f"{path}: bad header magic")
    rows, cols, _reserved = struct.unpack("<III", blob[4:16])
    body = np.frombuffer(blob, dtype="<f4", offset=16)
    if body.size != rows * cols:
        raise CorruptDataset(
            f"{path}: header promises {rows}x{cols} values, file holds {body.size}"
        )
    return body.reshape(rows, cols).astype(np.float32)


def _provenance_notes(
    name: str, num_nodes: int, num_raw_edges: int, num_features: int, num_classes: int
) -> list[str]:
    notes = []
    known = KNOWN_SHAPES.get(name.lower())
    if known is not None:
        got = (num_nodes, num_raw_edges, num_features, num_classes)
        for label, want, have in zip(("nodes", "edges", "features", "classes"), known, got):
            if want != have:
                notes.append(
                    f"{name}: {label} = {have}, reference table says {want}"
                )
    return notes


def load_dataset(directory) -> DatasetBundle:
    """Load a neutral-format dataset directory and validate it against meta."""
    d = Path(directory)
    if not d.is_dir():
        raise DatasetNotFound(f"no dataset directory at {d}")
    meta_path = _require(d / "meta.json")
    try:
        meta = json.loads(meta_path.read_text())
    except json.JSONDecodeError as exc:
        raise CorruptDataset(f"{meta_path}: {exc}") from None
    for key in ("name", "num_nodes", "num_features", "num_classes", "feature_kind"):
        if key not in meta:
            raise CorruptDataset(f"{meta_path}: missing key {key!r}")
    n, num_features = int(meta["num_nodes"]), int(meta["num_features"])
    num_classes = int(meta["num_classes"])
    kind = meta["feature_kind"]
    if kind not in ("binary", "real"):
        raise CorruptDataset(f"{meta_path}: feature_kind must be binary or real")
    if num_classes < 2:
        raise CorruptDataset(f"{meta_path}: num_classes must be >= 2")

    edges = _load_int_pairs(_require(d / "edges.tsv"))
    labels_text = _require(d / "labels.tsv").read_text().split()
    try:
        labels = np.array([int(tok) for tok in labels_text], dtype=np.int64)
    except ValueError as exc:
        raise CorruptDataset(f"{d / 'labels.tsv'}: {exc}") from None

    bin_path = d / "features.bin"
    if bin_path.exists():
        features = _load_features_bin(bin_path)
    else:
        tsv_path = _require(d / "features.tsv")
        try:
            features = np.loadtxt(tsv_path, dtype=np.float32, ndmin=2)
        except ValueError as exc:
            raise CorruptDataset(f"{tsv_path}: {exc}") from None

    if features.shape != (n, num_features):
        raise CorruptDataset(
            f"{d}: features are {features.shape}, meta says ({n}, {num_features})"
        )
    if labels.shape[0] != n:
        raise CorruptDataset(f"{d}: {labels.shape[0]} labels for {n} nodes")
    if labels.size and (labels.min() < 0 or labels.max() >= num_classes):
        raise CorruptDataset(f"{d}: labels outside [0, {num_classes})")
    try:
        features = validation.as_float_matrix(features, "features")
        edge_list = EdgeList(edges=edges, num_nodes=n)
    except MalformedInput as exc:
        raise CorruptDataset(f"{d}: {exc}") from None
    if kind == "binary" and not validation.is_binary(features):
        raise CorruptDataset(f"{d}: feature_kind is binary but values are not 0/1")

    notes = _provenance_notes(str(meta["name"]), n, edges.shape[0], num_features, num_classes)
    missing = np.setdiff1d(np.arange(num_classes), np.unique(labels))
    if missing.size:
        notes.append(f"{meta['name']}: classes never labeled: {missing.tolist()}")
    return DatasetBundle(
        name=str(meta["name"]),
        edge_list=edge_list,
        features=features,
        labels=labels,
        num_classes=num_classes,
        feature_kind=kind,
        notes=notes,
    )


def write_dataset(bundle: DatasetBundle, directory, splits=None, features_format="bin") -> Path:
    """Write a bundle back out in the neutral format (deterministic bytes)."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    meta = {
        "name": bundle.name,
        "num_nodes": bundle.num_nodes,
        "num_features": int(bundle.features.shape[1]),
        "num_classes": bundle.num_classes,
        "feature_kind": bundle.feature_kind,
    }
    (d / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    with open(d / "edges.tsv", "w") as fh:
        for u, v in bundle.edge_list.edges:
            fh.write(f"{u}\t{v}\n")
    with open(d / "labels.tsv", "w") as fh:
        for y in bundle.labels:
            fh.write(f"{y}\n")
    if features_format == "bin":
        rows, cols = bundle.features.shape
        header = FEATURES_BIN_MAGIC + struct.pack("<III", rows, cols, 0)
        payload = np.ascontiguousarray(bundle.features, dtype="<f4").tobytes()
        (d / "features.bin").write_bytes(header + payload)
    elif features_format == "tsv":
        np.savetxt(d / "features.tsv", bundle.features, fmt="%.9g")
    else:
        raise ConfigError(f"unknown features_format {features_format!r}")
    if splits is not None:
        write_splits(d / "splits.json", splits)
    return d


def write_splits(path, splits) -> None:
    """Serialize splits to the ``splits.json`` schema."""
    doc = {
        "splits": [
            {
                "train": np.asarray(s.train_idx).tolist(),
                "val": np.asarray(s.val_idx).tolist(),
                "test": np.asarray(s.test_idx).tolist(),
            }
            for s in splits
        ]
    }
    Path(path).write_text(json.dumps(doc) + "\n")


def load_geomgcn_raw(directory) -> DatasetBundle:
    """Load the raw two-file text layout used by the heterophilic benchmarks."""
    d = Path(directory)
    if not d.is_dir():
        raise DatasetNotFound(f"no dataset directory at {d}")
    node_path = _require(d / RAW_NODE_FILE)
    edge_path = _require(d / RAW_EDGE_FILE)

    ids, feats, labels = [], [], []
    with open(node_path) as fh:
        next(fh, None)  # header
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise CorruptDataset(
                    f"{node_path}:{lineno}: expected id<TAB>features<TAB>label"
                )
            try:
                ids.append(int(parts[0]))
                feats.append(np.array(parts[1].split(","), dtype=np.float32))
                labels.append(int(parts[2]))
            except ValueError as exc:
                raise CorruptDataset(f"{node_path}:{lineno}: {exc}") from None
    if not ids:
        raise CorruptDataset(f"{node_path}: no node lines")
    widths = {f.shape[0] for f in feats}
    if len(widths) != 1:
        raise CorruptDataset(f"{node_path}: inconsistent feature widths {sorted(widths)}")

    order = np.argsort(np.asarray(ids, dtype=np.int64), kind="stable")
    sorted_ids = np.asarray(ids, dtype=np.int64)[order]
    if np.unique(sorted_ids).size != sorted_ids.size:
        raise CorruptDataset(f"{node_path}: duplicate node ids")
    n = sorted_ids.size
    notes = []
    if sorted_ids[0] != 0 or sorted_ids[-1] != n - 1:
        notes.append(f"{d.name}: node ids are not 0..{n - 1}, remapped by sort order")
    id_to_row = {int(node_id): row for row, node_id in enumerate(sorted_ids)}

    features = np.stack([feats[i] for i in order]).astype(np.float32)
    label_arr = np.asarray(labels, dtype=np.int64)[order]
    if label_arr.min() < 0:
        raise CorruptDataset(f"{node_path}: negative labels")
    num_classes = int(label_arr.max()) + 1

    pairs = []
    with open(edge_path) as fh:
        next(fh, None)  # header
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            toks = line.split()
            if len(toks) != 2:
                raise CorruptDataset(f"{edge_path}:{lineno}: expected two node ids")
            try:
                u, v = int(toks[0]), int(toks[1])
            except ValueError as exc:
                raise CorruptDataset(f"{edge_path}:{lineno}: {exc}") from None
            if u not in id_to_row or v not in id_to_row:
                raise CorruptDataset(f"{edge_path}:{lineno}: unknown node id")
            pairs.append((id_to_row[u], id_to_row[v]))
    edges = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)

    name = d.name.lower()
    kind = "binary" if validation.is_binary(features) else "real"
    notes.extend(_provenance_notes(name, n, edges.shape[0], features.shape[1], num_classes))
    return DatasetBundle(
        name=name,
        edge_list=EdgeList(edges=edges, num_nodes=n),
        features=features,
        labels=label_arr,
        num_classes=num_classes,
        feature_kind=kind,
        notes=notes,
    )


def load_any(directory) -> DatasetBundle:
    """Load ``directory`` as raw text if it looks like it, else as neutral."""
    d = Path(directory)
    if (d / RAW_EDGE_FILE).exists() or (d / RAW_NODE_FILE).exists():
        return load_geomgcn_raw(d)
    return load_dataset(d)


def generate_splits(labels, spec: SplitSpec) -> list[LabeledSplit]:
    """Draw ``spec.n_splits`` reproducible splits from the label vector."""
    labels = validation.as_label_array(labels, "labels")
    if spec.kind == "fixed":
        raise ConfigError("fixed splits are loaded from a file, not generated")
    classes = np.unique(labels)
    splits = []
    for i in range(spec.n_splits):
        rng = np.random.default_rng(spec.seed + i)
        if spec.kind == "ratio":
            train, val, test = [], [], []
            for c in classes:
                members = rng.permutation(np.flatnonzero(labels == c))
                k = members.size
                n_train = int(spec.ratios[0] * k)
                n_val = int(spec.ratios[1] * k)
                train.append(members[:n_train])
                val.append(members[n_train : n_train + n_val])
                test.append(members[n_train + n_val :])
            train, val, test = (np.sort(np.concatenate(part)) for part in (train, val, test))
        else:  # per_class_count
            train = []
            for c in classes:
                members = rng.permutation(np.flatnonzero(labels == c))
                if members.size < spec.train_per_class:
                    raise InfeasibleSplit(
                        f"class {c} has {members.size} nodes, "
                        f"needs {spec.train_per_class} for training"
                    )
                train.append(members[: spec.train_per_class])
            train = np.sort(np.concatenate(train))
            pool = rng.permutation(np.setdiff1d(np.arange(labels.size), train))
            if pool.size < spec.val_size + spec.test_size:
                raise InfeasibleSplit(
                    f"{pool.size} nodes left after training draw, "
                    f"need {spec.val_size} + {spec.test_size}"
                )
            val = np.sort(pool[: spec.val_size])
            test = np.sort(pool[spec.val_size : spec.val_size + spec.test_size])
        splits.append(LabeledSplit(labels=labels, train_idx=train, val_idx=val, test_idx=test))
    return splits


def load_splits(path, num_nodes: int, labels=None) -> list[LabeledSplit]:
    """Load and validate a ``splits.json`` file."""
    p = Path(path)
    if not p.exists():
        raise DatasetNotFound(f"missing {p}")
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise CorruptSplit(f"{p}: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("splits"), list) or not doc["splits"]:
        raise CorruptSplit(f"{p}: expected a nonempty 'splits' list")
    if labels is not None:
        labels = validation.as_label_array(labels, "labels")
        if labels.shape[0] != num_nodes:
            raise CorruptSplit(f"{p}: {labels.shape[0]} labels for {num_nodes} nodes")
    out = []
    for i, entry in enumerate(doc["splits"]):
        try:
            parts = {
                key: np.asarray(entry[key], dtype=np.int64).reshape(-1)
                for key in ("train", "val", "test")
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptSplit(f"{p}: split {i}: {exc}") from None
        for key, arr in parts.items():
            if arr.size and (arr.min() < 0 or arr.max() >= num_nodes):
                raise CorruptSplit(f"{p}: split {i}: {key} ids outside [0, {num_nodes})")
        out.append(
            LabeledSplit(
                labels=labels,
                train_idx=parts["train"],
                val_idx=parts["val"],
                test_idx=parts["test"],
            )
        )
    return out
