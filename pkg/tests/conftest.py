"""Shared fixtures: random graphs, synthetic datasets, and the optional
real-benchmark directory (env var GRAPHHDC_DATA, default ./data)."""

import json
import os
from pathlib import Path

import numpy as np
import pytest

from graphhdc import DatasetBundle, EdgeList, write_dataset

DATA_ENV = "GRAPHHDC_DATA"

DATA_HELP = (
    "real benchmark datasets not found; set {env}=<dir> or create ./data. "
    "Expected layout: data/<name>/ in the neutral format (citation graphs, "
    "produced by the planetoid-convert tool from the raw Planetoid pickles) "
    "or the raw two-file text layout (web graphs). Missing: {path}"
)


def data_root() -> Path:
    configured = os.environ.get(DATA_ENV)
    if configured:
        return Path(configured)
    return Path(__file__).resolve().parent.parent / "data"


def require_dataset(name: str) -> Path:
    path = data_root() / name
    if not path.is_dir():
        pytest.skip(DATA_HELP.format(env=DATA_ENV, path=path))
    return path


def random_edges(rng, num_nodes, p=0.15):
    """Random undirected edge pairs, possibly empty, as an (m, 2) array."""
    if num_nodes == 0:
        return np.zeros((0, 2), dtype=np.int64)
    upper = np.triu_indices(num_nodes, k=1)
    mask = rng.random(upper[0].size) < p
    return np.stack([upper[0][mask], upper[1][mask]], axis=1).astype(np.int64)


def random_graph_and_features(seed, n_max=40, d_max=16, binary=False):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, n_max + 1))
    d = int(rng.integers(1, d_max + 1))
    edges = random_edges(rng, n, p=float(rng.uniform(0.05, 0.4)))
    if binary:
        X = (rng.random((n, d)) < 0.3).astype(np.float32)
    else:
        X = rng.normal(size=(n, d)).astype(np.float32)
    return edges, n, X


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def planted_partition(seed=3, n=90, d=24, num_classes=3):
    """Synthetic graph whose communities match class-indicative feature bits."""
    rng = np.random.default_rng(seed)
    labels = rng.integers(0, num_classes, size=n).astype(np.int64)
    upper = np.triu_indices(n, k=1)
    same = labels[upper[0]] == labels[upper[1]]
    prob = np.where(same, 0.25, 0.01)
    mask = rng.random(upper[0].size) < prob
    edges = np.stack([upper[0][mask], upper[1][mask]], axis=1).astype(np.int64)
    X = (rng.random((n, d)) < 0.1).astype(np.float32)
    for c in range(num_classes):
        X[labels == c, c] = 1.0
    return edges, X, labels, num_classes


@pytest.fixture
def planted_bundle():
    edges, X, labels, num_classes = planted_partition()
    return DatasetBundle(
        name="planted",
        edge_list=EdgeList(edges=edges, num_nodes=X.shape[0]),
        features=X,
        labels=labels,
        num_classes=num_classes,
        feature_kind="binary",
    )


@pytest.fixture
def neutral_dataset_dir(tmp_path, planted_bundle):
    """The planted-partition bundle written out in the neutral layout."""
    return write_dataset(planted_bundle, tmp_path / "planted")


@pytest.fixture
def raw_text_dataset_dir(tmp_path):
    """Hand-written two-file raw layout: 4 nodes, 3 edges, 2 classes."""
    d = tmp_path / "rawds"
    d.mkdir()
    (d / "out1_node_feature_label.txt").write_text(
        "node_id\tfeature\tlabel\n"
        "0\t1,0,0\t0\n"
        "1\t0,1,0\t0\n"
        "2\t0,0,1\t1\n"
        "3\t1,1,0\t1\n"
    )
    (d / "out1_graph_edges.txt").write_text("src\tdst\n0\t1\n1\t2\n2\t3\n")
    return d


def write_splits_file(path: Path, splits) -> Path:
    doc = {
        "splits": [
            {"train": list(s[0]), "val": list(s[1]), "test": list(s[2])} for s in splits
        ]
    }
    path.write_text(json.dumps(doc))
    return path
