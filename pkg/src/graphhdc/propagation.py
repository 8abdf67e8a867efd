"""Weightless graph convolution with an optional bit-packed OR path.

One encoding pass runs L propagation rounds over the self-looped symmetric
adjacency and then blends the propagated features back with the input:

* real path: ``out[v] = sum_{u in N(v)} H[u] / sqrt(d_u * d_v)``, i.e. the
  degree-normalized neighborhood sum with no weight matrix and no
  nonlinearity;
* binary path: ``out[v] = OR_{u in N(v)} B[u]`` on bit-packed rows, which
  stays bounded in {0,1}^d no matter how many neighbors a node has;
* blend: ``alpha * H0 + (1 - alpha) * HL`` applied after the rounds.

Propagation is out-of-place (round l+1 reads only round l) and may be split
across worker threads by destination row. Each output row is accumulated in
a fixed order regardless of the worker count, so results are bit-identical
for any ``workers`` value.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import validation
from .errors import ConfigError, DimensionMismatch, ModeError
from .graph import Adjacency
from .hdc import BitArray, pack_bits, unpack_bits

MODES = ("auto", "real", "binary")

# Bound on floats gathered per column chunk, keeps temporaries near 32 MB.
_CHUNK_BUDGET = 8 * 1024 * 1024


@dataclass(frozen=True)
class EncodeConfig:
    """Encoding parameters: propagation depth, residual weight, value path."""

    layers: int = 1
    alpha: float = 0.5
    mode: str = "auto"

    def __post_init__(self) -> None:
        if int(self.layers) != self.layers or self.layers < 1:
            raise ConfigError(f"layers must be a positive integer, got {self.layers}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")


def _row_blocks(num_rows: int, workers: int) -> list[tuple[int, int]]:
    bounds = np.linspace(0, num_rows, max(1, workers) + 1).astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if a < b]


def _run_blocks(fn, blocks, workers: int) -> None:
    if workers <= 1 or len(blocks) <= 1:
        for blk in blocks:
            fn(blk)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for result in pool.map(fn, blocks):
            del result


def propagate_real(g: Adjacency, H: np.ndarray, workers: int = 1) -> np.ndarray:
    """One round of degree-normalized neighborhood summation.

    Equivalent to multiplying by the symmetrically normalized self-looped
    adjacency matrix; per-entry scale factors 1/sqrt(d_u*d_v) are computed
    on the fly from the degree vector.
    """
    H = validation.as_float_matrix(H, "H")
    if H.shape[0] != g.num_nodes:
        raise DimensionMismatch(
            f"feature rows ({H.shape[0]}) != num_nodes ({g.num_nodes})"
        )
    n, d = H.shape
    if n == 0:
        return H.copy()
    inv_sqrt = (1.0 / np.sqrt(g.degrees.astype(np.float64))).astype(np.float32)
    rows = np.repeat(np.arange(n, dtype=np.int64), g.degrees)
    weights = inv_sqrt[rows] * inv_sqrt[g.col_indices]
    out = np.empty_like(H)
    col_chunk = max(1, min(d, _CHUNK_BUDGET // max(1, g.nnz)))

    def work(block: tuple[int, int]) -> None:
        r0, r1 = block
        lo, hi = g.row_offsets[r0], g.row_offsets[r1]
        idx = g.col_indices[lo:hi]
        w = weights[lo:hi, None]
        # Start offsets of each row's segment; rows are never empty (self-loop),
        # which np.add.reduceat requires to sum segments correctly.
        starts = (g.row_offsets[r0:r1] - lo).astype(np.intp)
        for c0 in range(0, d, col_chunk):
            c1 = min(c0 + col_chunk, d)
            gathered = H[idx, c0:c1] * w
            out[r0:r1, c0:c1] = np.add.reduceat(gathered, starts, axis=0)

    _run_blocks(work, _row_blocks(n, workers), workers)
    return out


def propagate_binary(g: Adjacency, B: BitArray, workers: int = 1) -> BitArray:
    """One round of bitwise-OR aggregation over closed neighborhoods.

    The self-loop makes the output row a superset of the input row, and the
    operation is idempotent once a neighborhood stops growing.
    """
    if B.words.ndim != 2:
        raise DimensionMismatch(f"expected a bit matrix, got shape {B.words.shape}")
    if B.words.shape[0] != g.num_nodes:
        raise DimensionMismatch(
            f"bit rows ({B.words.shape[0]}) != num_nodes ({g.num_nodes})"
        )
    if g.num_nodes == 0:
        return BitArray(B.words.copy(), B.dim)
    out = np.empty_like(B.words)

    def work(block: tuple[int, int]) -> None:
        r0, r1 = block
        lo, hi = g.row_offsets[r0], g.row_offsets[r1]
        gathered = B.words[g.col_indices[lo:hi]]
        starts = (g.row_offsets[r0:r1] - lo).astype(np.intp)
        out[r0:r1] = np.bitwise_or.reduceat(gathered, starts, axis=0)

    _run_blocks(work, _row_blocks(g.num_nodes, workers), workers)
    return BitArray(words=out, dim=B.dim)


def alpha_blend(H0: np.ndarray, HL: np.ndarray, alpha: float) -> np.ndarray:
    """Residual blend ``alpha * H0 + (1 - alpha) * HL``.

    Computed as ``H0 + (1 - alpha) * (HL - H0)`` so that rows left unchanged
    by propagation come back bit-exact and binary-path outputs land exactly
    on {0, 1 - alpha, 1}; alpha 0 and 1 short-circuit to exact copies.
    """
    H0 = validation.as_float_matrix(H0, "H0")
    HL = validation.as_float_matrix(HL, "HL")
    if H0.shape != HL.shape:
        raise DimensionMismatch(f"shape mismatch: {H0.shape} vs {HL.shape}")
    if not 0.0 <= alpha <= 1.0:
        raise ConfigError(f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 0.0:
        return HL.copy()
    if alpha == 1.0:
        return H0.copy()
    return H0 + np.float32(1.0 - alpha) * (HL - H0)


def encode(
    g: Adjacency,
    X: np.ndarray,
    cfg: EncodeConfig = EncodeConfig(),
    workers: int = 1,
) -> np.ndarray:
    """Run ``cfg.layers`` propagation rounds, then blend with the input.

    Mode ``auto`` takes the binary path iff every entry of ``X`` is exactly
    0.0 or 1.0; ``binary`` on any other input raises ``ModeError``. Output is
    always a real-valued float32 matrix, deterministic and independent of
    ``workers``.
    """
    X = validation.as_float_matrix(X, "X")
    if X.shape[0] != g.num_nodes:
        raise DimensionMismatch(
            f"feature rows ({X.shape[0]}) != num_nodes ({g.num_nodes})"
        )
    binary = validation.is_binary(X) if cfg.mode == "auto" else cfg.mode == "binary"
    if cfg.mode == "binary" and not validation.is_binary(X):
        raise ModeError("mode='binary' requires features with only 0.0 and 1.0")
    if binary and X.shape[1] > 0:
        bits = pack_bits(X)
        for _ in range(cfg.layers):
            bits = propagate_binary(g, bits, workers=workers)
        HL = unpack_bits(bits)
    else:
        HL = X
        for _ in range(cfg.layers):
            HL = propagate_real(g, HL, workers=workers)
    return alpha_blend(X, HL, cfg.alpha)
