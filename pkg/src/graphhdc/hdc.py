"""Elementary hypervector algebra: binding, bundling, similarity, bit packing.

Hypervectors live at the dataset's native feature width and are plain
float32 numpy arrays. Binary hypervectors are bit-packed into uint64 words
(little-endian bit order within a word); the exact word layout is internal,
only the ``pack_bits``/``unpack_bits`` round trip is part of the contract.

All operations here are pure functions over immutable inputs and are safe
to call from any number of threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyInput

WORD_BITS = 64

#: Similarity reported when either operand has zero norm. Strictly smaller
#: than every defined cosine value, so a degenerate vector can never win an
#: argmax over similarities.
UNDEFINED_SIMILARITY = float("-inf")


def word_count(dim: int) -> int:
    """Number of uint64 words needed to hold ``dim`` bits."""
    if dim < 1:
        raise DimensionMismatch(f"bit vectors need dim >= 1, got {dim}")
    return (dim + WORD_BITS - 1) // WORD_BITS


@dataclass(frozen=True, eq=False)
class BitArray:
    """One or more bit-packed binary hypervectors.

    ``words`` is a uint64 array whose last axis holds the packed words; a
    shape of ``(n_words,)`` is a single hypervector, ``(n, n_words)`` a
    matrix of them. ``dim`` is the logical bit length. Padding bits beyond
    ``dim`` in the last word are zero before and after every operation in
    this package.
    """

    words: np.ndarray
    dim: int

    def __post_init__(self) -> None:
        expected = word_count(self.dim)
        if self.words.dtype != np.uint64 or self.words.shape[-1] != expected:
            raise DimensionMismatch(
                f"expected uint64 words with last axis {expected}, "
                f"got {self.words.dtype} with shape {self.words.shape}"
            )


def _as_vector_f32(x, name: str) -> np.ndarray:
    a = np.asarray(x, dtype=np.float32)
    if a.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-D, got shape {a.shape}")
    return a


def bind(x, y) -> np.ndarray:
    """Associate two hypervectors by element-wise multiplication."""
    xv = _as_vector_f32(x, "x")
    yv = _as_vector_f32(y, "y")
    if xv.shape != yv.shape:
        raise DimensionMismatch(f"lengths differ: {xv.shape[0]} vs {yv.shape[0]}")
    return xv * yv


def bundle_bipolar(vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Bundle bipolar hypervectors into the sign of their element-wise sum.

    Entries of the result are in {-1, 0, +1}; a tied coordinate (sum exactly
    zero) maps to 0, which keeps the operation odd-symmetric.
    """
    if len(vectors) == 0:
        raise EmptyInput("bundle_bipolar needs at least one vector")
    rows = [_as_vector_f32(v, "vectors[i]") for v in vectors]
    width = rows[0].shape[0]
    if any(r.shape[0] != width for r in rows):
        raise DimensionMismatch("bundle_bipolar inputs must share one length")
    total = np.sum(np.stack(rows), axis=0, dtype=np.float64)
    return np.sign(total).astype(np.float32)


def cosine_similarity(x, y) -> float:
    """Cosine of the angle between two hypervectors, clipped to [-1, 1].

    Dot products accumulate in float64. If either operand has zero norm the
    cosine is undefined and ``UNDEFINED_SIMILARITY`` is returned; callers
    must treat it as smaller than any defined similarity.
    """
    xv = _as_vector_f32(x, "x").astype(np.float64)
    yv = _as_vector_f32(y, "y").astype(np.float64)
    if xv.shape != yv.shape:
        raise DimensionMismatch(f"lengths differ: {xv.shape[0]} vs {yv.shape[0]}")
    nx = float(np.sqrt(xv @ xv))
    ny = float(np.sqrt(yv @ yv))
    if nx == 0.0 or ny == 0.0:
        return UNDEFINED_SIMILARITY
    return float(np.clip((xv @ yv) / (nx * ny), -1.0, 1.0))


def pack_bits(values) -> BitArray:
    """Pack a {0, 1}-valued array into uint64 words along the last axis."""
    a = np.asarray(values)
    if a.ndim < 1 or a.shape[-1] < 1:
        raise DimensionMismatch(f"nothing to pack: shape {a.shape}")
    if not np.logical_or(a == 0, a == 1).all():
        raise ValueError("pack_bits input must contain only 0 and 1")
    dim = a.shape[-1]
    packed = np.packbits(a.astype(np.uint8), axis=-1, bitorder="little")
    n_bytes = word_count(dim) * 8
    if packed.shape[-1] < n_bytes:
        padded = np.zeros(a.shape[:-1] + (n_bytes,), dtype=np.uint8)
        padded[..., : packed.shape[-1]] = packed
        packed = padded
    words = np.ascontiguousarray(packed).view(np.uint64)
    return BitArray(words=words, dim=dim)


def unpack_bits(bits: BitArray) -> np.ndarray:
    """Inverse of :func:`pack_bits`; returns float32 values in {0, 1}."""
    raw = np.ascontiguousarray(bits.words).view(np.uint8)
    out = np.unpackbits(raw, axis=-1, count=bits.dim, bitorder="little")
    return out.astype(np.float32)


def or_reduce(vectors: Sequence[BitArray]) -> BitArray:
    """Aggregate binary hypervectors with a bitwise logical OR.

    Idempotent and commutative; the result's support covers every input's
    support, and padding bits stay zero.
    """
    if len(vectors) == 0:
        raise EmptyInput("or_reduce needs at least one vector")
    dim = vectors[0].dim
    shape = vectors[0].words.shape
    for v in vectors[1:]:
        if v.dim != dim or v.words.shape != shape:
            raise DimensionMismatch("or_reduce inputs must share one logical length")
    acc = vectors[0].words.copy()
    for v in vectors[1:]:
        np.bitwise_or(acc, v.words, out=acc)
    return BitArray(words=acc, dim=dim)
