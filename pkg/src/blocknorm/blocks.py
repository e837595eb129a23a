"""Block index schemes and block sums.

Three ways of cutting a length-n sample into blocks:

* big-block-small-block: alternating blocks of m1 and m2 observations,
  k = floor(n / (m1 + m2)) pairs; the big blocks carry the statistic and
  the small blocks separate them.
* interlacing: equal blocks of m observations on a stride of 2m; only
  the odd blocks are used, so half the data is discarded.
* batch: 2k consecutive blocks of m observations, k = floor(n / (2m)).

Indices are reported 1-based inclusive. Observations past the last full
block are dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ConfigurationError, DataError


@dataclass(frozen=True)
class BigSmall:
    """Alternating big/small block scheme with sizes m1 >= m2 >= 1."""

    m1: int
    m2: int

    def __post_init__(self) -> None:
        if self.m2 < 1:
            raise ConfigurationError(f"block sizes must be >= 1, got m2={self.m2}")
        if self.m1 < self.m2:
            raise ConfigurationError(f"need m1 >= m2, got m1={self.m1}, m2={self.m2}")

    def as_dict(self) -> dict:
        return {"scheme": "big-small", "m1": self.m1, "m2": self.m2}


@dataclass(frozen=True)
class Interlace:
    """Equal-block scheme using only the odd blocks of size m on stride 2m."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ConfigurationError(f"block size must be >= 1, got m={self.m}")

    def as_dict(self) -> dict:
        return {"scheme": "interlace", "m": self.m}


@dataclass(frozen=True)
class Batch:
    """Consecutive non-overlapping blocks of size m (batch means)."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ConfigurationError(f"block size must be >= 1, got m={self.m}")

    def as_dict(self) -> dict:
        return {"scheme": "batch", "m": self.m}


BlockScheme = Union[BigSmall, Interlace, Batch]


@dataclass(frozen=True)
class Block:
    """One index block, 1-based inclusive endpoints."""

    start: int
    end: int
    tag: str

    def __len__(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class BlockPartition:
    """A validated list of disjoint blocks over 1..n with scheme metadata."""

    blocks: tuple[Block, ...]
    k: int
    scheme: BlockScheme
    n: int

    def tagged(self, tag: str) -> tuple[Block, ...]:
        return tuple(b for b in self.blocks if b.tag == tag)


@dataclass(frozen=True)
class BlockSums:
    """Per-block sums for one tag of a partition."""

    values: np.ndarray
    block_length: int
    k: int


def exponents_to_sizes(n: int, alpha1: float, alpha2: float) -> tuple[int, int]:
    """Block sizes m1 = floor(n**alpha1), m2 = floor(n**alpha2)."""
    if n < 1:
        raise ConfigurationError(f"need n >= 1, got n={n}")
    if not (0.0 < alpha2 <= alpha1 < 1.0):
        raise ConfigurationError(
            f"exponents must satisfy 0 < alpha2 <= alpha1 < 1, got ({alpha1}, {alpha2})"
        )
    m1 = math.floor(n**alpha1)
    m2 = math.floor(n**alpha2)
    if m2 < 1:
        raise ConfigurationError(f"n={n} too small for block size >= 1 at alpha2={alpha2}")
    return m1, m2


def bbsb_partition(n: int, m1: int, m2: int) -> BlockPartition:
    """Alternating big/small partition; pair j starts at (j-1)(m1+m2)+1."""
    scheme = BigSmall(m1, m2)
    period = m1 + m2
    if period > n:
        raise ConfigurationError(f"m1 + m2 = {period} exceeds n = {n}")
    k = n // period
    blocks = []
    for j in range(1, k + 1):
        base = (j - 1) * period
        blocks.append(Block(base + 1, base + m1, "big"))
        blocks.append(Block(base + m1 + 1, base + period, "small"))
    return BlockPartition(tuple(blocks), k, scheme, n)


def interlace_partition(n: int, m: int) -> BlockPartition:
    """Odd blocks of size m on stride 2m; the even gaps stay unassigned."""
    scheme = Interlace(m)
    if 2 * m > n:
        raise ConfigurationError(f"2m = {2 * m} exceeds n = {n}")
    k = n // (2 * m)
    blocks = tuple(Block(2 * m * (j - 1) + 1, 2 * m * (j - 1) + m, "odd") for j in range(1, k + 1))
    return BlockPartition(blocks, k, scheme, n)


def batch_partition(n: int, m: int) -> BlockPartition:
    """2k consecutive blocks of size m, k = floor(n / (2m))."""
    scheme = Batch(m)
    if 2 * m > n:
        raise ConfigurationError(f"2m = {2 * m} exceeds n = {n}")
    k = n // (2 * m)
    blocks = tuple(Block((j - 1) * m + 1, j * m, "batch") for j in range(1, 2 * k + 1))
    return BlockPartition(blocks, k, scheme, n)


def _as_matrix(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[np.newaxis, :]
    if x.ndim != 2:
        raise DataError(f"expected a 1-D series or 2-D batch of series, got ndim={x.ndim}")
    return x


def bigblock_sums_matrix(x: np.ndarray, m1: int, m2: int, k: int) -> np.ndarray:
    """Big-block sums for each row of x; shape (rows, k)."""
    period = m1 + m2
    return x[:, : k * period].reshape(x.shape[0], k, period)[:, :, :m1].sum(axis=2)


def smallblock_sums_matrix(x: np.ndarray, m1: int, m2: int, k: int) -> np.ndarray:
    """Small-block sums for each row of x; shape (rows, k)."""
    period = m1 + m2
    return x[:, : k * period].reshape(x.shape[0], k, period)[:, :, m1:].sum(axis=2)


def interlace_sums_matrix(x: np.ndarray, m: int, k: int) -> np.ndarray:
    """Odd-block sums for each row of x; shape (rows, k)."""
    return x[:, : k * 2 * m].reshape(x.shape[0], k, 2 * m)[:, :, :m].sum(axis=2)


def batch_sums_matrix(x: np.ndarray, m: int, k: int) -> np.ndarray:
    """Batch (consecutive) block sums for each row of x; shape (rows, 2k)."""
    return x[:, : 2 * k * m].reshape(x.shape[0], 2 * k, m).sum(axis=2)


def block_sums(series, partition: BlockPartition, tag: str) -> BlockSums:
    """Sum the series over every block carrying the given tag."""
    x = _as_matrix(series)
    if x.shape[0] != 1:
        raise DataError("block_sums expects a single series; use the *_sums_matrix helpers for batches")
    if x.shape[1] != partition.n:
        raise DataError(f"series has length {x.shape[1]} but the partition was built for n={partition.n}")

    scheme = partition.scheme
    if isinstance(scheme, BigSmall) and tag == "big":
        values = bigblock_sums_matrix(x, scheme.m1, scheme.m2, partition.k)
        length = scheme.m1
    elif isinstance(scheme, BigSmall) and tag == "small":
        values = smallblock_sums_matrix(x, scheme.m1, scheme.m2, partition.k)
        length = scheme.m2
    elif isinstance(scheme, Interlace) and tag == "odd":
        values = interlace_sums_matrix(x, scheme.m, partition.k)
        length = scheme.m
    elif isinstance(scheme, Batch) and tag == "batch":
        values = batch_sums_matrix(x, scheme.m, partition.k)
        length = scheme.m
    else:
        raise ConfigurationError(f"tag {tag!r} does not exist in scheme {scheme.as_dict()['scheme']!r}")
    values = values[0]
    return BlockSums(values=values, block_length=length, k=values.shape[0])
