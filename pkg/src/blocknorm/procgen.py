"""Seeded generators for the synthetic dependent processes.

Reproducibility contract
------------------------
Every generator is a pure function of (parameters, seed). A seed is a
64-bit unsigned integer that keys a Philox4x64 counter-based bit
generator (low key word = seed, high word = 0, counter starting at
zero); normal variates come from numpy's ziggurat standard_normal.
Replication r of a run with master seed s takes the r-th output of the
canonical SplitMix64 stream started at s:

    derive_rep_seed(s, r) = splitmix64((s + r * 0x9E3779B97F4A7C15) mod 2**64)

where splitmix64 is the standard 64-bit avalanche function (add
0x9E3779B97F4A7C15; xor-shift 30, multiply 0xBF58476D1CE4E5B9;
xor-shift 27, multiply 0x94D049BB133111EB; xor-shift 31). It is a
bijection and the stride is odd, so distinct replications of one run
never share a seed; distinct masters walk disjoint stretches of the
stream (an XOR-based mix was rejected: it hands different masters
largely the same *set* of derived seeds, merely reordered, so
independent runs would share their Monte Carlo noise).
Reference values from the stream at s = 0: derive_rep_seed(0, 0) =
0xE220A8397B1DCDAF, derive_rep_seed(0, 1) = 0x6E789E6AA1B965F4.

Draw protocol per path (fixed; changing it would change all outputs):

* iid normal: n draws.
* AR(1): n+1 draws; draw 0 scaled by 1/sqrt(1-rho^2) starts the
  recursion at its exact stationary law, draws 1..n are innovations.
* ARCH(1): n+1001 draws; draw 0 scaled by a/sqrt(1-b^2) initializes,
  the next 1000 innovations are burned in, the last n are emitted.
* high-dimensional linear: an (n+lag_cap) x p block of draws, filled
  row-major, combined with geometric lag weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import ConfigurationError

Seed = int

_MASK64 = (1 << 64) - 1

RNG_ALGORITHM = "philox4x64(key=splitmix64-stream(master)[rep])+numpy-ziggurat-normal"

ARCH_BURN_IN = 1000


def splitmix64(z: int) -> int:
    """64-bit avalanche mix (bijective); see the module docstring for the steps."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_rep_seed(master: Seed, rep_index: int) -> Seed:
    """Per-replication seed: output rep_index of the SplitMix64 stream at master."""
    if rep_index < 0:
        raise ConfigurationError(f"replication index must be >= 0, got {rep_index}")
    return splitmix64((int(master) + int(rep_index) * 0x9E3779B97F4A7C15) & _MASK64)


def generator(seed: Seed) -> np.random.Generator:
    """The package-wide bit generator for a given 64-bit seed."""
    return np.random.Generator(np.random.Philox(key=int(seed) & _MASK64))


@dataclass(frozen=True)
class IIDNormal:
    """Independent standard normal observations."""

    def as_dict(self) -> dict:
        return {"process": "iid"}


@dataclass(frozen=True)
class AR1:
    """X_i = rho * X_{i-1} + eps_i with standard normal innovations, |rho| < 1."""

    rho: float

    def __post_init__(self) -> None:
        if not abs(self.rho) < 1.0:
            raise ConfigurationError(f"AR(1) needs |rho| < 1, got rho={self.rho}")

    def as_dict(self) -> dict:
        return {"process": "ar1", "rho": self.rho}


@dataclass(frozen=True)
class ARCH1:
    """U_i = sqrt(a^2 + b^2 * U_{i-1}^2) * eps_i with a > 0 and 0 <= b < 1.

    The statistics downstream are scale-free, so a only sets the units;
    it defaults to 1.
    """

    b: float
    a: float = 1.0

    def __post_init__(self) -> None:
        if not self.a > 0.0:
            raise ConfigurationError(f"ARCH(1) needs a > 0, got a={self.a}")
        if not 0.0 <= self.b < 1.0:
            raise ConfigurationError(f"ARCH(1) needs 0 <= b < 1, got b={self.b}")

    def as_dict(self) -> dict:
        return {"process": "arch1", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class HDLinear:
    """p-dimensional linear process Z_i = sum_j decay^j * A0 @ eta_{i-j}.

    A0 is the fixed banded mixing matrix (unit diagonal, first
    off-diagonals one half, rows rescaled to unit Euclidean norm); the
    lag sum is truncated at lag_cap, which leaves a relative truncation
    error of decay^(lag_cap+1) in the marginal scale.
    """

    p: int
    decay: float
    lag_cap: int = 200

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ConfigurationError(f"dimension p must be >= 1, got {self.p}")
        if not 0.0 <= self.decay < 1.0:
            raise ConfigurationError(f"decay must lie in [0, 1), got {self.decay}")
        if self.lag_cap < 1:
            raise ConfigurationError(f"lag_cap must be >= 1, got {self.lag_cap}")

    def as_dict(self) -> dict:
        return {"process": "hd-linear", "p": self.p, "decay": self.decay, "lag_cap": self.lag_cap}


ProcessSpec = Union[IIDNormal, AR1, ARCH1, HDLinear]


def _innovations(seeds: Sequence[Seed], n_draws: int) -> np.ndarray:
    out = np.empty((len(seeds), n_draws))
    for row, seed in enumerate(seeds):
        out[row] = generator(seed).standard_normal(n_draws)
    return out


def _ar1_from_innovations(eps: np.ndarray, rho: float) -> np.ndarray:
    n = eps.shape[1] - 1
    x = np.empty((eps.shape[0], n))
    state = eps[:, 0] / math.sqrt(1.0 - rho * rho)
    for i in range(n):
        state = rho * state + eps[:, i + 1]
        x[:, i] = state
    return x


def _arch1_from_innovations(eps: np.ndarray, a: float, b: float) -> np.ndarray:
    n = eps.shape[1] - 1 - ARCH_BURN_IN
    x = np.empty((eps.shape[0], n))
    state = eps[:, 0] * (a / math.sqrt(1.0 - b * b))
    for i in range(ARCH_BURN_IN + n):
        state = np.sqrt(a * a + (b * b) * state * state) * eps[:, i + 1]
        if i >= ARCH_BURN_IN:
            x[:, i - ARCH_BURN_IN] = state
    return x


def generate_paths(process: ProcessSpec, n: int, seeds: Sequence[Seed]) -> np.ndarray:
    """One path per seed, stacked as rows of an (len(seeds), n) array.

    Row r is bit-identical to the single-path generator called with
    seeds[r]; batching exists only to let the time recursions run
    vectorized across paths.
    """
    if n < 1:
        raise ConfigurationError(f"path length must be >= 1, got n={n}")
    if isinstance(process, IIDNormal):
        return _innovations(seeds, n)
    if isinstance(process, AR1):
        return _ar1_from_innovations(_innovations(seeds, n + 1), process.rho)
    if isinstance(process, ARCH1):
        return _arch1_from_innovations(_innovations(seeds, n + 1 + ARCH_BURN_IN), process.a, process.b)
    raise ConfigurationError(f"process {process!r} does not generate scalar paths")


def gen_iid_normal(n: int, seed: Seed) -> np.ndarray:
    """n independent standard normal draws."""
    return generate_paths(IIDNormal(), n, [seed])[0]


def gen_ar1(n: int, rho: float, seed: Seed) -> np.ndarray:
    """A stationary AR(1) path of length n (exact stationary start)."""
    return generate_paths(AR1(rho), n, [seed])[0]


def gen_arch1(n: int, a: float, b: float, seed: Seed) -> np.ndarray:
    """An ARCH(1) path of length n after a 1000-step burn-in."""
    return generate_paths(ARCH1(b=b, a=a), n, [seed])[0]


def banded_mixing_matrix(p: int) -> np.ndarray:
    """Row-normalized banded matrix: diagonal 1, first off-diagonals 1/2."""
    a0 = np.eye(p) + 0.5 * (np.eye(p, k=1) + np.eye(p, k=-1))
    return a0 / np.linalg.norm(a0, axis=1, keepdims=True)


def gen_hd_linear(n: int, spec: HDLinear, seed: Seed) -> np.ndarray:
    """An (n, p) panel from the truncated geometric-lag linear process."""
    if n < 1:
        raise ConfigurationError(f"panel length must be >= 1, got n={n}")
    lag = spec.lag_cap
    eta = generator(seed).standard_normal((n + lag, spec.p))
    weights = spec.decay ** np.arange(lag + 1)
    # moving average over the lag window: M[i] = sum_j weights[j] * eta[i - j]
    windows = np.lib.stride_tricks.sliding_window_view(eta, lag + 1, axis=0)
    mixed = np.einsum("ipl,l->ip", windows, weights[::-1])
    return mixed @ banded_mixing_matrix(spec.p).T
