"""Seeded variate generation for the Linnik law and its building blocks.

Linnik variates come from the mixture L = gamma * Z**(1/alpha) * S with Z
standard exponential and S symmetric stable with characteristic function
exp(-|lambda|**alpha), generated by the Chambers-Mallows-Stuck transform.

Each ``RngStream`` addresses an independent Philox counter stream keyed by
``(master_seed, stream_id)``, so replicate r of an experiment can be
regenerated on its own, in any process, in any order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .distribution import LinnikParams
from .errors import InvalidInput, InvalidParams

_MASK64 = (1 << 64) - 1
_TWO52 = float(1 << 52)
PI_HALF = 0.5 * math.pi


@dataclass(frozen=True)
class RngStream:
    master_seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("master_seed", "stream_id"):
            v = getattr(self, name)
            if not (0 <= v <= _MASK64):
                raise InvalidInput(f"{name} must be a 64-bit unsigned integer, got {v}")

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of this stream."""
        seq = np.random.SeedSequence(entropy=self.master_seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.Philox(seq))


@dataclass
class Sample:
    values: np.ndarray
    params_true: Optional[LinnikParams] = None
    seed_info: Optional[RngStream] = None
    generator: str = field(default="")

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).ravel()
        if self.values.size < 1:
            raise InvalidInput("a sample needs at least one value")
        if not np.all(np.isfinite(self.values)):
            raise InvalidInput("sample values must be finite")

    def __len__(self):
        return self.values.size

    def save(self, path):
        write_sample(self, path)


def _as_generator(rng):
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise InvalidInput(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


def _check_n(n):
    if int(n) != n or n < 1:
        raise InvalidInput(f"n must be a positive integer, got {n}")
    return int(n)


def open_uniform(gen: np.random.Generator, n: int) -> np.ndarray:
    """Uniform(0, 1) draws on the 2**-52 lattice shifted by half a step.

    Every point (k + 1/2) / 2**52 is exact in double precision, so neither 0
    nor 1 can occur, which keeps log() and tan() finite. (On a 2**-53 lattice
    the top point would round to 1.)
    """
    k = gen.integers(0, 1 << 52, size=n, dtype=np.int64)
    return (k + 0.5) / _TWO52


def _exponential(gen, n):
    return -np.log(open_uniform(gen, n))


def _stable(gen, alpha, n):
    u = PI_HALF * (2.0 * open_uniform(gen, n) - 1.0)
    if alpha == 1.0:
        return np.tan(u)
    w = _exponential(gen, n)
    return (np.sin(alpha * u) / np.cos(u) ** (1.0 / alpha)
            * (np.cos(u - alpha * u) / w) ** ((1.0 - alpha) / alpha))


def sample_exponential(rng, n: int) -> Sample:
    """Standard exponential variates by inversion, -log(U)."""
    n = _check_n(n)
    gen = _as_generator(rng)
    return Sample(_exponential(gen, n), seed_info=_seed(rng), generator="exponential")


def sample_symmetric_stable(rng, alpha: float, n: int) -> Sample:
    """Variates with characteristic function exp(-|lambda|**alpha).

    Chambers-Mallows-Stuck with U ~ Uniform(-pi/2, pi/2) and W ~ Exp(1);
    alpha = 1 reduces to tan(U) (standard Cauchy) and alpha = 2 gives
    Normal(0, 2).
    """
    if not (0.0 < alpha <= 2.0):
        raise InvalidParams(f"alpha must be in (0,2], got {alpha}")
    n = _check_n(n)
    gen = _as_generator(rng)
    return Sample(_stable(gen, alpha, n), seed_info=_seed(rng), generator="stable-cms")


def sample_laplace(rng, n: int) -> Sample:
    """Standard Laplace variates as the difference of two exponentials."""
    n = _check_n(n)
    gen = _as_generator(rng)
    e1 = _exponential(gen, n)
    e2 = _exponential(gen, n)
    return Sample(e1 - e2, seed_info=_seed(rng), generator="laplace")


def linnik_variates(gen: np.random.Generator, params: LinnikParams, n: int) -> np.ndarray:
    """Raw array of n Linnik variates drawn from ``gen``."""
    z = _exponential(gen, n)
    s = _stable(gen, params.alpha, n)
    return params.gamma * z ** (1.0 / params.alpha) * s


def sample_linnik(rng, params: LinnikParams, n: int) -> Sample:
    if not isinstance(params, LinnikParams):
        raise InvalidParams("params must be LinnikParams")
    n = _check_n(n)
    gen = _as_generator(rng)
    return Sample(linnik_variates(gen, params, n), params_true=params,
                  seed_info=_seed(rng), generator="linnik-mixture")


def _seed(rng):
    return rng if isinstance(rng, RngStream) else None


def format_sample(sample: Sample) -> str:
    lines = [f"# generator: {sample.generator}" if sample.generator else None]
    if sample.seed_info is not None:
        lines.append(f"# seed: {sample.seed_info.master_seed}")
        lines.append(f"# stream: {sample.seed_info.stream_id}")
    if sample.params_true is not None:
        lines.append(f"# alpha: {sample.params_true.alpha!r}")
        lines.append(f"# gamma: {sample.params_true.gamma!r}")
    lines = [ln for ln in lines if ln]
    lines.extend(format(v, ".17g") for v in sample.values)
    return "\n".join(lines) + "\n"


def parse_sample(text: str) -> Sample:
    """Inverse of :func:`format_sample`; unknown header keys are ignored."""
    header = {}
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, val = line[1:].partition(":")
            if sep:
                header[key.strip()] = val.strip()
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise InvalidInput(f"line {lineno}: cannot parse {line!r} as a number") from None
    params = seed = None
    if "alpha" in header and "gamma" in header:
        params = LinnikParams(float(header["alpha"]), float(header["gamma"]))
    if "seed" in header:
        seed = RngStream(int(header["seed"]), int(header.get("stream", 0)))
    return Sample(np.array(values), params_true=params, seed_info=seed,
                  generator=header.get("generator", ""))


def write_sample(sample: Sample, path) -> None:
    Path(path).write_text(format_sample(sample))


def read_sample(path) -> Sample:
    return parse_sample(Path(path).read_text())
