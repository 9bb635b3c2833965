"""Seeded instance generation for tests, demos, and benchmark suites.

All randomness flows through one ``random.Random`` seeded from the config, so
a config is a complete, reproducible description of an instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import Election

DISTRIBUTIONS = ("uniform", "clusters", "line")


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    n: int = 6
    m: int = 6
    dim: int = 2
    distribution: str = "uniform"
    clusters: int = 2
    spread: float = 0.08
    k: int = 2
    f: int = 1

    def __post_init__(self):
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"distribution must be one of {DISTRIBUTIONS}")
        if self.distribution == "line" and self.dim != 1:
            raise ValueError("the line distribution is one-dimensional")
        if self.dim not in (1, 2):
            raise ValueError("dim must be 1 or 2")
        if self.n < 1 or self.m < 1:
            raise ValueError("need at least one voter and one candidate")
        if self.k < 1 or self.f < 0:
            raise ValueError("k must be positive and f nonnegative")
        if self.clusters < 1 or self.spread <= 0:
            raise ValueError("clusters must be positive and spread > 0")


def generate(config: GeneratorConfig) -> Election:
    """Deterministic election from a config (voters drawn first)."""
    rng = random.Random(config.seed)
    dim = config.dim

    def uniform_point():
        return tuple(rng.random() for _ in range(dim))

    if config.distribution in ("uniform", "line"):
        voters = [uniform_point() for _ in range(config.n)]
        candidates = [uniform_point() for _ in range(config.m)]
    else:
        centers = [uniform_point() for _ in range(config.clusters)]

        def cluster_point():
            cx = centers[rng.randrange(config.clusters)]
            return tuple(x + rng.gauss(0.0, config.spread) for x in cx)

        voters = [cluster_point() for _ in range(config.n)]
        candidates = [cluster_point() for _ in range(config.m)]
    return Election(tuple(voters), tuple(candidates), dim)


def random_committee(e: Election, size: int, seed: int) -> tuple[int, ...]:
    """A uniformly drawn committee of the given size (seeded)."""
    rng = random.Random(seed)
    size = max(1, min(size, e.m))
    return tuple(sorted(rng.sample(range(e.m), size)))


def random_failing_set(e: Election, size: int, seed: int) -> tuple[int, ...]:
    """A uniformly drawn failing set of the given size (seeded)."""
    rng = random.Random(seed)
    size = max(0, min(size, e.m))
    return tuple(sorted(rng.sample(range(e.m), size)))
