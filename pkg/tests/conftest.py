"""Shared randomized-input builders for the property suites."""

from __future__ import annotations

import math

import numpy as np
import pytest

from infomech import CHI2, KL, TVD, AtomizedJoint, Channel, FGenerator, JointDistribution

HELLINGER = FGenerator(
    "hellinger", lambda t: (math.sqrt(t) - 1.0) ** 2, at_zero=1.0
)


def mixture_generator(rng: np.random.Generator) -> FGenerator:
    """Random convex combination of the built-in generators (still convex, f(1)=0)."""
    w = rng.dirichlet([1.0, 1.0, 1.0])
    parts = (KL, TVD, CHI2)

    def fn(t: float, w=w) -> float:
        return sum(wi * g.fn(t) for wi, g in zip(w, parts))

    return FGenerator(
        f"mix-{w[0]:.3f}-{w[1]:.3f}",
        fn,
        at_zero=float(sum(wi * g.at_zero for wi, g in zip(w, parts))),
    )


def random_joint(rng: np.random.Generator, max_side: int = 6) -> JointDistribution:
    nx = int(rng.integers(2, max_side + 1))
    ny = int(rng.integers(2, max_side + 1))
    mass = rng.dirichlet(np.ones(nx * ny)).reshape(nx, ny)
    return JointDistribution(mass)


def random_channel(rng: np.random.Generator, input_size: int, max_out: int = 6) -> Channel:
    out = int(rng.integers(1, max_out + 1))
    return Channel(rng.dirichlet(np.ones(out), size=input_size))


def random_diagonal_joint(rng: np.random.Generator, support: int) -> JointDistribution:
    masses = rng.dirichlet(np.ones(support))
    return JointDistribution(np.diag(masses))


def random_atomized(rng: np.random.Generator, atoms: int, grid: int = 64) -> AtomizedJoint:
    flat = rng.choice(grid * grid, size=atoms, replace=False)
    cells = [(int(f) // grid, int(f) % grid) for f in flat]
    masses = rng.dirichlet(np.ones(atoms))
    return AtomizedJoint(tuple(zip(cells, (float(m) for m in masses))))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)
