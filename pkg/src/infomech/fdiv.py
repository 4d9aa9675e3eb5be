"""Exact f-divergences and f-mutual information on finite discrete alphabets.

Probabilities are dense float64 matrices indexed by integer symbols; callers
keep their own label maps. All operations are pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

SIMPLEX_TOL = 1e-12
DPI_TOL = 1e-10

# Midpoint convexity is validated on this fixed log-spaced grid; user-supplied
# generators are opaque maps, so symbolic convexity checks are not possible.
_CONVEXITY_GRID = [2.0**e for e in range(-10, 11)]
_CONVEXITY_TOL = 1e-12


@dataclass(frozen=True)
class FGenerator:
    """A convex divergence generator f with f(1) = 0 and finite f(0).

    ``fn`` maps t in [0, inf) to f(t); ``at_zero`` is the right limit f(0+),
    and ``at_infinity_slope`` the limit of f(t)/t (used only for domain
    checks, may be inf).
    """

    name: str
    fn: Callable[[float], float] = field(repr=False)
    at_zero: float = 0.0
    at_infinity_slope: float = math.inf

    def __post_init__(self):
        if self.fn(1.0) != 0.0:
            raise ValueError(f"generator {self.name!r}: fn(1) must be exactly 0")
        if not math.isfinite(self.at_zero):
            raise ValueError(f"generator {self.name!r}: f(0) must be finite")
        vals = {t: self.fn(t) for t in _CONVEXITY_GRID}
        for a in _CONVEXITY_GRID:
            for b in _CONVEXITY_GRID:
                mid = self.fn((a + b) / 2.0)
                if mid > (vals[a] + vals[b]) / 2.0 + _CONVEXITY_TOL:
                    raise ValueError(
                        f"generator {self.name!r}: midpoint convexity fails "
                        f"at ({a}, {b})"
                    )

    def __call__(self, t: float) -> float:
        if t == 0.0:
            return self.at_zero
        return self.fn(t)


KL = FGenerator("kl", lambda t: t * math.log(t) if t > 0.0 else 0.0,
                at_zero=0.0, at_infinity_slope=math.inf)
TVD = FGenerator("tvd", lambda t: 0.5 * abs(t - 1.0),
                 at_zero=0.5, at_infinity_slope=0.5)
CHI2 = FGenerator("chi2", lambda t: (t - 1.0) ** 2,
                  at_zero=1.0, at_infinity_slope=math.inf)

BUILTIN_GENERATORS = {g.name: g for g in (KL, TVD, CHI2)}


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Discrete joint law P(X, Y) on finite index alphabets."""

    mass: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mass, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
            raise ValueError("mass must be a non-empty 2-d matrix")
        if np.any(m < 0.0):
            raise ValueError("mass entries must be non-negative")
        if abs(float(m.sum()) - 1.0) > SIMPLEX_TOL:
            raise ValueError(f"mass must sum to 1 (got {float(m.sum()):.17g})")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "mass", m)

    @property
    def x_alphabet_size(self) -> int:
        return self.mass.shape[0]

    @property
    def y_alphabet_size(self) -> int:
        return self.mass.shape[1]


@dataclass(frozen=True, eq=False)
class Channel:
    """Row-stochastic transition kernel, the post-processing map of a report."""

    kernel: np.ndarray

    def __post_init__(self):
        k = np.asarray(self.kernel, dtype=np.float64)
        if k.ndim != 2 or k.shape[0] < 1 or k.shape[1] < 1:
            raise ValueError("kernel must be a non-empty 2-d matrix")
        if np.any(k < 0.0):
            raise ValueError("kernel entries must be non-negative")
        rows = k.sum(axis=1)
        if np.any(np.abs(rows - 1.0) > SIMPLEX_TOL):
            raise ValueError("every kernel row must sum to 1")
        k = k.copy()
        k.setflags(write=False)
        object.__setattr__(self, "kernel", k)

    @property
    def input_size(self) -> int:
        return self.kernel.shape[0]

    @property
    def output_size(self) -> int:
        return self.kernel.shape[1]


@dataclass(frozen=True)
class DpiReport:
    before: float
    after: float
    holds: bool


def marginals(joint: JointDistribution) -> tuple[np.ndarray, np.ndarray]:
    """Row and column sums of the joint mass: (P_X, P_Y)."""
    return joint.mass.sum(axis=1), joint.mass.sum(axis=0)


def f_mutual_information(joint: JointDistribution, gen: FGenerator) -> float:
    """f-divergence between the joint law and the product of its marginals.

    Cells with zero marginal product contribute 0 (they force zero joint
    mass); cells with zero joint mass but positive product contribute
    product * f(0).
    """
    if not math.isfinite(gen.at_zero):
        raise ValueError("generator must have finite f(0)")
    px, py = marginals(joint)
    mass = joint.mass
    total = 0.0
    for i in range(mass.shape[0]):
        if px[i] == 0.0:
            continue
        for j in range(mass.shape[1]):
            q = px[i] * py[j]
            if q == 0.0:
                continue
            p = mass[i, j]
            if p == 0.0:
                total += q * gen.at_zero
            else:
                total += q * gen.fn(p / q)
    return total


def max_fmi_diagonal(support: int, gen: FGenerator) -> float:
    """Largest f-mutual information attainable on a diagonal of given size.

    Attained by the uniform diagonal coupling: (1/M) f(M) + (1 - 1/M) f(0).
    """
    if support < 1:
        raise ValueError("support size must be >= 1")
    inv = 1.0 / support
    return inv * gen(float(support)) + (1.0 - inv) * gen.at_zero


def apply_channel_to_y(joint: JointDistribution, ch: Channel) -> JointDistribution:
    """Push the Y coordinate of a joint law through a channel."""
    if ch.input_size != joint.y_alphabet_size:
        raise ValueError(
            f"channel input size {ch.input_size} does not match "
            f"y alphabet size {joint.y_alphabet_size}"
        )
    return JointDistribution(joint.mass @ ch.kernel)


def check_dpi(joint: JointDistribution, ch: Channel, gen: FGenerator) -> DpiReport:
    """Data processing inequality check: post-processing cannot raise f-MI."""
    before = f_mutual_information(joint, gen)
    after = f_mutual_information(apply_channel_to_y(joint, ch), gen)
    return DpiReport(before=before, after=after, holds=after <= before + DPI_TOL)
