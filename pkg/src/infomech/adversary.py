"""Mode-collapse adversary: surrogate construction, estimator ceilings, and
coupled Monte Carlo verification of type indistinguishability.

The surrogate keeps the heaviest k*N^2 atoms of a law, spreads the next
k*N^2 atoms uniformly over the remaining mass, and drops the rest. Any
sample that never repeats a tail atom looks the same (as a type) under the
true law and the surrogate, which caps what a distribution-free confidence
lower bound can certify.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .empirical import Pair, PairSample, empirical_type, is_pure, types_equal
from .fdiv import (
    BUILTIN_GENERATORS,
    FGenerator,
    JointDistribution,
    max_fmi_diagonal,
)

SIMPLEX_TOL = 1e-12
MAX_DENSE_CELLS = 4096


@dataclass(frozen=True)
class AtomizedJoint:
    """Sparse joint law: ((x, y), mass) atoms sorted by descending mass.

    Ties are broken by (x, y) lexicographic order so the construction is
    deterministic.
    """

    atoms: tuple[tuple[Pair, float], ...]

    def __post_init__(self):
        atoms = tuple(
            ((int(x), int(y)), float(m)) for (x, y), m in self.atoms
        )
        if not atoms:
            raise ValueError("joint must have at least one atom")
        if any(m <= 0.0 for _, m in atoms):
            raise ValueError("atom masses must be strictly positive")
        cells = [cell for cell, _ in atoms]
        if len(set(cells)) != len(cells):
            raise ValueError("atom cells must be distinct")
        total = math.fsum(m for _, m in atoms)
        if abs(total - 1.0) > SIMPLEX_TOL:
            raise ValueError(f"atom masses must sum to 1 (got {total:.17g})")
        atoms = tuple(sorted(atoms, key=lambda a: (-a[1], a[0])))
        object.__setattr__(self, "atoms", atoms)

    @property
    def support_size(self) -> int:
        return len(self.atoms)

    def cells(self) -> list[Pair]:
        return [cell for cell, _ in self.atoms]

    def masses(self) -> np.ndarray:
        return np.array([m for _, m in self.atoms], dtype=np.float64)


@dataclass(frozen=True)
class CollapseParams:
    k: int
    n: int
    delta: float = 0.05

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.n < 2:
            raise ValueError("sample size must be >= 2")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")

    @property
    def head_size(self) -> int:
        return self.k * self.n * self.n

    @property
    def support_bound(self) -> int:
        return 2 * self.head_size


@dataclass(frozen=True)
class CollapseResult:
    joint: AtomizedJoint
    collapsed: bool


def uniform_diagonal_joint(atoms: int) -> AtomizedJoint:
    """Uniform law on a diagonal support: atom i sits at cell (i, i)."""
    if atoms < 1:
        raise ValueError("need at least one atom")
    return AtomizedJoint(tuple(((i, i), 1.0 / atoms) for i in range(atoms)))


def atomized_from_joint(joint: JointDistribution) -> AtomizedJoint:
    """Sparse view of a dense joint; zero cells are dropped."""
    atoms = [
        ((i, j), float(joint.mass[i, j]))
        for i in range(joint.x_alphabet_size)
        for j in range(joint.y_alphabet_size)
        if joint.mass[i, j] > 0.0
    ]
    return AtomizedJoint(tuple(atoms))


def atomized_to_joint(aj: AtomizedJoint) -> JointDistribution:
    """Dense joint over index-compressed alphabets; lossless for small grids."""
    xs = sorted({x for (x, _), _ in aj.atoms})
    ys = sorted({y for (_, y), _ in aj.atoms})
    if len(xs) * len(ys) > MAX_DENSE_CELLS:
        raise ValueError(
            f"dense conversion needs {len(xs) * len(ys)} cells "
            f"(limit {MAX_DENSE_CELLS})"
        )
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: j for j, y in enumerate(ys)}
    mass = np.zeros((len(xs), len(ys)), dtype=np.float64)
    for (x, y), m in aj.atoms:
        mass[xi[x], yi[y]] = m
    return JointDistribution(mass)


def sparse_fmi(aj: AtomizedJoint, gen: FGenerator) -> float:
    """f-mutual information computed directly on the sparse atom list.

    Zero-joint cells inside the marginal support grid contribute f(0) times
    their product mass, which totals 1 minus the product mass of the atoms.
    """
    px: dict[int, float] = {}
    py: dict[int, float] = {}
    for (x, y), m in aj.atoms:
        px[x] = px.get(x, 0.0) + m
        py[y] = py.get(y, 0.0) + m
    total = 0.0
    product_on_atoms = 0.0
    for (x, y), m in aj.atoms:
        q = px[x] * py[y]
        product_on_atoms += q
        total += q * gen.fn(m / q)
    total += gen.at_zero * (1.0 - product_on_atoms)
    return total


def mode_collapse(p: AtomizedJoint, params: CollapseParams) -> CollapseResult:
    """Surrogate law: keep the top k*N^2 atoms, uniformize the next k*N^2.

    Laws with fewer than 2*k*N^2 atoms are returned unchanged (their f-MI is
    already below the support-size ceiling).
    """
    m = params.head_size
    if p.support_size < params.support_bound:
        return CollapseResult(joint=p, collapsed=False)
    head = p.atoms[:m]
    tail = p.atoms[m:]
    # Every tail mass is bounded by 1/(k*N^2), else the head alone would
    # carry more than unit mass.
    limit = 1.0 / m + SIMPLEX_TOL
    for _, mass in tail:
        if mass > limit:
            raise AssertionError("tail atom heavier than 1/(k*N^2)")
    mu = math.fsum(mass for _, mass in tail)
    cloud = tuple((cell, mu / m) for cell, _ in tail[:m])
    return CollapseResult(joint=AtomizedJoint(head + cloud), collapsed=True)


def estimator_ceiling(params: CollapseParams, gen: FGenerator) -> float:
    """Upper bound certifiable by any distribution-free estimator.

    Equals the diagonal maximum at support size 2*k*N^2:
    (1/(2kN^2)) f(2kN^2) + (1 - 1/(2kN^2)) f(0).
    """
    return max_fmi_diagonal(params.support_bound, gen)


def _head_tail_split(
    p: AtomizedJoint, p_tilde: AtomizedJoint, params: CollapseParams
) -> tuple[list[tuple[Pair, float]], list[tuple[Pair, float]], list[tuple[Pair, float]]]:
    m = params.head_size
    head = list(p.atoms[:m])
    head_cells = {cell for cell, _ in head}
    tail_p = list(p.atoms[m:])
    tail_pt = [(cell, mass) for cell, mass in p_tilde.atoms if cell not in head_cells]
    return head, tail_p, tail_pt


class _CoupledSampler:
    """Shared-head coupled sampler for a law and its collapsed surrogate."""

    def __init__(self, p: AtomizedJoint, p_tilde: AtomizedJoint, params: CollapseParams):
        head, tail_p, tail_pt = _head_tail_split(p, p_tilde, params)
        self.n = params.n
        self.head_cells = [cell for cell, _ in head]
        self.head_mass = math.fsum(mass for _, mass in head)
        self.head_cum = np.cumsum([mass for _, mass in head])
        self.tail_p_cells = [cell for cell, _ in tail_p]
        self.tail_pt_cells = [cell for cell, _ in tail_pt]
        self.tail_p_cum = self._tail_cum(tail_p)
        self.tail_pt_cum = self._tail_cum(tail_pt)

    @staticmethod
    def _tail_cum(tail: list[tuple[Pair, float]]) -> np.ndarray | None:
        if not tail:
            return None
        masses = np.array([mass for _, mass in tail], dtype=np.float64)
        cum = np.cumsum(masses / masses.sum())
        cum[-1] = 1.0
        return cum

    def draw(self, rng: np.random.Generator) -> tuple[PairSample, PairSample]:
        left: list[Pair] = []
        right: list[Pair] = []
        for _ in range(self.n):
            u = rng.random()
            if u < self.head_mass or self.tail_p_cum is None:
                idx = min(
                    int(np.searchsorted(self.head_cum, u, side="right")),
                    len(self.head_cells) - 1,
                )
                cell = self.head_cells[idx]
                left.append(cell)
                right.append(cell)
            else:
                v = rng.random()
                w = rng.random()
                i = int(np.searchsorted(self.tail_p_cum, v, side="right"))
                left.append(self.tail_p_cells[min(i, len(self.tail_p_cells) - 1)])
                if self.tail_pt_cum is None:
                    raise ValueError("surrogate has no tail to draw from")
                j = int(np.searchsorted(self.tail_pt_cum, w, side="right"))
                right.append(self.tail_pt_cells[min(j, len(self.tail_pt_cells) - 1)])
        return PairSample(tuple(left)), PairSample(tuple(right))


def coupled_sample(
    p: AtomizedJoint,
    p_tilde: AtomizedJoint,
    params: CollapseParams,
    rng_seed: int,
) -> tuple[PairSample, PairSample]:
    """Draw one N-sample from each law, sharing uniform draws on the head."""
    sampler = _CoupledSampler(p, p_tilde, params)
    return sampler.draw(np.random.default_rng(rng_seed))


@dataclass(frozen=True)
class IndistinguishabilityReport:
    k: int
    n: int
    delta: float
    trials: int
    seed: int
    pure_rate_p: float
    pure_rate_ptilde: float
    mutually_pure: int
    type_match_rate_on_pure: float
    ceilings: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "params": {"k": self.k, "n": self.n, "delta": self.delta},
            "rates": {
                "pure_rate_p": self.pure_rate_p,
                "pure_rate_ptilde": self.pure_rate_ptilde,
                "mutually_pure": self.mutually_pure,
                "type_match_rate_on_pure": self.type_match_rate_on_pure,
            },
            "ceilings": dict(self.ceilings),
            "seed": self.seed,
            "trials": self.trials,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def indistinguishability_experiment(
    p: AtomizedJoint,
    params: CollapseParams,
    trials: int,
    rng_seed: int,
) -> IndistinguishabilityReport:
    """Monte Carlo check of the coupling argument.

    Each trial derives an independent stream from (seed, trial index), so
    results do not depend on execution order. Pure samples are those whose
    tail atoms never repeat; on mutually pure trials the two empirical types
    must coincide.
    """
    if trials < 1000:
        raise ValueError("need at least 1000 trials for stable rates")
    collapse = mode_collapse(p, params)
    p_tilde = collapse.joint
    sampler = _CoupledSampler(p, p_tilde, params)
    _, tail_p, tail_pt = _head_tail_split(p, p_tilde, params)
    tail_atoms_p = {cell for cell, _ in tail_p}
    tail_atoms_pt = {cell for cell, _ in tail_pt}

    pure_p = pure_pt = both_pure = matches = 0
    for t in range(trials):
        rng = np.random.default_rng([rng_seed, t])
        s, s_tilde = sampler.draw(rng)
        p_ok = is_pure(s, tail_atoms_p)
        pt_ok = is_pure(s_tilde, tail_atoms_pt)
        pure_p += p_ok
        pure_pt += pt_ok
        if p_ok and pt_ok:
            both_pure += 1
            if types_equal(empirical_type(s), empirical_type(s_tilde)):
                matches += 1

    return IndistinguishabilityReport(
        k=params.k,
        n=params.n,
        delta=params.delta,
        trials=trials,
        seed=rng_seed,
        pure_rate_p=pure_p / trials,
        pure_rate_ptilde=pure_pt / trials,
        mutually_pure=both_pure,
        type_match_rate_on_pure=(matches / both_pure) if both_pure else 1.0,
        ceilings={
            name: estimator_ceiling(params, gen)
            for name, gen in BUILTIN_GENERATORS.items()
        },
    )
