"""Classical inter-rater reliability bridges: observed/chance agreement,
Cohen's kappa, the joint-vs-product total variation, and the kappa-TVD
inequality. Tables are k x k with k >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fdiv import TVD, JointDistribution, f_mutual_information

KAPPA_TVD_TOL = 1e-12


class KappaUndefinedError(ValueError):
    """Chance agreement is 1; kappa has no value."""


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    counts: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=np.int64)
        if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] < 2:
            raise ValueError("counts must be a square matrix with k >= 2")
        if np.any(c < 0):
            raise ValueError("counts must be non-negative")
        if int(c.sum()) <= 0:
            raise ValueError("table must contain at least one observation")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)

    @property
    def k(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def probabilities(self) -> np.ndarray:
        return self.counts.astype(np.float64) / float(self.total)


@dataclass(frozen=True)
class AgreementStats:
    p_o: float
    p_e: float


@dataclass(frozen=True)
class KappaTvdReport:
    kappa: float
    tvd: float
    p_e: float
    holds: bool


def agreement_stats(t: ContingencyTable) -> AgreementStats:
    """Observed agreement (diagonal mass) and chance agreement (under independence)."""
    p = t.probabilities()
    p_o = float(np.trace(p))
    p_e = float(np.dot(p.sum(axis=1), p.sum(axis=0)))
    return AgreementStats(p_o=p_o, p_e=p_e)


def cohens_kappa(t: ContingencyTable) -> float:
    """Chance-corrected agreement (p_o - p_e) / (1 - p_e)."""
    stats = agreement_stats(t)
    if stats.p_e >= 1.0:
        raise KappaUndefinedError("chance agreement is 1; kappa undefined")
    return (stats.p_o - stats.p_e) / (1.0 - stats.p_e)


def tvd_joint_product(t: ContingencyTable) -> float:
    """Total variation between the table's joint law and its marginal product."""
    p = t.probabilities()
    prod = np.outer(p.sum(axis=1), p.sum(axis=0))
    return 0.5 * float(np.abs(p - prod).sum())


def kappa_tvd_bound_check(t: ContingencyTable) -> KappaTvdReport:
    """TVD >= kappa (1 - p_e) / 2, i.e. kappa <= 2 TVD / (1 - p_e)."""
    stats = agreement_stats(t)
    kappa = cohens_kappa(t)
    tvd = tvd_joint_product(t)
    holds = tvd >= 0.5 * kappa * (1.0 - stats.p_e) - KAPPA_TVD_TOL
    return KappaTvdReport(kappa=kappa, tvd=tvd, p_e=stats.p_e, holds=holds)


def youdens_j(tpr: float, tnr: float) -> float:
    """Informativeness of a binary test: TPR + TNR - 1."""
    if not (0.0 <= tpr <= 1.0 and 0.0 <= tnr <= 1.0):
        raise ValueError("rates must lie in [0, 1]")
    return tpr + tnr - 1.0


def table_as_joint(t: ContingencyTable) -> JointDistribution:
    """Normalized table as a dense joint law (for cross-checks)."""
    return JointDistribution(t.probabilities())


def tvd_mi_of_table(t: ContingencyTable) -> float:
    """TVD f-mutual information of the normalized table; equals tvd_joint_product."""
    return f_mutual_information(table_as_joint(t), TVD)
