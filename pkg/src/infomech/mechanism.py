"""Pairwise same-source mechanism: pair construction over positive (same
item) and negative (cross item) distributions, verdict scoring as
TPR + TNR - 1, payment aggregation, item-level AUC decomposition, and
effect-size statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .fdiv import TVD, Channel, JointDistribution, apply_channel_to_y, f_mutual_information, marginals

CATEGORIES = ("faithful", "style", "strategic", "low_effort")
GOOD_FAITH = frozenset({"faithful", "style"})
PROBLEMATIC = frozenset({"strategic", "low_effort"})

VERDICT_LEVELS = ("significant_gain", "little_gain", "no_gain")


class ZeroVarianceError(ValueError):
    """Raised when an effect size is undefined because differences are constant."""


@dataclass(frozen=True)
class ResponseRecord:
    item_id: str
    agent_id: str
    category: str
    text: str

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise ValueError(
                f"unknown category {self.category!r}; valid: {', '.join(CATEGORIES)}"
            )


@dataclass(frozen=True)
class PairRecord:
    pair_id: str
    kind: str  # "positive" | "negative"
    left: ResponseRecord
    right: ResponseRecord

    def __post_init__(self):
        if self.kind not in ("positive", "negative"):
            raise ValueError(f"unknown pair kind {self.kind!r}")
        if self.left == self.right:
            raise ValueError("pair members must differ")
        same_item = self.left.item_id == self.right.item_id
        if self.kind == "positive" and not same_item:
            raise ValueError("positive pairs must share an item")
        if self.kind == "negative" and same_item:
            raise ValueError("negative pairs must span different items")


@dataclass(frozen=True)
class CriticVerdict:
    level: str
    raw: str = ""

    def __post_init__(self):
        if self.level not in VERDICT_LEVELS:
            raise ValueError(f"unknown verdict level {self.level!r}")


@dataclass(frozen=True)
class AcceptanceSet:
    """Verdict levels counted as 'same source'; a proper non-empty subset."""

    accepted_levels: frozenset[str]

    def __post_init__(self):
        levels = frozenset(self.accepted_levels)
        unknown = levels - set(VERDICT_LEVELS)
        if unknown:
            raise ValueError(f"unknown verdict levels: {sorted(unknown)}")
        if not levels or len(levels) >= len(VERDICT_LEVELS):
            raise ValueError("acceptance set must be a proper non-empty subset")
        object.__setattr__(self, "accepted_levels", levels)

    def accepts(self, verdict: CriticVerdict) -> bool:
        return verdict.level in self.accepted_levels


# The rubric labels only a significant gain as clear same-source evidence.
DEFAULT_ACCEPTANCE = AcceptanceSet(frozenset({"significant_gain"}))
LENIENT_ACCEPTANCE = AcceptanceSet(frozenset({"significant_gain", "little_gain"}))


def build_pairs(
    dataset: Sequence[ResponseRecord],
    negatives_per_positive: int,
    rng_seed: int,
) -> list[PairRecord]:
    """All ordered same-item pairs plus seeded cross-item negatives.

    Both orders of each positive are retained for direction-sensitive
    scorers. Each positive gets ``negatives_per_positive`` negatives pairing
    its left response with a uniformly drawn response of a different item.
    """
    if negatives_per_positive < 1:
        raise ValueError("negatives_per_positive must be >= 1")
    by_item: dict[str, list[ResponseRecord]] = {}
    for rec in dataset:
        by_item.setdefault(rec.item_id, []).append(rec)
    if len(by_item) < 2:
        raise ValueError("dataset too small: need at least 2 items")
    for item, recs in by_item.items():
        if len(recs) < 2:
            raise ValueError(f"dataset too small: item {item!r} has < 2 agents")

    rng = np.random.default_rng(rng_seed)
    pairs: list[PairRecord] = []
    for item, recs in by_item.items():
        others = [r for r in dataset if r.item_id != item]
        for a in recs:
            for b in recs:
                if a.agent_id == b.agent_id:
                    continue
                pairs.append(
                    PairRecord(
                        pair_id=f"pos|{item}|{a.agent_id}|{b.agent_id}",
                        kind="positive",
                        left=a,
                        right=b,
                    )
                )
                for neg_idx in range(negatives_per_positive):
                    other = others[int(rng.integers(0, len(others)))]
                    pairs.append(
                        PairRecord(
                            pair_id=(
                                f"neg|{item}|{a.agent_id}|{b.agent_id}"
                                f"|{other.item_id}|{other.agent_id}|{neg_idx}"
                            ),
                            kind="negative",
                            left=a,
                            right=other,
                        )
                    )
    return pairs


def tvd_mi_score(
    pos_verdicts: Sequence[CriticVerdict],
    neg_verdicts: Sequence[CriticVerdict],
    a: AcceptanceSet,
) -> float:
    """TPR + TNR - 1 of the induced same-source test; lies in [-1, 1]."""
    if not pos_verdicts or not neg_verdicts:
        raise ValueError("verdict lists must be non-empty")
    tpr = sum(a.accepts(v) for v in pos_verdicts) / len(pos_verdicts)
    tnr = sum(not a.accepts(v) for v in neg_verdicts) / len(neg_verdicts)
    return tpr + tnr - 1.0


def likelihood_ratio_critic(joint: JointDistribution) -> Callable[[int, int], bool]:
    """Optimal same-source test for a known law: accept where joint > product."""
    px, py = marginals(joint)
    mass = joint.mass

    def critic(x: int, y: int) -> bool:
        return mass[x, y] > px[x] * py[y]

    return critic


@dataclass(frozen=True)
class LowerBoundReport:
    empirical_score: float
    exact_score: float
    true_tv: float
    sigma: float
    samples: int
    holds_lower_bound: bool


def estimator_is_lower_bound(
    synthetic_law: JointDistribution,
    critic: Callable[[int, int], bool],
    samples: int,
    rng_seed: int,
) -> LowerBoundReport:
    """Empirical TPR + TNR - 1 of a decision rule against the exact TV.

    Positives are drawn from the law, negatives from the product of its
    marginals. Any rule's score is a lower bound on TV(P+, P-) up to
    sampling noise; the likelihood-ratio rule attains it.
    """
    if samples < 1:
        raise ValueError("need at least one sample per class")
    px, py = marginals(synthetic_law)
    mass = synthetic_law.mass
    nx, ny = mass.shape
    accept = np.array(
        [[critic(i, j) for j in range(ny)] for i in range(nx)], dtype=bool
    )

    exact_tpr = float(mass[accept].sum())
    prod = np.outer(px, py)
    exact_tnr = float(prod[~accept].sum())
    true_tv = f_mutual_information(synthetic_law, TVD)

    rng = np.random.default_rng(rng_seed)
    flat_pos = rng.choice(nx * ny, size=samples, p=mass.ravel())
    xs = rng.choice(nx, size=samples, p=px)
    ys = rng.choice(ny, size=samples, p=py)
    emp_tpr = float(accept.ravel()[flat_pos].mean())
    emp_tnr = float((~accept[xs, ys]).mean())

    # Clamp float dust from the mass sums before the variance formula.
    tpr_c = min(max(exact_tpr, 0.0), 1.0)
    tnr_c = min(max(exact_tnr, 0.0), 1.0)
    sigma = math.sqrt(
        tpr_c * (1.0 - tpr_c) / samples + tnr_c * (1.0 - tnr_c) / samples
    )
    empirical = emp_tpr + emp_tnr - 1.0
    return LowerBoundReport(
        empirical_score=empirical,
        exact_score=exact_tpr + exact_tnr - 1.0,
        true_tv=true_tv,
        sigma=sigma,
        samples=samples,
        holds_lower_bound=empirical <= true_tv + 3.0 * sigma,
    )


@dataclass(frozen=True)
class GamingReport:
    payment_before: float
    payment_after: float
    sigma: float
    samples: int
    holds: bool


def post_processing_payment_experiment(
    joint: JointDistribution,
    ch: Channel,
    samples: int,
    rng_seed: int,
) -> GamingReport:
    """Post-processing one side of the reports cannot raise the expected payment.

    The payment is the empirical same-source score under the per-law optimal
    critic; processing Y through a channel only shrinks the achievable TV.
    """
    after_law = apply_channel_to_y(joint, ch)
    before = estimator_is_lower_bound(
        joint, likelihood_ratio_critic(joint), samples, rng_seed
    )
    after = estimator_is_lower_bound(
        after_law, likelihood_ratio_critic(after_law), samples, rng_seed + 1
    )
    sigma = math.sqrt(before.sigma**2 + after.sigma**2)
    return GamingReport(
        payment_before=before.empirical_score,
        payment_after=after.empirical_score,
        sigma=sigma,
        samples=samples,
        holds=after.empirical_score <= before.empirical_score + 3.0 * sigma,
    )


def symmetrize(
    scores_directional: Mapping[tuple[str, str], float],
) -> dict[tuple[str, str], float]:
    """Average the (a, b) and (b, a) directions onto unordered keys."""
    out: dict[tuple[str, str], float] = {}
    for (a, b), value in scores_directional.items():
        if (b, a) not in scores_directional:
            raise ValueError(f"missing direction ({b!r}, {a!r})")
        key = (a, b) if a <= b else (b, a)
        if key in out:
            continue
        out[key] = (value + scores_directional[(b, a)]) / 2.0
    return out


def aggregate_payments(
    pair_scores: Mapping[tuple[str, str], float],
    agents: Iterable[str],
) -> dict[str, float]:
    """Payment per agent: the sum of its symmetric pair scores (u_i = sum_j s_ij)."""
    agent_list = list(agents)
    known = set(agent_list)
    payments = {agent: 0.0 for agent in agent_list}
    for (a, b), score in pair_scores.items():
        if a not in known or b not in known:
            raise ValueError(f"pair ({a!r}, {b!r}) references unknown agents")
        payments[a] += score
        payments[b] += score
    return payments


def item_auc(item_pair_scores: Sequence[tuple[float, str]]) -> float:
    """Probability that a same-class (FF) pair outranks a mixed (FP) pair.

    Mann-Whitney rank statistic; ties count one half.
    """
    labels = [label for _, label in item_pair_scores]
    unknown = set(labels) - {"FF", "FP"}
    if unknown:
        raise ValueError(f"unknown labels: {sorted(unknown)}")
    n_pos = labels.count("FF")
    n_neg = labels.count("FP")
    if n_pos == 0 or n_neg == 0:
        raise ValueError("item needs at least one FF and one FP pair")

    scores = np.array([s for s, _ in item_pair_scores], dtype=np.float64)
    order = np.argsort(scores, kind="mergesort")
    ranks = np.empty(len(scores), dtype=np.float64)
    i = 0
    while i < len(scores):
        j = i
        while j + 1 < len(scores) and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1

    rank_sum = float(sum(ranks[k] for k, label in enumerate(labels) if label == "FF"))
    u = rank_sum - n_pos * (n_pos + 1) / 2.0
    return u / (n_pos * n_neg)


def macro_auc(per_item_aucs: Sequence[float]) -> float:
    """Unweighted mean of per-item AUCs."""
    if not per_item_aucs:
        raise ValueError("need at least one per-item AUC")
    return float(np.mean(per_item_aucs))


def cohens_d_paired(
    good_faith_item_means: Sequence[float],
    problematic_item_means: Sequence[float],
) -> float:
    """Paired effect size: mean item difference over its sample (n-1) stddev.

    Differences that are constant up to float dust (sd below 1e-9 of the
    mean) have no meaningful effect size and raise ZeroVarianceError rather
    than returning an astronomically inflated value.
    """
    if len(good_faith_item_means) != len(problematic_item_means):
        raise ValueError("paired vectors must have equal length")
    if len(good_faith_item_means) < 2:
        raise ValueError("need at least 2 items")
    diffs = np.asarray(good_faith_item_means, dtype=np.float64) - np.asarray(
        problematic_item_means, dtype=np.float64
    )
    sd = float(diffs.std(ddof=1))
    mean = float(diffs.mean())
    if sd == 0.0 or sd <= 1e-9 * abs(mean):
        raise ZeroVarianceError("constant differences: effect size undefined")
    return mean / sd


def bootstrap_ci(
    statistic: Callable[[list], float],
    items: Sequence,
    iterations: int = 1000,
    level: float = 0.95,
    rng_seed: int = 0,
) -> tuple[float, float]:
    """Percentile interval of a statistic over item resamples with replacement."""
    if len(items) < 2:
        raise ValueError("need at least 2 items to resample")
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie in (0, 1)")
    rng = np.random.default_rng(rng_seed)
    n = len(items)
    values = np.empty(iterations, dtype=np.float64)
    for it in range(iterations):
        idx = rng.integers(0, n, size=n)
        values[it] = statistic([items[i] for i in idx])
    alpha = (1.0 - level) / 2.0
    lo, hi = np.percentile(values, [100.0 * alpha, 100.0 * (1.0 - alpha)])
    return float(lo), float(hi)


def judge_preferences_to_scores(
    preferences: Sequence[tuple[tuple[str, str], str]],
) -> dict[str, float]:
    """Relative quality from pairwise verdicts: winner 1, loser 0, tie 1/2 each.

    Each response's score is the mean over its comparisons.
    """
    totals: dict[str, float] = {}
    counts: dict[str, int] = {}

    def add(key: str, value: float) -> None:
        totals[key] = totals.get(key, 0.0) + value
        counts[key] = counts.get(key, 0) + 1

    for (left, right), verdict in preferences:
        if verdict == "A":
            add(left, 1.0)
            add(right, 0.0)
        elif verdict == "B":
            add(left, 0.0)
            add(right, 1.0)
        elif verdict == "tie":
            add(left, 0.5)
            add(right, 0.5)
        else:
            raise ValueError(f"unparseable verdict {verdict!r}")
    return {key: totals[key] / counts[key] for key in totals}
