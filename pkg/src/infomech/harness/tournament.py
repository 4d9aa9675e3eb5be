"""End-to-end tournament: pairs, verdicts, scores, payments, AUC
decomposition, and effect sizes, emitted as deterministic reports.

Pipeline: ingest -> build pairs -> optional tampering transform -> verdict
acquisition (cache-first) -> per-mechanism scores -> payments -> per-item and
macro AUC -> paired effect size with bootstrap CI. With the oracle backend
every output is a pure function of (dataset bytes, config).
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import numpy as np
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from ..logprob import EchoOracleProvider, HttpLogProbProvider, gppm_score, mi_doe_score
from ..mechanism import (
    GOOD_FAITH,
    PROBLEMATIC,
    AcceptanceSet,
    CriticVerdict,
    PairRecord,
    ResponseRecord,
    aggregate_payments,
    bootstrap_ci,
    build_pairs,
    cohens_d_paired,
    item_auc,
    judge_preferences_to_scores,
    macro_auc,
    symmetrize,
    ZeroVarianceError,
)
from ..tamper import TransformSpec, apply_transform
from .cache import ResponseCache
from .critics import (
    HttpBackendConfig,
    UnparseableVerdictError,
    llm_critic,
    llm_judge,
    oracle_critic,
    oracle_judge,
)
from .ingest import Dataset, ingest

ALL_MECHANISMS = ("tvd_mi", "mi_doe", "gppm", "judge_with_ctx", "judge_without_ctx")


class StageError(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


@dataclass
class TournamentConfig:
    dataset_path: str
    output_dir: str
    seed: int
    mechanisms: tuple[str, ...] = ALL_MECHANISMS
    critic_backend: str = "oracle"  # "oracle" | "http"
    endpoint: str = ""
    logprob_endpoint: str = ""
    model: str = ""
    auth_env: str = "INFOMECH_API_KEY"
    acceptance_set: tuple[str, ...] = ("significant_gain",)
    negatives_per_positive: int = 1
    bootstrap_iterations: int = 1000
    task_description: str = "Respond to the given source item."
    transform: TransformSpec | None = None
    cache_dir: str = ""
    in_flight_cap: int = 8
    temperature: float = 0.7
    max_tokens: int = 64
    retry_base_delay: float = 0.5
    # Cap on judge-queried same-item pairs per item (None = all); the
    # subsample is seed-deterministic.
    judge_budget_per_item: int | None = None

    def __post_init__(self):
        if self.seed is None:
            raise ValueError("seed is required")
        unknown = set(self.mechanisms) - set(ALL_MECHANISMS)
        if unknown:
            raise ValueError(f"unknown mechanisms: {sorted(unknown)}")
        if self.critic_backend not in ("oracle", "http"):
            raise ValueError(f"unknown backend {self.critic_backend!r}")
        if self.critic_backend == "http" and not self.endpoint:
            raise ValueError("http backend requires an endpoint")
        if self.negatives_per_positive < 1:
            raise ValueError("negatives_per_positive must be >= 1")

    @classmethod
    def from_dict(cls, obj: dict) -> "TournamentConfig":
        obj = dict(obj)
        transform = obj.get("transform")
        if transform is not None:
            obj["transform"] = TransformSpec(**transform)
        if "mechanisms" in obj:
            obj["mechanisms"] = tuple(obj["mechanisms"])
        if "acceptance_set" in obj:
            obj["acceptance_set"] = tuple(obj["acceptance_set"])
        return cls(**obj)

    @classmethod
    def from_json(cls, path: str | Path) -> "TournamentConfig":
        with Path(path).open(encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        # Destination directories are deliberately not echoed: reports are
        # pure functions of (dataset bytes, experiment parameters).
        out = {
            "dataset_path": self.dataset_path,
            "seed": self.seed,
            "mechanisms": list(self.mechanisms),
            "critic_backend": self.critic_backend,
            "endpoint": self.endpoint,
            "logprob_endpoint": self.logprob_endpoint,
            "model": self.model,
            "auth_env": self.auth_env,
            "acceptance_set": list(self.acceptance_set),
            "negatives_per_positive": self.negatives_per_positive,
            "bootstrap_iterations": self.bootstrap_iterations,
            "task_description": self.task_description,
            "transform": None,
            "in_flight_cap": self.in_flight_cap,
            "temperature": self.temperature,
            "max_tokens": self.max_tokens,
            "judge_budget_per_item": self.judge_budget_per_item,
        }
        if self.transform is not None:
            out["transform"] = {
                "kind": self.transform.kind,
                "marker": self.transform.marker,
                "pad": self.transform.pad,
            }
        return out


@dataclass
class MechanismReport:
    payments: dict[str, float]
    payment_kind: str
    item_auc: dict[str, float]
    excluded_items: list[str]
    macro_auc: float | None
    macro_auc_ci: tuple[float, float] | None
    cohens_d: float | None
    cohens_d_ci: tuple[float, float] | None
    d_error: str | None
    accounting: dict[str, int]
    pooled: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "payments": self.payments,
            "payment_kind": self.payment_kind,
            "item_auc": self.item_auc,
            "excluded_items": self.excluded_items,
            "macro_auc": self.macro_auc,
            "macro_auc_ci": list(self.macro_auc_ci) if self.macro_auc_ci else None,
            "cohens_d": self.cohens_d,
            "cohens_d_ci": list(self.cohens_d_ci) if self.cohens_d_ci else None,
            "d_error": self.d_error,
            "accounting": self.accounting,
            "pooled": self.pooled,
        }


@dataclass
class TournamentReport:
    config: dict
    items: list[str]
    agents: list[str]
    pairs_built: int
    mechanisms: dict[str, MechanismReport]
    exclusions: list[dict]

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "items": self.items,
            "agents": self.agents,
            "pairs_built": self.pairs_built,
            "mechanisms": {k: v.to_dict() for k, v in sorted(self.mechanisms.items())},
            "exclusions": self.exclusions,
        }


def _mech_seed(seed: int, mech: str, purpose: str) -> int:
    digest = hashlib.sha256(f"{seed}|{mech}|{purpose}".encode()).digest()
    return int.from_bytes(digest[:8], "big") % (2**63)


def _pair_category_label(a: ResponseRecord, b: ResponseRecord) -> str | None:
    cats = {a.category, b.category}
    if cats == {"faithful"}:
        return "FF"
    if "faithful" in cats and cats & PROBLEMATIC:
        return "FP"
    return None


def _apply_transform_to_pairs(
    pairs: list[PairRecord], records: list[ResponseRecord], spec: TransformSpec
) -> list[PairRecord]:
    transformed = {
        (r.item_id, r.agent_id): ResponseRecord(
            item_id=r.item_id,
            agent_id=r.agent_id,
            category=r.category,
            text=apply_transform(spec, r.text),
        )
        for r in records
    }

    def swap(rec: ResponseRecord) -> ResponseRecord:
        return transformed[(rec.item_id, rec.agent_id)]

    return [
        PairRecord(pair_id=p.pair_id, kind=p.kind, left=swap(p.left), right=swap(p.right))
        for p in pairs
    ]


class _Exclusions:
    def __init__(self):
        self.rows: list[dict] = []

    def add(self, mechanism: str, kind: str, ident: str, reason: str) -> None:
        self.rows.append(
            {"mechanism": mechanism, "kind": kind, "id": ident, "reason": reason}
        )

    def count(self, mechanism: str, kind: str) -> int:
        return sum(
            1 for r in self.rows if r["mechanism"] == mechanism and r["kind"] == kind
        )

    def sorted_rows(self) -> list[dict]:
        return sorted(self.rows, key=lambda r: (r["mechanism"], r["kind"], r["id"]))


def _acquire_verdicts(
    pairs: list[PairRecord],
    fetch: Callable[[PairRecord], object],
    in_flight: int,
    concurrent: bool,
) -> dict[str, object]:
    """Fetch one verdict per pair; results keyed by pair_id, order-independent."""
    results: dict[str, object] = {}
    if concurrent and in_flight > 1:
        with ThreadPoolExecutor(max_workers=in_flight) as pool:
            futures = {p.pair_id: pool.submit(fetch, p) for p in pairs}
        for pid in sorted(futures):
            results[pid] = futures[pid].result()
    else:
        for p in pairs:
            results[p.pair_id] = fetch(p)
    return results


def run_tournament(cfg: TournamentConfig) -> TournamentReport:
    # --- ingest ---------------------------------------------------------
    try:
        dataset = ingest(cfg.dataset_path)
    except Exception as exc:
        raise StageError("ingest", str(exc)) from exc

    # --- pairs ----------------------------------------------------------
    try:
        pairs = build_pairs(dataset.records, cfg.negatives_per_positive, cfg.seed)
    except Exception as exc:
        raise StageError("pairs", str(exc)) from exc

    # --- transform ------------------------------------------------------
    if cfg.transform is not None:
        try:
            pairs = _apply_transform_to_pairs(pairs, dataset.records, cfg.transform)
        except Exception as exc:
            raise StageError("transform", str(exc)) from exc

    # --- backends -------------------------------------------------------
    http_cfg: HttpBackendConfig | None = None
    cache: ResponseCache | None = None
    if cfg.critic_backend == "http":
        cache_root = cfg.cache_dir or str(Path(cfg.output_dir) / "cache")
        cache = ResponseCache(cache_root)
        http_cfg = HttpBackendConfig(
            endpoint=cfg.endpoint,
            model=cfg.model,
            auth_env=cfg.auth_env,
            temperature=cfg.temperature,
            max_tokens=cfg.max_tokens,
            base_delay=cfg.retry_base_delay,
        )

    acceptance = AcceptanceSet(frozenset(cfg.acceptance_set))
    positives = [p for p in pairs if p.kind == "positive"]
    negatives = [p for p in pairs if p.kind == "negative"]
    exclusions = _Exclusions()

    agents = dataset.agent_ids
    items = dataset.item_ids
    reports: dict[str, MechanismReport] = {}

    # Per-item unordered pair scores per mechanism feed AUC, payments, and d.
    for mech in cfg.mechanisms:
        try:
            if mech == "tvd_mi":
                pair_scores, extra = _score_tvd_mi(
                    cfg, positives, negatives, acceptance, http_cfg, cache, exclusions
                )
                agent_item = _agent_item_from_pairs(pair_scores)
                payment_kind = "pairwise_sum"
                applicable = len(positives) + len(negatives)
            elif mech in ("mi_doe", "gppm"):
                pair_scores = _score_logprob(cfg, mech, positives, exclusions)
                agent_item = _agent_item_from_pairs(pair_scores)
                extra = {}
                payment_kind = "pairwise_sum"
                applicable = len(positives)
            else:
                with_ctx = mech == "judge_with_ctx"
                pair_scores, agent_item, applicable = _score_judge(
                    cfg, mech, with_ctx, positives, dataset, http_cfg, cache, exclusions
                )
                extra = {}
                payment_kind = "mean_relative_score"
        except StageError:
            raise
        except Exception as exc:
            raise StageError(f"score:{mech}", str(exc)) from exc

        try:
            reports[mech] = _assemble_mechanism_report(
                cfg, mech, pair_scores, agent_item, payment_kind, extra,
                dataset, agents, items, len(positives) + len(negatives),
                applicable, exclusions,
            )
        except Exception as exc:
            raise StageError(f"report:{mech}", str(exc)) from exc

    report = TournamentReport(
        config=cfg.to_dict(),
        items=items,
        agents=agents,
        pairs_built=len(pairs),
        mechanisms=reports,
        exclusions=exclusions.sorted_rows(),
    )
    try:
        _write_report(cfg, report)
    except Exception as exc:
        raise StageError("emit", str(exc)) from exc
    return report


# --- mechanism scoring -----------------------------------------------------


def _critic_fetch(
    cfg: TournamentConfig,
    http_cfg: HttpBackendConfig | None,
    cache: ResponseCache | None,
) -> Callable[[PairRecord], CriticVerdict | None]:
    def fetch(pair: PairRecord) -> CriticVerdict | None:
        if cfg.critic_backend == "oracle":
            return oracle_critic(pair)
        try:
            return llm_critic(pair, http_cfg, cfg.task_description, cache)
        except UnparseableVerdictError:
            return None

    return fetch


def _score_tvd_mi(
    cfg: TournamentConfig,
    positives: list[PairRecord],
    negatives: list[PairRecord],
    acceptance: AcceptanceSet,
    http_cfg: HttpBackendConfig | None,
    cache: ResponseCache | None,
    exclusions: _Exclusions,
) -> tuple[dict[str, dict[tuple[str, str], float]], dict[str, float]]:
    """Per-item bidirectional pair scores: positive acceptance minus the
    acceptance rate of the pair's matched cross-item negatives."""
    fetch = _critic_fetch(cfg, http_cfg, cache)
    verdicts = _acquire_verdicts(
        positives + negatives, fetch, cfg.in_flight_cap, cfg.critic_backend == "http"
    )

    def accept(pid: str) -> float | None:
        v = verdicts.get(pid)
        if v is None:
            return None
        return 1.0 if acceptance.accepts(v) else 0.0

    # Group ordered positives and their matched negatives by unordered pair.
    pos_acc: dict[tuple[str, str, str], list[float]] = {}
    neg_acc: dict[tuple[str, str, str], list[float]] = {}
    pooled_pos: list[float] = []
    pooled_neg: list[float] = []
    per_item_pos: dict[str, list[float]] = {}
    per_item_neg: dict[str, list[float]] = {}

    for p in positives:
        a = accept(p.pair_id)
        if a is None:
            exclusions.add("tvd_mi", "pair", p.pair_id, "unparseable verdict")
            continue
        key = (p.left.item_id, *sorted((p.left.agent_id, p.right.agent_id)))
        pos_acc.setdefault(key, []).append(a)
        pooled_pos.append(a)
        per_item_pos.setdefault(p.left.item_id, []).append(a)
    for p in negatives:
        a = accept(p.pair_id)
        if a is None:
            exclusions.add("tvd_mi", "pair", p.pair_id, "unparseable verdict")
            continue
        item, left_agent, right_agent = p.pair_id.split("|")[1:4]
        key = (item, *sorted((left_agent, right_agent)))
        neg_acc.setdefault(key, []).append(a)
        pooled_neg.append(a)
        per_item_neg.setdefault(item, []).append(a)

    pair_scores: dict[str, dict[tuple[str, str], float]] = {}
    for key, pos_list in pos_acc.items():
        item, a_id, b_id = key
        neg_list = neg_acc.get(key, [])
        neg_rate = sum(neg_list) / len(neg_list) if neg_list else 0.0
        score = sum(pos_list) / len(pos_list) - neg_rate
        pair_scores.setdefault(item, {})[(a_id, b_id)] = score

    extra: dict[str, float] = {}
    if pooled_pos and pooled_neg:
        tpr = sum(pooled_pos) / len(pooled_pos)
        tnr = 1.0 - sum(pooled_neg) / len(pooled_neg)
        extra = {"tpr": tpr, "tnr": tnr, "score": tpr + tnr - 1.0}
        item_scores = [
            (sum(per_item_pos[i]) / len(per_item_pos[i]))
            + (1.0 - sum(per_item_neg[i]) / len(per_item_neg[i]))
            - 1.0
            for i in per_item_pos
            if i in per_item_neg
        ]
        if item_scores:
            extra["per_item_mean_score"] = sum(item_scores) / len(item_scores)
    return pair_scores, extra


def _score_logprob(
    cfg: TournamentConfig,
    mech: str,
    positives: list[PairRecord],
    exclusions: _Exclusions,
) -> dict[str, dict[tuple[str, str], float]]:
    if cfg.critic_backend == "oracle":
        provider = EchoOracleProvider()
    else:
        if not cfg.logprob_endpoint:
            raise ValueError(f"{mech} with the http backend needs logprob_endpoint")
        provider = HttpLogProbProvider(
            cfg.logprob_endpoint, base_delay=cfg.retry_base_delay
        )
    score_fn = mi_doe_score if mech == "mi_doe" else gppm_score

    directional: dict[str, dict[tuple[str, str], float]] = {}
    for p in positives:
        value = score_fn(p.left.text, p.right.text, cfg.task_description, provider)
        directional.setdefault(p.left.item_id, {})[
            (p.left.agent_id, p.right.agent_id)
        ] = value

    return {item: symmetrize(scores) for item, scores in directional.items()}


def _judge_budget_filter(
    cfg: TournamentConfig, mech: str, positives: list[PairRecord]
) -> list[PairRecord]:
    """Seed-deterministic per-item cap on judged pairs (both directions kept)."""
    if cfg.judge_budget_per_item is None:
        return positives
    rng = np.random.default_rng(_mech_seed(cfg.seed, mech, "judge_budget"))
    by_item: dict[str, list[tuple[str, str]]] = {}
    for p in positives:
        key = tuple(sorted((p.left.agent_id, p.right.agent_id)))
        if key not in by_item.setdefault(p.left.item_id, []):
            by_item[p.left.item_id].append(key)
    keep: set[tuple[str, str, str]] = set()
    for item, pairs in by_item.items():
        take = min(cfg.judge_budget_per_item, len(pairs))
        chosen = rng.choice(len(pairs), size=take, replace=False)
        for idx in sorted(int(i) for i in chosen):
            keep.add((item, *pairs[idx]))
    return [
        p
        for p in positives
        if (p.left.item_id, *sorted((p.left.agent_id, p.right.agent_id))) in keep
    ]


def _score_judge(
    cfg: TournamentConfig,
    mech: str,
    with_ctx: bool,
    positives: list[PairRecord],
    dataset: Dataset,
    http_cfg: HttpBackendConfig | None,
    cache: ResponseCache | None,
    exclusions: _Exclusions,
) -> tuple[dict[str, dict[tuple[str, str], float]], dict[tuple[str, str], float]]:
    positives = _judge_budget_filter(cfg, mech, positives)

    def fetch(pair: PairRecord) -> str | None:
        source = dataset.sources.get(pair.left.item_id, "")
        if cfg.critic_backend == "oracle":
            return oracle_judge(pair, with_ctx, source)
        try:
            return llm_judge(
                pair, with_ctx, http_cfg, cfg.task_description, source, cache
            )
        except UnparseableVerdictError:
            return None

    verdicts = _acquire_verdicts(
        positives, fetch, cfg.in_flight_cap, cfg.critic_backend == "http"
    )

    prefs_by_item: dict[str, list[tuple[tuple[str, str], str]]] = {}
    for p in positives:
        v = verdicts.get(p.pair_id)
        if v is None:
            exclusions.add(mech, "pair", p.pair_id, "unparseable verdict")
            continue
        prefs_by_item.setdefault(p.left.item_id, []).append(
            ((p.left.agent_id, p.right.agent_id), v)
        )

    agent_item: dict[tuple[str, str], float] = {}
    pair_scores: dict[str, dict[tuple[str, str], float]] = {}
    for item, prefs in prefs_by_item.items():
        rel = judge_preferences_to_scores(prefs)
        for agent, value in rel.items():
            agent_item[(item, agent)] = value
        seen: set[tuple[str, str]] = set()
        for (a, b), _ in prefs:
            key = (a, b) if a <= b else (b, a)
            if key in seen or key[0] not in rel or key[1] not in rel:
                continue
            seen.add(key)
            pair_scores.setdefault(item, {})[key] = (rel[key[0]] + rel[key[1]]) / 2.0
    return pair_scores, agent_item, len(positives)


def _agent_item_from_pairs(
    pair_scores: dict[str, dict[tuple[str, str], float]],
) -> dict[tuple[str, str], float]:
    """Per-(item, agent) score: mean of the agent's pair scores on the item."""
    sums: dict[tuple[str, str], float] = {}
    counts: dict[tuple[str, str], int] = {}
    for item, scores in pair_scores.items():
        for (a, b), value in scores.items():
            for agent in (a, b):
                sums[(item, agent)] = sums.get((item, agent), 0.0) + value
                counts[(item, agent)] = counts.get((item, agent), 0) + 1
    return {key: sums[key] / counts[key] for key in sums}


def _assemble_mechanism_report(
    cfg: TournamentConfig,
    mech: str,
    pair_scores: dict[str, dict[tuple[str, str], float]],
    agent_item: dict[tuple[str, str], float],
    payment_kind: str,
    extra: dict[str, float],
    dataset: Dataset,
    agents: list[str],
    items: list[str],
    built: int,
    applicable: int,
    exclusions: _Exclusions,
) -> MechanismReport:
    category = {r.agent_id: r.category for r in dataset.records}

    # Payments
    if payment_kind == "pairwise_sum":
        cross_item: dict[tuple[str, str], list[float]] = {}
        for scores in pair_scores.values():
            for key, value in scores.items():
                cross_item.setdefault(key, []).append(value)
        mean_scores = {k: sum(v) / len(v) for k, v in cross_item.items()}
        payments = aggregate_payments(mean_scores, agents)
    else:
        sums: dict[str, float] = {}
        counts: dict[str, int] = {}
        for (item, agent), value in agent_item.items():
            sums[agent] = sums.get(agent, 0.0) + value
            counts[agent] = counts.get(agent, 0) + 1
        payments = {a: (sums[a] / counts[a] if a in sums else 0.0) for a in agents}

    # Item-level AUC over FF vs FP pairs
    item_aucs: dict[str, float] = {}
    excluded_items: list[str] = []
    for item in items:
        scores = pair_scores.get(item, {})
        labelled: list[tuple[float, str]] = []
        for (a, b), value in scores.items():
            rec_a = next(r for r in dataset.records if r.item_id == item and r.agent_id == a)
            rec_b = next(r for r in dataset.records if r.item_id == item and r.agent_id == b)
            label = _pair_category_label(rec_a, rec_b)
            if label is not None:
                labelled.append((value, label))
        try:
            item_aucs[item] = item_auc(labelled)
        except ValueError:
            excluded_items.append(item)
            exclusions.add(mech, "item", item, "single-class item for AUC")

    macro: float | None = None
    macro_ci: tuple[float, float] | None = None
    if item_aucs:
        values = [item_aucs[i] for i in sorted(item_aucs)]
        macro = macro_auc(values)
        if len(values) >= 2:
            macro_ci = bootstrap_ci(
                lambda xs: float(sum(xs) / len(xs)),
                values,
                iterations=cfg.bootstrap_iterations,
                rng_seed=_mech_seed(cfg.seed, mech, "auc_ci"),
            )

    # Paired effect size between category means per item
    gf_means: list[float] = []
    prob_means: list[float] = []
    for item in items:
        gf = [
            agent_item[(item, a)]
            for a in agents
            if (item, a) in agent_item and category[a] in GOOD_FAITH
        ]
        prob = [
            agent_item[(item, a)]
            for a in agents
            if (item, a) in agent_item and category[a] in PROBLEMATIC
        ]
        if gf and prob:
            gf_means.append(sum(gf) / len(gf))
            prob_means.append(sum(prob) / len(prob))

    d_value: float | None = None
    d_ci: tuple[float, float] | None = None
    d_error: str | None = None
    if len(gf_means) >= 2:
        try:
            d_value = cohens_d_paired(gf_means, prob_means)
        except ZeroVarianceError as exc:
            d_error = str(exc)
        if d_value is not None:

            def d_stat(pairs: list) -> float:
                try:
                    return cohens_d_paired([g for g, _ in pairs], [p for _, p in pairs])
                except ZeroVarianceError:
                    return float("nan")

            lo, hi = bootstrap_ci(
                d_stat,
                list(zip(gf_means, prob_means)),
                iterations=cfg.bootstrap_iterations,
                rng_seed=_mech_seed(cfg.seed, mech, "d_ci"),
            )
            if not (math.isnan(lo) or math.isnan(hi)):
                d_ci = (lo, hi)
    else:
        d_error = "fewer than 2 items with both categories"

    # Accounting: every built pair is scored, excluded, or not applicable.
    excluded_pairs = exclusions.count(mech, "pair")
    not_applicable = built - applicable
    scored = applicable - excluded_pairs
    accounting = {
        "built": built,
        "scored": scored,
        "excluded_pairs": excluded_pairs,
        "not_applicable": not_applicable,
    }

    return MechanismReport(
        payments={a: payments.get(a, 0.0) for a in agents},
        payment_kind=payment_kind,
        item_auc=item_aucs,
        excluded_items=sorted(excluded_items),
        macro_auc=macro,
        macro_auc_ci=macro_ci,
        cohens_d=d_value,
        cohens_d_ci=d_ci,
        d_error=d_error,
        accounting=accounting,
        pooled=extra,
    )


# --- emission ----------------------------------------------------------------


def _write_report(cfg: TournamentConfig, report: TournamentReport) -> None:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    (out / "report.json").write_text(
        json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )

    rows: list[tuple[str, str, str, str]] = []
    for mech, mr in report.mechanisms.items():
        for agent, value in mr.payments.items():
            rows.append((mech, "payment", agent, repr(value)))
        for item, value in mr.item_auc.items():
            rows.append((mech, "item_auc", item, repr(value)))
        summary: list[tuple[str, float | None]] = [
            ("macro_auc", mr.macro_auc),
            ("macro_auc_lo", mr.macro_auc_ci[0] if mr.macro_auc_ci else None),
            ("macro_auc_hi", mr.macro_auc_ci[1] if mr.macro_auc_ci else None),
            ("cohens_d", mr.cohens_d),
            ("cohens_d_lo", mr.cohens_d_ci[0] if mr.cohens_d_ci else None),
            ("cohens_d_hi", mr.cohens_d_ci[1] if mr.cohens_d_ci else None),
            ("excluded_items", float(len(mr.excluded_items))),
        ]
        for name, value in summary:
            rows.append((mech, "summary", name, "" if value is None else repr(value)))
    rows.sort()
    with (out / "report.csv").open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["mechanism", "record_type", "id", "value"])
        writer.writerows(rows)

    with (out / "excluded.log").open("w", encoding="utf-8") as fh:
        for row in report.exclusions:
            fh.write(
                f"mechanism={row['mechanism']} kind={row['kind']} "
                f"id={row['id']} reason={row['reason']}\n"
            )


def degradation_report(
    baseline: TournamentReport, transformed: TournamentReport
) -> dict[str, dict[str, float | None]]:
    """Per-mechanism change in effect size and macro AUC under a transform."""
    out: dict[str, dict[str, float | None]] = {}
    for mech in baseline.mechanisms:
        if mech not in transformed.mechanisms:
            continue
        b = baseline.mechanisms[mech]
        t = transformed.mechanisms[mech]
        out[mech] = {
            "delta_d": None
            if b.cohens_d is None or t.cohens_d is None
            else t.cohens_d - b.cohens_d,
            "delta_macro_auc": None
            if b.macro_auc is None or t.macro_auc is None
            else t.macro_auc - b.macro_auc,
        }
    return out
