"""Log-probability-based scoring baselines behind an abstract provider.

Both scores are pointwise conditional-vs-marginal log-probability
differences with swappable conditioning templates; the templates are config
artifacts, not fixed truths, and swapping them visibly changes scores.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Protocol

from ._http import post_json


class ProviderError(RuntimeError):
    """Provider failure; carries the request that failed."""

    def __init__(self, message: str, request: dict):
        super().__init__(message)
        self.request = request


class LogProbProvider(Protocol):
    def logprob(self, context: str, continuation: str) -> tuple[float, int]:
        """Total log-probability (<= 0) of the continuation and its token count."""
        ...


@dataclass(frozen=True)
class LogProbTemplates:
    """Conditioning templates; ``{task}`` and ``{peer}`` are substituted."""

    unconditioned: str = "{task}"
    doe_conditioned: str = "{task}\n\n{peer}"
    gppm_conditioned: str = '{task}\n\nA peer agent reported the following about the same input:\n"{peer}"'


DEFAULT_TEMPLATES = LogProbTemplates()


class EchoOracleProvider:
    """Deterministic local provider for tests; no network.

    Each continuation token costs -0.1 if it occurs in the context and -1.0
    otherwise, so log-probabilities are additive over concatenation and
    echoed content scores strictly higher. Tokens are lowercased word
    characters, which keeps the oracle insensitive to quoting and casing in
    conditioning templates.
    """

    PRESENT_COST = -0.1
    ABSENT_COST = -1.0

    @staticmethod
    def _tokens(text: str) -> list[str]:
        return re.findall(r"\w+", text.lower())

    def logprob(self, context: str, continuation: str) -> tuple[float, int]:
        context_tokens = set(self._tokens(context))
        tokens = self._tokens(continuation)
        total = sum(
            self.PRESENT_COST if tok in context_tokens else self.ABSENT_COST
            for tok in tokens
        )
        return total, max(1, len(tokens))


class HttpLogProbProvider:
    """Provider over HTTP: request {context, continuation}, response
    {logprob, tokens}. Responses are memoized per session so identical
    inputs stay deterministic.
    """

    def __init__(
        self,
        endpoint: str,
        headers: dict | None = None,
        attempts: int = 3,
        base_delay: float = 0.5,
        timeout: float = 60.0,
    ):
        self.endpoint = endpoint
        self.headers = headers or {}
        self.attempts = attempts
        self.base_delay = base_delay
        self.timeout = timeout
        self._memo: dict[tuple[str, str], tuple[float, int]] = {}

    def logprob(self, context: str, continuation: str) -> tuple[float, int]:
        key = (context, continuation)
        if key in self._memo:
            return self._memo[key]
        payload = {"context": context, "continuation": continuation}
        body = post_json(
            self.endpoint,
            payload,
            headers=self.headers,
            attempts=self.attempts,
            base_delay=self.base_delay,
            timeout=self.timeout,
        )
        try:
            lp = float(body["logprob"])
            tokens = int(body["tokens"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ProviderError(f"malformed provider response: {body!r}", payload) from exc
        if lp > 0.0 or tokens < 1:
            raise ProviderError(f"invalid provider values: {body!r}", payload)
        self._memo[key] = (lp, tokens)
        return lp, tokens


def _score(
    conditioned_template: str,
    y_i: str,
    y_j: str,
    task_context: str,
    p: LogProbProvider,
    per_token: bool,
    templates: LogProbTemplates,
) -> float:
    if not y_j:
        raise ValueError("scored text must be non-empty")
    base_ctx = templates.unconditioned.format(task=task_context)
    # An empty peer report conditions on nothing: both terms cancel exactly.
    if not y_i:
        cond_ctx = base_ctx
    else:
        cond_ctx = conditioned_template.format(task=task_context, peer=y_i)
    try:
        lp_cond, _ = p.logprob(cond_ctx, y_j)
        lp_base, tokens = p.logprob(base_ctx, y_j)
    except ProviderError:
        raise
    except Exception as exc:
        raise ProviderError(
            f"provider failed: {exc}",
            {"context": base_ctx, "continuation": y_j},
        ) from exc
    score = lp_cond - lp_base
    if per_token:
        score /= tokens
    return score


def mi_doe_score(
    y_i: str,
    y_j: str,
    task_context: str,
    p: LogProbProvider,
    per_token: bool = False,
    templates: LogProbTemplates = DEFAULT_TEMPLATES,
) -> float:
    """Difference-of-entropies style score: how much y_i helps predict y_j.

    logp(y_j | task + y_i) - logp(y_j | task); positive values mean y_i is
    informative about y_j.
    """
    return _score(templates.doe_conditioned, y_i, y_j, task_context, p, per_token, templates)


def gppm_score(
    y_i: str,
    y_j: str,
    task_context: str,
    p: LogProbProvider,
    per_token: bool = False,
    templates: LogProbTemplates = DEFAULT_TEMPLATES,
) -> float:
    """Generative peer-prediction score: peer report quoted as evidence."""
    return _score(templates.gppm_conditioned, y_i, y_j, task_context, p, per_token, templates)
