"""Critic and judge backends.

The deterministic oracle backend scores content-word overlap and needs no
network; the HTTP backend renders prompt templates, calls a chat-completion
endpoint, and parses bracketed verdict tags.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

from .._http import post_json
from ..mechanism import CriticVerdict, PairRecord
from .cache import ResponseCache


class UnparseableVerdictError(ValueError):
    """The response contained no recognizable verdict tag."""


# ---------------------------------------------------------------------------
# Deterministic oracle backend

_WORD = re.compile(r"[a-z0-9]+")

SIGNIFICANT_OVERLAP = 0.5
LITTLE_OVERLAP = 0.2


def content_words(text: str) -> set[str]:
    """Lowercased alphanumeric tokens of length >= 3."""
    return {w for w in _WORD.findall(text.lower()) if len(w) >= 3}


def content_overlap(a: str, b: str) -> float:
    """Jaccard overlap of content words; identical empty texts count as 1."""
    wa, wb = content_words(a), content_words(b)
    union = wa | wb
    if not union:
        return 1.0
    return len(wa & wb) / len(union)


def oracle_critic(pair: PairRecord) -> CriticVerdict:
    """Deterministic same-source verdict from content-word overlap."""
    overlap = content_overlap(pair.left.text, pair.right.text)
    if overlap >= SIGNIFICANT_OVERLAP:
        level = "significant_gain"
    elif overlap >= LITTLE_OVERLAP:
        level = "little_gain"
    else:
        level = "no_gain"
    return CriticVerdict(level=level, raw=f"overlap={overlap:.6f}")


def oracle_judge(pair: PairRecord, with_context: bool, source: str = "") -> str:
    """Deterministic quality preference.

    With context the response closer to the source wins; without context the
    response with the richer content vocabulary wins. Equal -> tie.
    """
    if with_context:
        a = content_overlap(pair.left.text, source)
        b = content_overlap(pair.right.text, source)
    else:
        a = float(len(content_words(pair.left.text)))
        b = float(len(content_words(pair.right.text)))
    if a > b:
        return "A"
    if b > a:
        return "B"
    return "tie"


# ---------------------------------------------------------------------------
# Prompt templates (config artifacts; edit to taste)

CRITIC_TEMPLATE_ID = "critic-v1"
CRITIC_TEMPLATE = """You are evaluating whether two responses could be from agents working on the same task.

Task description: {task}

Response A: {a}

Response B: {b}

Do these responses show evidence of coming from the same task/source?
Consider:
- Shared specific details, facts, or entities
- Similar topics or themes
- Overlapping information that would be unlikely if from different sources

Rate the information gain:
- [[Significant Gain]]: Clear evidence they're from the same source
- [[Little Gain]]: Some shared elements but also differences
- [[No Gain]]: No evidence of shared source
"""

JUDGE_TEMPLATE_ID = "judge-v1"
JUDGE_TEMPLATE_WITH_CONTEXT = """Please act as an impartial judge and evaluate the quality of the two responses below.

Task description: {task}

Source material:
{source}

Response A: {a}

Response B: {b}

Judge which response demonstrates better overall quality considering factors such as accuracy with respect to the source, clarity, coherence, depth, and informativeness.

Output your final verdict: "[[A]]" if response A is better, "[[B]]" if response B is better, and "[[C]]" for a tie.
"""

JUDGE_TEMPLATE_NO_CONTEXT = """Please act as an impartial judge and evaluate the quality of the two responses below.

Task description: {task}

Response A: {a}

Response B: {b}

Without access to the source material, judge which response demonstrates better overall quality considering factors such as clarity, coherence, depth, and informativeness.

Output your final verdict: "[[A]]" if response A is better, "[[B]]" if response B is better, and "[[C]]" for a tie.
"""

_CRITIC_TAGS = {
    "significant gain": "significant_gain",
    "little gain": "little_gain",
    "no gain": "no_gain",
}
_TAG = re.compile(r"\[\[([^\[\]]+)\]\]")


def parse_critic_verdict(raw: str) -> CriticVerdict:
    """Extract the first bracketed rating tag from a critic response."""
    for match in _TAG.finditer(raw):
        tag = match.group(1).strip().lower()
        if tag in _CRITIC_TAGS:
            return CriticVerdict(level=_CRITIC_TAGS[tag], raw=raw)
    raise UnparseableVerdictError(f"no rating tag in response: {raw[:200]!r}")


def parse_judge_verdict(raw: str) -> str:
    """Extract the first [[A]]/[[B]]/[[C]] tag; C maps to a tie."""
    for match in _TAG.finditer(raw):
        tag = match.group(1).strip().upper()
        if tag in ("A", "B"):
            return tag
        if tag == "C":
            return "tie"
    raise UnparseableVerdictError(f"no verdict tag in response: {raw[:200]!r}")


# ---------------------------------------------------------------------------
# HTTP chat-completion backend

@dataclass(frozen=True)
class HttpBackendConfig:
    endpoint: str
    model: str
    auth_env: str = "INFOMECH_API_KEY"
    temperature: float = 0.7
    max_tokens: int = 64
    attempts: int = 3
    base_delay: float = 0.5
    timeout: float = 60.0


def chat_completion(prompt: str, cfg: HttpBackendConfig) -> str:
    """Single chat-completion call; returns the raw assistant text."""
    headers = {}
    key = os.environ.get(cfg.auth_env, "")
    if key:
        headers["Authorization"] = f"Bearer {key}"
    payload = {
        "model": cfg.model,
        "messages": [{"role": "user", "content": prompt}],
        "temperature": cfg.temperature,
        "max_tokens": cfg.max_tokens,
    }
    body = post_json(
        cfg.endpoint,
        payload,
        headers=headers,
        attempts=cfg.attempts,
        base_delay=cfg.base_delay,
        timeout=cfg.timeout,
    )
    try:
        return body["choices"][0]["message"]["content"]
    except (KeyError, IndexError, TypeError) as exc:
        raise UnparseableVerdictError(f"malformed completion response: {body!r}") from exc


def llm_critic(
    pair: PairRecord,
    cfg: HttpBackendConfig,
    task_description: str = "",
    cache: ResponseCache | None = None,
) -> CriticVerdict:
    """Same-source critic over HTTP; raw responses are cached."""
    key = None
    if cache is not None:
        key = cache.make_key(
            CRITIC_TEMPLATE_ID, pair.left.text, pair.right.text, cfg.model, "lr"
        )
        hit = cache.get(key)
        if hit is not None:
            return parse_critic_verdict(hit["raw"])
    prompt = CRITIC_TEMPLATE.format(
        task=task_description, a=pair.left.text, b=pair.right.text
    )
    raw = chat_completion(prompt, cfg)
    if cache is not None and key is not None:
        cache.put(key, {"raw": raw})
    return parse_critic_verdict(raw)


def llm_judge(
    pair: PairRecord,
    with_context: bool,
    cfg: HttpBackendConfig,
    task_description: str = "",
    source: str = "",
    cache: ResponseCache | None = None,
) -> str:
    """Pairwise quality judge over HTTP; returns 'A', 'B', or 'tie'."""
    template_id = f"{JUDGE_TEMPLATE_ID}-{'ctx' if with_context else 'noctx'}"
    key = None
    if cache is not None:
        key = cache.make_key(
            template_id, pair.left.text, pair.right.text, cfg.model, "lr"
        )
        hit = cache.get(key)
        if hit is not None:
            return parse_judge_verdict(hit["raw"])
    if with_context:
        prompt = JUDGE_TEMPLATE_WITH_CONTEXT.format(
            task=task_description, source=source, a=pair.left.text, b=pair.right.text
        )
    else:
        prompt = JUDGE_TEMPLATE_NO_CONTEXT.format(
            task=task_description, a=pair.left.text, b=pair.right.text
        )
    raw = chat_completion(prompt, cfg)
    if cache is not None and key is not None:
        cache.put(key, {"raw": raw})
    return parse_judge_verdict(raw)
