"""Bundled synthetic tournament fixture.

Twenty items, eight agents each: four faithful agents that echo most of the
item's vocabulary and four problematic agents that emit near-generic text.
Word pools are engineered so the content-overlap critic lands same-item
faithful pairs above the significant-gain threshold and faithful-problematic
pairs below the little-gain one, with enough per-item jitter for effect-size
statistics to be well defined.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import numpy as np

from ..mechanism import ResponseRecord
from .ingest import Dataset, save_jsonl

FIXTURE_SEED = 20240601

_AGENTS = (
    ("fa0", "faithful"),
    ("fa1", "faithful"),
    ("fa2", "faithful"),
    ("fa3", "faithful"),
    ("pr0", "strategic"),
    ("pr1", "strategic"),
    ("pr2", "low_effort"),
    ("pr3", "low_effort"),
)

_ITEM_VOCAB = 12
_GENERIC_POOL = [f"generic{g:02d}" for g in range(10)]


def _sentences(words: list[str]) -> str:
    chunks = []
    for start in range(0, len(words), 4):
        part = " ".join(words[start : start + 4])
        chunks.append(part.capitalize() + ".")
    return " ".join(chunks)


def synthetic_fixture(items: int = 20, seed: int = FIXTURE_SEED) -> Dataset:
    """Deterministic dataset of ``items`` x 8 agent responses plus sources."""
    rng = np.random.default_rng(seed)
    records: list[ResponseRecord] = []
    sources: dict[str, str] = {}
    for i in range(items):
        item_id = f"item{i:02d}"
        vocab = [f"topic{i:02d}w{w:02d}" for w in range(_ITEM_VOCAB)]
        sources[item_id] = _sentences(vocab + [f"extra{i:02d}a", f"extra{i:02d}b"])
        for agent_id, category in _AGENTS:
            if category == "faithful":
                take = int(rng.integers(10, _ITEM_VOCAB + 1))
                picked = list(rng.choice(vocab, size=take, replace=False))
                words = picked + [f"sig{agent_id}"]
            else:
                take = int(rng.integers(6, 9))
                words = list(rng.choice(_GENERIC_POOL, size=take, replace=False))
                if rng.random() < 0.2:
                    words.append(str(rng.choice(vocab)))
                words.append(f"sig{agent_id}")
            records.append(
                ResponseRecord(
                    item_id=item_id,
                    agent_id=agent_id,
                    category=category,
                    text=_sentences(words),
                )
            )
    return Dataset(records=records, sources=sources)


def fixture_path() -> Path:
    """Location of the checked-in fixture JSONL."""
    return Path(str(resources.files("infomech").joinpath("data/fixture.jsonl")))


def write_fixture(path: str | Path, items: int = 20, seed: int = FIXTURE_SEED) -> None:
    save_jsonl(synthetic_fixture(items=items, seed=seed), path)
