"""JSONL dataset ingestion.

One object per line with keys item_id, agent_id, category, text, and an
optional source; the source is the item's input document and must agree
across records of the same item.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..mechanism import CATEGORIES, ResponseRecord


class IngestError(ValueError):
    pass


@dataclass
class Dataset:
    records: list[ResponseRecord]
    sources: dict[str, str] = field(default_factory=dict)

    @property
    def item_ids(self) -> list[str]:
        seen: dict[str, None] = {}
        for rec in self.records:
            seen.setdefault(rec.item_id, None)
        return list(seen)

    @property
    def agent_ids(self) -> list[str]:
        seen: dict[str, None] = {}
        for rec in self.records:
            seen.setdefault(rec.agent_id, None)
        return list(seen)


def ingest(path: str | Path) -> Dataset:
    """Parse and validate a JSONL dataset; errors carry line numbers."""
    path = Path(path)
    if not path.exists():
        raise IngestError(f"dataset file not found: {path}")
    records: list[ResponseRecord] = []
    sources: dict[str, str] = {}
    seen_keys: set[tuple[str, str]] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"line {lineno}: malformed JSON: {exc}") from exc
            if not isinstance(obj, dict):
                raise IngestError(f"line {lineno}: expected an object")
            missing = [k for k in ("item_id", "agent_id", "category", "text") if k not in obj]
            if missing:
                raise IngestError(f"line {lineno}: missing keys {missing}")
            item_id = str(obj["item_id"])
            agent_id = str(obj["agent_id"])
            category = str(obj["category"])
            if category not in CATEGORIES:
                raise IngestError(
                    f"line {lineno}: unknown category {category!r}; "
                    f"valid: {', '.join(CATEGORIES)}"
                )
            key = (item_id, agent_id)
            if key in seen_keys:
                raise IngestError(f"line {lineno}: duplicate (item_id, agent_id) {key}")
            seen_keys.add(key)
            records.append(
                ResponseRecord(
                    item_id=item_id,
                    agent_id=agent_id,
                    category=category,
                    text=str(obj["text"]),
                )
            )
            source = obj.get("source")
            if source is not None:
                source = str(source)
                if item_id in sources and sources[item_id] != source:
                    raise IngestError(
                        f"line {lineno}: conflicting source for item {item_id!r}"
                    )
                sources[item_id] = source
    if not records:
        raise IngestError(f"dataset is empty: {path}")
    return Dataset(records=records, sources=sources)


def save_jsonl(dataset: Dataset, path: str | Path) -> None:
    """Write a dataset back in the same JSONL schema."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for rec in dataset.records:
            obj = {
                "item_id": rec.item_id,
                "agent_id": rec.agent_id,
                "category": rec.category,
                "text": rec.text,
            }
            if rec.item_id in dataset.sources:
                obj["source"] = dataset.sources[rec.item_id]
            fh.write(json.dumps(obj, sort_keys=True) + "\n")
