"""Tournament harness: dataset ingestion, critics and judges (deterministic
oracle and HTTP-backed), response caching, orchestration, and reports.
"""

from .ingest import Dataset, ingest, save_jsonl
from .tournament import TournamentConfig, TournamentReport, run_tournament

__all__ = [
    "Dataset",
    "ingest",
    "save_jsonl",
    "TournamentConfig",
    "TournamentReport",
    "run_tournament",
]
