"""POST-with-retries helper shared by the HTTP-backed clients."""

from __future__ import annotations

import time

import requests


def post_json(
    url: str,
    payload: dict,
    headers: dict | None = None,
    attempts: int = 3,
    base_delay: float = 0.5,
    timeout: float = 60.0,
) -> dict:
    """POST a JSON payload, retrying with capped exponential backoff.

    Requests are content-addressed by callers, so retries are idempotent.
    """
    last: Exception | None = None
    for attempt in range(attempts):
        try:
            resp = requests.post(url, json=payload, headers=headers, timeout=timeout)
            resp.raise_for_status()
            return resp.json()
        except (requests.RequestException, ValueError) as exc:
            last = exc
            if attempt + 1 < attempts:
                time.sleep(min(base_delay * 2**attempt, 8.0))
    raise ConnectionError(f"request to {url} failed after {attempts} attempts: {last}")
