"""Background webhook delivery with bounded retries."""

from __future__ import annotations

import logging
import queue
import threading
import time
from typing import Callable, Iterable, Optional

from .notifications import DeliveryStatus, WebhookDelivery

logger = logging.getLogger(__name__)

PostFn = Callable[[str, dict], int]

RETRY_BACKOFF_SECONDS = (1.0, 5.0, 25.0)
MAX_ATTEMPTS = 3


def _requests_post(url: str, payload: dict) -> int:
    import requests

    response = requests.post(url, json=payload, timeout=10)
    return response.status_code


class WebhookDispatcher:
    """Single worker draining a delivery queue.

    Each delivery gets up to MAX_ATTEMPTS tries with the configured backoff
    between them, then is marked failed and kept in the record list.
    """

    def __init__(
        self,
        post: PostFn | None = None,
        backoffs: tuple[float, ...] = RETRY_BACKOFF_SECONDS,
        sleep: Callable[[float], None] = time.sleep,
        max_attempts: int = MAX_ATTEMPTS,
    ):
        self._post = post or _requests_post
        self._backoffs = backoffs
        self._sleep = sleep
        self._max_attempts = max_attempts
        self._queue: "queue.Queue[WebhookDelivery]" = queue.Queue()
        self._records: list[WebhookDelivery] = []
        self._pending = 0
        self._cond = threading.Condition()
        self._worker: Optional[threading.Thread] = None

    def enqueue(self, deliveries: Iterable[WebhookDelivery]) -> None:
        items = list(deliveries)
        if not items:
            return
        with self._cond:
            self._records.extend(items)
            self._pending += len(items)
            self._ensure_worker()
        for item in items:
            self._queue.put(item)

    def _ensure_worker(self) -> None:
        if self._worker is None or not self._worker.is_alive():
            self._worker = threading.Thread(target=self._run, daemon=True, name="webhook-dispatch")
            self._worker.start()

    def _run(self) -> None:
        while True:
            delivery = self._queue.get()
            try:
                self._deliver(delivery)
            finally:
                with self._cond:
                    self._pending -= 1
                    self._cond.notify_all()

    def _deliver(self, delivery: WebhookDelivery) -> None:
        for attempt in range(1, self._max_attempts + 1):
            delivery.attempts = attempt
            try:
                status = self._post(delivery.url, delivery.payload)
                if 200 <= status < 300:
                    delivery.status = DeliveryStatus.DELIVERED
                    delivery.last_error = None
                    return
                delivery.last_error = f"HTTP {status}"
            except Exception as exc:  # network failure, bad URL, ...
                delivery.last_error = str(exc)
            if attempt < self._max_attempts:
                backoff = self._backoffs[min(attempt - 1, len(self._backoffs) - 1)]
                self._sleep(backoff)
        delivery.status = DeliveryStatus.FAILED
        logger.warning("webhook delivery to %s failed: %s", delivery.url, delivery.last_error)

    def flush(self, timeout: float = 10.0) -> bool:
        """Wait until the queue drains; returns False on timeout."""
        with self._cond:
            return self._cond.wait_for(lambda: self._pending == 0, timeout=timeout)

    @property
    def records(self) -> list[WebhookDelivery]:
        with self._cond:
            return list(self._records)
