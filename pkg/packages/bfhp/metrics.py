"""
Prometheus metrics for the BFHP toolkit.

Counts key generation, encryption, decryption outcomes and solver calls.
Everything is a no-op when prometheus_client is missing or metrics are
disabled in the settings.
"""

from typing import Any

from .config import get_settings

try:
    from prometheus_client import Counter, Histogram

    PROMETHEUS_AVAILABLE = True
except ImportError:
    PROMETHEUS_AVAILABLE = False


class MetricsCollector:
    """
    Prometheus metrics collector for scheme and solver operations.

    Tracks:
    - Key generation counts per role
    - Encryption counts and decryption outcomes (ok, abort, malformed)
    - Box solver calls per outcome
    - Operation durations
    """

    def __init__(self, namespace: str = "bfhp", enabled: bool | None = None) -> None:
        self._namespace = namespace
        self._metrics: dict[str, Any] = {}
        self._initialized = False
        if enabled is None:
            enabled = get_settings().metrics_enabled
        self.enabled = enabled and PROMETHEUS_AVAILABLE

        if self.enabled:
            self._initialize_metrics()

    def _initialize_metrics(self) -> None:
        if self._initialized:
            return

        ns = self._namespace

        self._metrics["keygen_total"] = Counter(
            f"{ns}_keygen_total",
            "Total key pairs generated",
            ["role"],
        )

        self._metrics["encrypt_total"] = Counter(
            f"{ns}_encrypt_total",
            "Total messages encrypted",
        )

        self._metrics["decrypt_total"] = Counter(
            f"{ns}_decrypt_total",
            "Total decryptions by outcome",
            ["outcome"],
        )

        self._metrics["solver_calls_total"] = Counter(
            f"{ns}_solver_calls_total",
            "Total box solver calls by outcome",
            ["outcome"],
        )

        self._metrics["operation_duration_seconds"] = Histogram(
            f"{ns}_operation_duration_seconds",
            "Scheme operation duration in seconds",
            ["op"],
            buckets=(1e-5, 1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0),
        )

        self._initialized = True

    def record_keygen(self, role: str, duration_seconds: float) -> None:
        if not self.enabled:
            return
        self._metrics["keygen_total"].labels(role=role).inc()
        self._metrics["operation_duration_seconds"].labels(op=f"keygen_{role}").observe(
            duration_seconds
        )

    def record_encrypt(self, duration_seconds: float) -> None:
        if not self.enabled:
            return
        self._metrics["encrypt_total"].inc()
        self._metrics["operation_duration_seconds"].labels(op="encrypt").observe(
            duration_seconds
        )

    def record_decrypt(self, outcome: str, duration_seconds: float) -> None:
        if not self.enabled:
            return
        self._metrics["decrypt_total"].labels(outcome=outcome).inc()
        self._metrics["operation_duration_seconds"].labels(op="decrypt").observe(
            duration_seconds
        )

    def record_solver_call(self, outcome: str) -> None:
        if not self.enabled:
            return
        self._metrics["solver_calls_total"].labels(outcome=outcome).inc()


_default_collector: MetricsCollector | None = None


def get_metrics_collector() -> MetricsCollector:
    """Get the default metrics collector."""
    global _default_collector
    if _default_collector is None:
        _default_collector = MetricsCollector()
    return _default_collector
