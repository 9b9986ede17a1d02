import logging
import os
from dataclasses import asdict, dataclass, replace

from opentelemetry import trace

from gassmann.errors import BadParameter

_TRACING_READY = False


@dataclass(frozen=True)
class Settings:
    jobs: int = 1
    seed: int = 0
    full_scan_limit: int = 1_000_000
    budget_seconds: float = 3600.0
    log_level: str = "WARNING"
    progress: bool = False
    trace: str = "off"

    def override(self, **changes):
        """Return a copy with every non-None keyword applied (CLI flags win over the environment)."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _env_int(name, default):
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise BadParameter(f"{name} must be an integer, got {raw!r}") from None


def get_settings():
    """Build Settings from GASSMANN_* environment variables."""
    budget = os.getenv("GASSMANN_BUDGET_SECONDS", "3600")
    try:
        budget_seconds = float(budget)
    except ValueError:
        raise BadParameter(f"GASSMANN_BUDGET_SECONDS must be a number, got {budget!r}") from None

    return Settings(
        jobs=max(1, _env_int("GASSMANN_JOBS", 1)),
        seed=_env_int("GASSMANN_SEED", 0),
        full_scan_limit=_env_int("GASSMANN_FULL_SCAN_LIMIT", 1_000_000),
        budget_seconds=budget_seconds,
        log_level=os.getenv("GASSMANN_LOG_LEVEL", "WARNING").upper(),
        progress=os.getenv("GASSMANN_PROGRESS", "0") not in ("", "0", "false", "off"),
        trace=os.getenv("GASSMANN_TRACE", "off").lower(),
    )


def export_settings(settings):
    """Write settings back to the environment so later reads and worker processes see them."""
    for name, value in asdict(settings).items():
        os.environ[f"GASSMANN_{name.upper()}"] = str(int(value) if isinstance(value, bool) else value)


def configure_logging(level="WARNING"):
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def configure_tracing(mode):
    """Install the SDK tracer provider once; "console" exports finished spans to stderr."""
    global _TRACING_READY
    if _TRACING_READY or mode in ("", "off", None):
        return
    from opentelemetry.sdk.trace import TracerProvider
    from opentelemetry.sdk.trace.export import ConsoleSpanExporter, SimpleSpanProcessor

    provider = TracerProvider()
    if mode == "console":
        provider.add_span_processor(SimpleSpanProcessor(ConsoleSpanExporter()))
    trace.set_tracer_provider(provider)
    _TRACING_READY = True


def get_tracer():
    return trace.get_tracer("gassmann")
