from .config import config, check_config, load_env
from .logging import setup_events_logger, log_event

__all__ = [
    "config",
    "check_config",
    "load_env",
    "setup_events_logger",
    "log_event",
]
