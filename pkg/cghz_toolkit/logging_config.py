from __future__ import annotations

"""Central logging configuration for cghz_toolkit.

Import and call :func:`setup_logging` at application start-up. Library code
never configures logging itself.
"""

import logging
import logging.config
import os

__all__ = ["setup_logging", "LOG_DIR_ENV"]

LOG_DIR_ENV = "CGHZ_LOG_DIR"

_CONSOLE_LEVELS = {0: "WARNING", 1: "INFO"}


def setup_logging(verbosity: int = 0) -> None:
    """Configure logging using a dictionary configuration.

    *verbosity* 0, 1 and ≥ 2 map the stderr console to WARNING, INFO and
    DEBUG. The rotating log file always records DEBUG.
    """
    log_dir = os.environ.get(LOG_DIR_ENV, "logs")
    os.makedirs(log_dir, exist_ok=True)
    log_file = os.path.join(log_dir, "cghz.log")

    LOGGING_CONFIG = {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'default': {
                'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            },
        },
        'handlers': {
            'console': {
                'class': 'logging.StreamHandler',
                'formatter': 'default',
                'stream': 'ext://sys.stderr',
                'level': _CONSOLE_LEVELS.get(verbosity, 'DEBUG'),
            },
            'file': {
                'class': 'logging.handlers.RotatingFileHandler',
                'formatter': 'default',
                'filename': log_file,
                'maxBytes': 1024 * 1024 * 5,  # 5 MB
                'backupCount': 2,
                'level': 'DEBUG',
                'encoding': 'utf-8',
            },
        },
        'loggers': {
            # one line per optical element
            'cghz_toolkit.core.optics': {
                'level': 'DEBUG',
                'handlers': ['file'],
                'propagate': False,
            },
        },
        'root': {
            'level': 'DEBUG',
            'handlers': ['console', 'file'],
        },
    }

    logging.config.dictConfig(LOGGING_CONFIG)
    logging.getLogger(__name__).debug("===== Logging initialised (dictConfig) =====")
