from __future__ import annotations

"""Configuration loading and access helpers.

This module centralises the simulator's tunables (size caps, tolerances,
sweep and verification defaults). It loads the YAML file packaged with
*cghz_toolkit* and optionally merges it with a user override located in
``~/.cghz_toolkit/default_simulation.yml``.

Missing PyYAML falls back to the embedded defaults so the simulator always
runs.
"""

import copy
import importlib.resources as pkg_resources
import logging
import os
from pathlib import Path
from typing import Any, Dict

from cghz_toolkit.core.errors import ConfigError

logger = logging.getLogger(__name__)

__all__ = ["ConfigManager", "MAX_MN_ENV", "load_flag_file"]

MAX_MN_ENV = "CGHZ_MAX_MN"


class _Singleton(type):
    _instance: "ConfigManager" | None = None

    def __call__(cls, *args, **kwargs):  # type: ignore[no-self-use]
        if cls._instance is None:
            cls._instance = super().__call__(*args, **kwargs)
        return cls._instance


class ConfigManager(metaclass=_Singleton):
    """Lazy-loads and exposes configuration sections as dictionaries."""

    _FILENAME = "default_simulation.yml"
    _SECTIONS = ("limits", "tolerances", "sweep", "verify")

    def __init__(self) -> None:
        self._data: Dict[str, Dict[str, Any]] = {}
        self._ensure_loaded()

    @classmethod
    def reset(cls) -> None:
        """Forget the loaded instance (next call re-reads files and environment)."""
        cls._instance = None

    # ------------------------------------------------------------------
    # Public helpers
    # ------------------------------------------------------------------
    def get_limits(self) -> Dict[str, Any]:
        return self._data.get("limits", {})

    def get_tolerances(self) -> Dict[str, Any]:
        return self._data.get("tolerances", {})

    def get_sweep_defaults(self) -> Dict[str, Any]:
        return self._data.get("sweep", {})

    def get_verify_defaults(self) -> Dict[str, Any]:
        return self._data.get("verify", {})

    def max_mn(self) -> int:
        """Desk-scale cap on m·N; ``$CGHZ_MAX_MN`` wins over the files."""
        raw = os.environ.get(MAX_MN_ENV)
        if raw:
            try:
                value = int(raw)
            except ValueError:
                raise ConfigError(f"{MAX_MN_ENV} must be an integer, got {raw!r}") from None
            if value < 4:
                raise ConfigError(f"{MAX_MN_ENV} must be at least 4, got {value}")
            return value
        return int(self.get_limits()["max_mn"])

    def limit(self, name: str) -> int:
        return int(self.get_limits()[name])

    def tolerance(self, name: str) -> float:
        return float(self.get_tolerances()[name])

    # ------------------------------------------------------------------
    # Internal loading logic
    # ------------------------------------------------------------------
    def _ensure_loaded(self) -> None:
        if self._data:
            return  # already loaded

        defaults = self._builtin_defaults()
        try:
            import yaml  # type: ignore
        except ModuleNotFoundError:
            logger.warning("PyYAML not installed – falling back to built-in defaults")
            self._data = defaults
            return

        merged: Dict[str, Dict[str, Any]] = {}

        # 1. packaged defaults
        try:
            text = pkg_resources.files(__package__).joinpath(self._FILENAME).read_text(encoding="utf-8")
            self._merge(merged, yaml.safe_load(text) or {})
        except (FileNotFoundError, OSError):
            logger.debug("No packaged %s", self._FILENAME)

        # 2. user overrides (~/.cghz_toolkit)
        user_path = Path.home() / ".cghz_toolkit" / self._FILENAME
        if user_path.exists():
            try:
                self._merge(merged, yaml.safe_load(user_path.read_text(encoding="utf-8")) or {})
                logger.info("Loaded user overrides from %s", user_path)
            except Exception as exc:
                logger.error("Could not parse user config %s: %s", user_path, exc)

        # Ensure fallbacks for missing sections and keys
        for section, values in defaults.items():
            for key, value in values.items():
                merged.setdefault(section, {}).setdefault(key, value)
        self._data = merged

    @classmethod
    def _merge(cls, target: Dict[str, Dict[str, Any]], loaded: Dict[str, Any]) -> None:
        for section, values in loaded.items():
            if section not in cls._SECTIONS or not isinstance(values, dict):
                logger.warning("Ignoring unknown config section %r", section)
                continue
            target.setdefault(section, {}).update(values)

    @staticmethod
    def _builtin_defaults() -> Dict[str, Dict[str, Any]]:
        """Return hard-coded defaults to guarantee behaviour parity."""
        return copy.deepcopy(
            {
                "limits": {"max_mn": 9, "oracle_max_mn": 6, "trace_max_mn": 6, "quick_max_mn": 6},
                "tolerances": {"probability": 1e-9, "fidelity": 1e-9, "oracle": 1e-10, "unitarity": 1e-10},
                "sweep": {"m_values": [2, 3], "n_values": [2, 3], "alpha_count": 25, "format": "csv", "workers": 1},
                "verify": {
                    "alphas": [0.1, 0.3, 0.7071067811865476, 0.6, 0.9],
                    "random_states": 100,
                    "seed": 20240917,
                    "optimal_scan_count": 99,
                },
            }
        )


# ---------------------------------------------------------------------------
# Flag files (`--config`)
# ---------------------------------------------------------------------------

FLAG_KEYS = frozenset(
    {
        "m", "n", "alpha", "alpha_re", "alpha_im", "stage", "out", "format",
        "quick", "m_values", "n_values", "alphas", "workers", "no_timing",
    }
)


def load_flag_file(path: str | Path) -> Dict[str, Any]:
    """Read a flat ``key: value`` YAML file whose keys mirror the CLI flags.

    Raises
    ------
    ConfigError
        If the file cannot be read or parsed, is not a flat mapping, or holds
        unknown keys.
    """
    try:
        import yaml  # type: ignore
    except ModuleNotFoundError:
        raise ConfigError("PyYAML is required to read --config files") from None

    path = Path(path)
    try:
        loaded = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"Cannot read config file {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"Cannot parse config file {path}: {exc}") from exc

    if loaded is None:
        return {}
    if not isinstance(loaded, dict):
        raise ConfigError(f"Config file {path} must hold a key/value mapping")
    normalised = {str(k).replace("-", "_"): v for k, v in loaded.items()}
    unknown = sorted(set(normalised) - FLAG_KEYS)
    if unknown:
        raise ConfigError(f"Unknown keys in {path}: {', '.join(unknown)}")
    logger.debug("flag file %s: %s", path, normalised)
    return normalised
