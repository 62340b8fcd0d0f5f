"""Packaged YAML settings and the helpers that read them."""

from .manager import MAX_MN_ENV, ConfigManager, load_flag_file

__all__ = [
    "ConfigManager",
    "MAX_MN_ENV",
    "load_flag_file",
]
