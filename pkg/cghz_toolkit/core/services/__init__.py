from __future__ import annotations

"""High-level orchestration services (protocol runs, sweeps, verification)."""

from .ecp_service import EcpService  # noqa: F401

__all__: list[str] = [
    "EcpService",
]
