"""Core simulation subpackage.

Sub-modules:
    models       – shared dataclasses / value objects.
    errors       – exception hierarchy mapped to exit codes by the CLI.
    fock         – sparse photon states.
    optics       – HWP / PBS / flip elements and the substitution engine.
    measurement  – post-selection, |±⟩ detection, corrections.
    protocol     – C-GHZ builders and the concentration protocol.
    analysis     – oracle, sweeps and the verification suite.
    preview      – text listings of states.
    services     – façade used by front-ends.
"""
