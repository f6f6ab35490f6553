"""Geometric measure of entanglement for pure multiqubit states."""

from ._core import (
    CandidateRecord,
    GmResult,
    crosscheck,
    g_closed_form,
    g_mixed_oracle,
    g_numeric,
    gm_dicke,
    gm_pure_oracle,
    gm_rank2,
    gm_sym3q,
    gm_symmetric_oracle,
    normalize_state_json,
    scan_global_min,
    verify_w_uniqueness,
)

__all__ = [
    "CandidateRecord",
    "GmResult",
    "crosscheck",
    "g_closed_form",
    "g_mixed_oracle",
    "g_numeric",
    "gm_dicke",
    "gm_pure_oracle",
    "gm_rank2",
    "gm_sym3q",
    "gm_symmetric_oracle",
    "normalize_state_json",
    "scan_global_min",
    "verify_w_uniqueness",
]
