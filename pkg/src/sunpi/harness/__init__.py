"""Verification harness around the table registry and the ``verify`` command."""

from .pipeline import VerificationReport, verify_constants, verify_entry, verify_headline
from .registry import TableEntry, load_registry
from .runner import VerifyConfig, run_all

__all__ = [
    "TableEntry",
    "VerificationReport",
    "VerifyConfig",
    "load_registry",
    "run_all",
    "verify_constants",
    "verify_entry",
    "verify_headline",
]
