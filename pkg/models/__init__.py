"""Łukasiewicz Workbench - Pydantic result records"""

from .schemas import (
    # Enums
    VerdictKind,
    # Decision results
    Verdict,
    OptimumResult,
    # Proof results
    CheckResult,
    RegistryEntry,
    RegistryReport,
    FixtureOutcome,
    # Consistency lab records
    ConsistencyVerdict,
    TraceStep,
    Fragment,
    FragmentExtension,
    AuditReport,
    ProbeEntry,
    ProbeReport,
    ExtensionLemmaReport,
    HalfSeedReport,
)

__all__ = [
    "VerdictKind", "Verdict", "OptimumResult",
    "CheckResult", "RegistryEntry", "RegistryReport", "FixtureOutcome",
    "ConsistencyVerdict", "TraceStep", "Fragment", "FragmentExtension",
    "AuditReport", "ProbeEntry", "ProbeReport", "ExtensionLemmaReport", "HalfSeedReport",
]
