"""Łukasiewicz Workbench Engines Package"""
from .decision_engine import DecisionEngine
from .proof_checker import ProofChecker
from .consistency_lab import ConsistencyLab
from .workbench import LogicWorkbench

__all__ = [
    "DecisionEngine",
    "ProofChecker",
    "ConsistencyLab",
    "LogicWorkbench",
]
