"""Łukasiewicz Workbench Tools Package"""
from .errors import LogicError
from .memory_bank import MemoryBank
from .observability import ObservabilityLayer
from .config import Settings

__all__ = [
    "LogicError",
    "MemoryBank",
    "ObservabilityLayer",
    "Settings",
]
