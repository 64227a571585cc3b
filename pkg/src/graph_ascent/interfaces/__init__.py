"""
Абстрактные интерфейсы для компонентов локальной оптимизации на графах.
"""

from .walker import (
    KernelRow,
    RecordPolicy,
    WalkKernelInterface,
    WalkTrace,
)

__all__ = [
    'KernelRow',
    'RecordPolicy',
    'WalkKernelInterface',
    'WalkTrace',
]
