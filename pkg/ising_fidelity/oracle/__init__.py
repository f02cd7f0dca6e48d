"""
精确对角化参照

N ≤ 12 的稠密矩阵计算，用来校验自由费米子结果。
"""
from .dense import (
    DenseState,
    dense_ground_state,
    dense_hamiltonian,
    oracle_fidelity,
    oracle_parity_gap,
    oracle_quench,
    parity_diagonal,
)

__all__ = [
    "DenseState",
    "dense_ground_state",
    "dense_hamiltonian",
    "oracle_fidelity",
    "oracle_parity_gap",
    "oracle_quench",
    "parity_diagonal",
]
