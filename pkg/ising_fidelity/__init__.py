"""
ising_fidelity

横场 Ising 链基态保真度、保真度磁化率与淬火动力学的数值库。
"""

__version__ = "0.1.0"
