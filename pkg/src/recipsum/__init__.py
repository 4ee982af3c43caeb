"""
Exact evaluation and asymptotic formulas for Σ_{2<=n<=x} 1/π(n)
"""

__version__ = "0.1.0"
