"""
Exact core entropy of quadratic kneading sequences
"""

__version__ = "1.0.0"
