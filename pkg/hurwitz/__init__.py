"""
Hurwitz Realizability Toolkit Package
"""

__version__ = "1.0.0"
__author__ = "Hurwitz Toolkit Team"
