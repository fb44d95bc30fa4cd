"""
zn-falconer - estatísticas de distâncias quadráticas em Z_n^d
"""

__version__ = "1.0.0"
__author__ = "Seu Nome"
__license__ = "MIT"
