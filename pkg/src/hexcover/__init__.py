"""Exact verification toolkit for a double-cover surface classification.

Everything is computed over Q and Q(zeta) with zeta = exp(pi*i/3); no
floating point is used anywhere in the library.
"""

__version__ = "0.1.0"
