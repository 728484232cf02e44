"""Exact computer algebra for graded isotopic and super-Jordan pairs.

Structure-constant pairs over the rationals, exhaustive axiom checking,
the matrix series and magnetic/symmetric-square constructions, the
vector-field/function pair, polarized triple systems and superalgebras,
and split / highest-weight / induced / graph representations.
"""

__version__ = "0.1.0"
