"""eqss: exact-arithmetic Lie algebra cohomology, spectral sequences of
finite filtered complexes, and arithmetic obstruction checkers for compact
group actions."""

__version__ = "0.1.0"
