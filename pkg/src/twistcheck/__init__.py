"""GF(2) Floer-theoretic invariants of curves on combinatorial surfaces,
plus numerical certification of the local model geometry of Dehn twists."""

__version__ = "0.1.0"
