"""wonderland: exact-arithmetic toolkit for wonderful compactifications,
Poisson bivector fields from Lagrangian splittings, and compactified
character varieties, all verified over the rationals with zero tolerance."""

__version__ = "0.1.0"
