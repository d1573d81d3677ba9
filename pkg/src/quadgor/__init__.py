"""Exact computations with quadratic Gorenstein rings: inverse systems,
Pfaffian and deviation-two ideals, linkage, Betti tables and Koszul tests."""

__version__ = "0.1.0"
