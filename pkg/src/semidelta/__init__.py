"""Exact computations with additive p-derivations, homotopy cardinalities,
groupoid spans and the wreath (valuation-descent) bootstrap."""

__version__ = "0.1.0"
