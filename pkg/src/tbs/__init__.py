"""Zero-shot coordination toolkit.

Builds diverse partner populations through self-play with randomly shaped
rewards, groups them into strategy clusters by cross-play similarity with
self-tuning spectral clustering, trains per-cluster best-response policies
plus theory-of-mind concept predictors, and selects the best response online
against unseen partners. Includes an evaluation harness, figure rendering,
and a staged pipeline CLI.
"""

__version__ = "0.1.0"
