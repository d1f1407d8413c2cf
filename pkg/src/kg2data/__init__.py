"""kg2data: knowledge-graph-augmented ReAct agent over virtual meteorological APIs,
with an offline-deterministic evaluation harness."""

__version__ = "0.1.0"
