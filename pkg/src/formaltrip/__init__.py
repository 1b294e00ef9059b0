"""formaltrip: grammar-synthesized formal-syntax datasets, LLM round-trip
translation with context isolation, and built-in equivalence verification."""

__version__ = "0.1.0"
