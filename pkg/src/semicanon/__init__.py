"""Semi-invariants of regular dimension vectors over canonical algebras."""

__version__ = "0.1.0"
