"""Scrabble self-play lab: game refinement, complexity and learning coefficient experiments."""

__version__ = "0.1.0"
