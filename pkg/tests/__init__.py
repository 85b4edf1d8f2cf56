"""Tests for scrabblelab."""
