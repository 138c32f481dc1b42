"""Streaming target-speech extraction runtime and binaural scene simulator."""

__version__ = "0.1.0"
