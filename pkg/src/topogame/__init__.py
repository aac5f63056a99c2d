"""Topological game engine: spaces, alternating open-set games, pure
strategies, and checked carrier representations."""

__version__ = "0.1.0"
