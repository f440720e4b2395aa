"""Finite categories, coloured operads and bounded symmetric monoidal
categories, with decision procedures for regular patterns and Feynman
categories."""

__version__ = "0.1.0"
