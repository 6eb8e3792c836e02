"""Spanning-tree bijections on directed line graphs, a de Bruijn sequence
codec built from them, and critical groups of the Kautz and de Bruijn
families."""

__version__ = "0.1.0"
