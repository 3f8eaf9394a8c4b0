"""Tangle-tree machinery: separation systems, tangles, tree-decompositions,
refinement pipelines and abstract separation universes."""

__version__ = "0.1.0"
