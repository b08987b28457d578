"""Phylogenetic semigroups on multigraphs: membership, generators and their classification."""

__version__ = "0.1.0"
