"""Exact and approximate treewidth via subset-treewidth compression."""
