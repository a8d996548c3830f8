"""Chiral polytope mixing toolkit."""
