"""Dominator strategy for the domination game."""
