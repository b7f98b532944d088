"""Constructive Dominator strategy: phase controller, opening and endgame rules."""
from .core import CheckpointError, Directive, Dominator, Plan, StrategyError

__all__ = ["CheckpointError", "Directive", "Dominator", "Plan", "StrategyError"]
