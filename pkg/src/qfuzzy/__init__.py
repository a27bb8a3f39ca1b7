"""Threshold-restricted Q-fuzzy subgroups over finite groups, with exact
rational grades and mechanical claim auditing."""

__version__ = "0.1.0"
