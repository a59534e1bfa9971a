"""Altruism network modification for binary networked public goods games."""

__version__ = "0.1.0"
