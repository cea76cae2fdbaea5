"""Formatting utilities for exlen."""
