"""Schemas for state files and CLI run configurations."""
