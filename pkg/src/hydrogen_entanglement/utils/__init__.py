"""Shared utilities: error types and quadrature helpers."""
