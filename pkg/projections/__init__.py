"""Projections package."""
