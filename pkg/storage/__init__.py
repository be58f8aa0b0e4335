"""Storage backends package."""
