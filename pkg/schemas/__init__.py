"""Domain schemas package."""
