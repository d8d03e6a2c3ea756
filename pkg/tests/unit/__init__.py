"""unit tests package."""
