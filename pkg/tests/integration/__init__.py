"""integration tests package."""
