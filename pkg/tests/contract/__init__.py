"""contract tests package."""
