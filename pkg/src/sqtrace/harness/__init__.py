"""Instance generation, property suites, conjecture search and the CLI."""
