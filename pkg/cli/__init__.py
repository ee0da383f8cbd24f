"""Command-line surface for racbox."""
