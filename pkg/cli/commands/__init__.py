"""Subcommands: box, protocol, verify."""
