"""Command-line front end and the structure definition format."""
