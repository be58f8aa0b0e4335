"""CLI package for univrcf.

Exposes the Typer entrypoint in `cli.main`.
"""
