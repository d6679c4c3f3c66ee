"""Bundled toy dataset catalog used by tests, demos and quickstarts."""

from importlib import resources
from pathlib import Path

__all__ = ["toy_catalog_path", "toy_data_dir"]


def toy_data_dir() -> Path:
    """Directory holding the toy catalog and its BED files."""
    return Path(resources.files(__package__))


def toy_catalog_path() -> Path:
    """Path of the bundled toy catalog TSV."""
    return toy_data_dir() / "catalog.tsv"
