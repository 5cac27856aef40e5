"""Symbolic Gray-category engine: pseudoadjunctions and pseudoextensions."""

from importlib import resources

__version__ = "0.1.0"


def bundled(name="psadj.gray") -> str:
    """Text of a presentation shipped with the package."""
    return resources.files(__package__).joinpath("data", name).read_text()
