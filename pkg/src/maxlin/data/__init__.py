"""Bundled example inputs (fig1.poset, fig2.dag, fig3.dag)."""

from importlib import resources


def read(name: str) -> str:
    """Return the text of a bundled input file."""
    return resources.files(__package__).joinpath(name).read_text(encoding="utf-8")
