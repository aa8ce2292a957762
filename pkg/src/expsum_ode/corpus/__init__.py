"""Bundled problem and solution documents."""

from importlib.resources import files

NAMES = ("negative_frequency", "rational_roots", "rational_roots_half", "gaussian_roots", "triple_root", "no_solution")


def path(name: str):
    """Filesystem path of a bundled document, e.g. ``path("rational_roots")``."""
    return files(__name__) / f"{name}.json"
