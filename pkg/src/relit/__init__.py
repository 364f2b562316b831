"""Relative homological dimensions and Igusa-Todorov functions for quiver algebras over F_p."""

from __future__ import annotations

import json
from importlib import resources

from .algebra import Algebra, algebra_from_dict

__version__ = "0.1.0"

FIXTURES = ("L1", "L2", "L3", "L4")


def load_fixture(name: str) -> Algebra:
    """One of the bundled algebras L1..L4."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    text = resources.files(__package__).joinpath("fixtures", f"{name}.json").read_text(encoding="utf-8")
    return algebra_from_dict(json.loads(text))
