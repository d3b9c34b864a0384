"""Bundled example tracks."""
from __future__ import annotations

from importlib import resources

from ..errors import BadInput
from ..formats import parse_track
from ..track_model import TieNeighbourhood, build_tie_neighbourhood

FIXTURE_NAMES = ("t11", "t11d", "s04", "s12")


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise BadInput(f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")
    return (resources.files(__package__) / f"{name}.track").read_text()


def load_fixture(name: str) -> TieNeighbourhood:
    nb = build_tie_neighbourhood(parse_track(fixture_text(name)))
    nb.name = name
    return nb
