"""Access to the bundled example bound quivers."""

from __future__ import annotations

from importlib import resources

from . import bqformat
from .quiver import BoundQuiver

NAMES = (
    "kronecker_chain_comm",
    "kronecker_chain_mono",
    "gentle_double_zero",
    "six_point_pair",
    "a4_overlap",
    "seven_vertex_fan",
    "tree_two_relations",
    "band_intertwined",
    "nakayama_five",
    "loop",
)


def source(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown corpus entry {name!r}")
    return (
        resources.files("seqwalk").joinpath("data", f"{name}.bq").read_text("utf-8")
    )


def load(name: str) -> BoundQuiver:
    return bqformat.parse(source(name))


def all_quivers() -> dict[str, BoundQuiver]:
    return {name: load(name) for name in NAMES}
