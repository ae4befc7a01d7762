"""Sorted atoms in two zones.

Every atom is a triple (sort, zone, index).  The Down zone of each sort is
the "comb" of atoms that unknowns may depend on by default; the Up zone is
a disjoint reservoir of spare atoms of the same sort.  Atoms are totally
ordered by (sort, zone, index) with Down < Up; canonical forms elsewhere in
the library rely on this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum


class Zone(IntEnum):
    DOWN = 0
    UP = 1


@dataclass(frozen=True, order=True)
class Atom:
    sort: int
    zone: Zone
    index: int

    def __post_init__(self):
        if self.sort < 0 or self.index < 0:
            raise ValueError("atom sort and index must be non-negative")

    def __str__(self) -> str:
        tag = "d" if self.zone == Zone.DOWN else "u"
        return f"{tag}{self.sort}.{self.index}"

    __repr__ = __str__


def down(sort: int, index: int) -> Atom:
    return Atom(sort, Zone.DOWN, index)


def up(sort: int, index: int) -> Atom:
    return Atom(sort, Zone.UP, index)
