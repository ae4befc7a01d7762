"""Infinite lists of distinct atoms with finite perturbations.

A list value is a fixed base enumeration with finitely many positions
replaced.  The full base enumerates every Down atom diagonally across
sorts; the half base enumerates the even-index Down atoms.  Every list is
the image of its base under a finite permutation, reconstructible from the
perturbation, which keeps equality and the permutation action decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt

from .atoms import Atom, Zone, down
from .errors import UnrepresentableError
from .perms import FinPerm, GenPerm, as_gen
from .regions import Family, SupportDescriptor, descriptor, fresh_atom


class ListMode(str, Enum):
    FULL = "full"
    HALF = "half"

    @property
    def family(self) -> Family:
        return Family.COMB if self == ListMode.FULL else Family.HALF


def _unpair(pos: int) -> tuple[int, int]:
    d = (isqrt(8 * pos + 1) - 1) // 2
    offset = pos - d * (d + 1) // 2
    return offset, d - offset


def _pair(sort: int, step: int) -> int:
    d = sort + step
    return d * (d + 1) // 2 + sort


def base_atom(mode: ListMode, pos: int) -> Atom:
    sort, step = _unpair(pos)
    return down(sort, step if mode == ListMode.FULL else 2 * step)


def base_position(mode: ListMode, a: Atom) -> int | None:
    """The position of an atom in the base enumeration, if it has one."""
    if a.zone != Zone.DOWN:
        return None
    if mode == ListMode.FULL:
        return _pair(a.sort, a.index)
    if a.index % 2 != 0:
        return None
    return _pair(a.sort, a.index // 2)


@dataclass(frozen=True)
class AtomList:
    mode: ListMode
    pert: tuple[tuple[int, Atom], ...] = ()

    def __post_init__(self):
        entries = [a for _, a in self.pert]
        positions = [p for p, _ in self.pert]
        if len(set(positions)) != len(positions):
            raise ValueError("duplicate perturbed position")
        if list(positions) != sorted(positions):
            raise ValueError("perturbation must be sorted by position")
        if len(set(entries)) != len(entries):
            raise ValueError("list entries must be distinct")
        perturbed = set(positions)
        for p, a in self.pert:
            base = base_atom(self.mode, p)
            if a == base:
                raise ValueError("trivial perturbation entry")
            if a.sort != base.sort:
                raise ValueError(f"entry {a} changes the sort of position {p}")
            home = base_position(self.mode, a)
            if home is not None and home not in perturbed:
                raise ValueError(f"entry {a} collides with its own base position")

    def entry(self, pos: int) -> Atom:
        for p, a in self.pert:
            if p == pos:
                return a
        return base_atom(self.mode, pos)

    def perturbed_positions(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.pert)

    def support(self) -> SupportDescriptor:
        """The set of atoms occurring in the list."""
        swapped_out = {base_atom(self.mode, p) for p, _ in self.pert}
        entries = {a for _, a in self.pert}
        verdicts = [(a, False) for a in swapped_out - entries]
        verdicts += [(a, True) for a in entries]
        return descriptor(self.mode.family, verdicts)

    def act(self, p: FinPerm | GenPerm) -> "AtomList":
        g = as_gen(p)
        if g.shift != 0:
            raise UnrepresentableError(
                "shift moves infinitely many list entries; the image is not representable"
            )
        positions = set(self.perturbed_positions())
        for a in g.fin.moved():
            pos = base_position(self.mode, a)
            if pos is not None:
                positions.add(pos)
        pert = []
        for pos in sorted(positions):
            image = g.fin(self.entry(pos))
            if image != base_atom(self.mode, pos):
                pert.append((pos, image))
        return AtomList(self.mode, tuple(pert))

    def __str__(self) -> str:
        subs = ", ".join(
            f"{base_atom(self.mode, p)}->{a}" for p, a in self.pert
        )
        return f"list {self.mode.value}" + (f" / {subs}" if subs else "")

    __repr__ = __str__


FULL_BASE = AtomList(ListMode.FULL)
HALF_BASE = AtomList(ListMode.HALF)


def base_list(mode: ListMode) -> AtomList:
    return FULL_BASE if mode == ListMode.FULL else HALF_BASE


def fresh_list(mode: ListMode, avoid) -> AtomList:
    """A list whose atoms avoid the given finite atom set.

    Each offending base atom is swapped out for the least unused Up atom of
    its sort.
    """
    avoid = set(avoid)
    pert = []
    used = set(avoid)
    for a in sorted(avoid):
        pos = base_position(mode, a)
        if pos is None:
            continue
        spare = fresh_atom(a.sort, Zone.UP, frozenset(used))
        used.add(spare)
        pert.append((pos, spare))
    pert.sort(key=lambda pa: pa[0])
    return AtomList(mode, tuple(pert))


def extend_to_finperm(partial: dict[Atom, Atom]) -> FinPerm:
    """Extend a sort-preserving partial injection to a finite permutation.

    Chains are closed by sending each unmatched range end back to the start
    of its chain, so no atoms beyond the given ones are moved.
    """
    mapping = {a: b for a, b in partial.items() if a != b}
    values = set(mapping.values())
    if len(values) != len(mapping):
        raise ValueError("partial map is not injective")
    starts = [a for a in mapping if a not in values]
    for start in starts:
        end = start
        while end in mapping:
            end = mapping[end]
        if end != start:
            mapping[end] = start
    return FinPerm.from_mapping(mapping)


def connecting_perm(src: AtomList, dst: AtomList) -> FinPerm:
    """A finite permutation carrying src to dst positionwise."""
    if src.mode != dst.mode:
        raise UnrepresentableError("lists over different base enumerations")
    partial: dict[Atom, Atom] = {}
    for pos in sorted(src.perturbed_positions() | dst.perturbed_positions()):
        a, b = src.entry(pos), dst.entry(pos)
        if a != b:
            partial[a] = b
    return extend_to_finperm(partial)
