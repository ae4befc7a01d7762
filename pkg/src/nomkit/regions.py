"""Finitely represented atom sets: permission sets and support descriptors.

A SupportDescriptor denotes a set of atoms as a base family perturbed by
finitely many removals (minus) and additions (plus).  The four families are

    empty     {}                    (so the descriptor is a finite set)
    comb      all Down atoms
    halfcomb  even-index Down atoms
    oddcomb   odd-index Down atoms

and they are closed under union, intersection, and difference, so every
support computed by the library stays representable.  Descriptors are kept
canonical (minus inside the family, plus outside it), which makes structural
equality coincide with equality of the denoted sets.

A PermissionSet is the comb-family special case (A-down minus finitely many
Down atoms, plus finitely many Up atoms).  The strict family consists of the
images of the full comb under finite permutations; the extended family drops
the per-sort balance requirement.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .atoms import Atom, Zone, down, up
from .errors import UnrepresentableError
from .perms import FinPerm, GenPerm, as_gen, apply, invert


class Family(str, Enum):
    EMPTY = "empty"
    COMB = "comb"
    HALF = "halfcomb"
    ODD = "oddcomb"


def generic_member(family: Family, a: Atom) -> bool:
    if family == Family.EMPTY:
        return False
    if a.zone != Zone.DOWN:
        return False
    if family == Family.COMB:
        return True
    if family == Family.HALF:
        return a.index % 2 == 0
    return a.index % 2 == 1


@dataclass(frozen=True)
class SupportDescriptor:
    family: Family
    minus: frozenset[Atom] = frozenset()
    plus: frozenset[Atom] = frozenset()

    def __post_init__(self):
        for a in self.minus:
            if not generic_member(self.family, a):
                raise ValueError(f"minus atom {a} lies outside the {self.family.value} base")
        for a in self.plus:
            if generic_member(self.family, a):
                raise ValueError(f"plus atom {a} already lies inside the {self.family.value} base")

    def member(self, a: Atom) -> bool:
        if generic_member(self.family, a):
            return a not in self.minus
        return a in self.plus

    def is_finite(self) -> bool:
        return self.family == Family.EMPTY

    def is_empty(self) -> bool:
        return self.family == Family.EMPTY and not self.plus

    def finite_atoms(self) -> frozenset[Atom]:
        if not self.is_finite():
            raise UnrepresentableError("descriptor denotes an infinite set")
        return self.plus

    def perturbation_atoms(self) -> frozenset[Atom]:
        """The finite part: every atom named explicitly by the descriptor."""
        return self.minus | self.plus

    def __str__(self) -> str:
        if self.family == Family.EMPTY:
            return "{" + ", ".join(str(a) for a in sorted(self.plus)) + "}"
        text = self.family.value
        if self.minus:
            text += " - {" + ", ".join(str(a) for a in sorted(self.minus)) + "}"
        if self.plus:
            text += " + {" + ", ".join(str(a) for a in sorted(self.plus)) + "}"
        return text

    __repr__ = __str__


def descriptor(family: Family, members_in_doubt: Iterable[tuple[Atom, bool]]) -> SupportDescriptor:
    """Canonical descriptor from a family and explicit membership verdicts."""
    minus, plus = set(), set()
    for a, present in members_in_doubt:
        if generic_member(family, a) and not present:
            minus.add(a)
        elif not generic_member(family, a) and present:
            plus.add(a)
    return SupportDescriptor(family, frozenset(minus), frozenset(plus))


def finite_set(atoms: Iterable[Atom] = ()) -> SupportDescriptor:
    return SupportDescriptor(Family.EMPTY, frozenset(), frozenset(atoms))


EMPTY_SET = finite_set()
COMB = SupportDescriptor(Family.COMB)
HALFCOMB = SupportDescriptor(Family.HALF)
ODDCOMB = SupportDescriptor(Family.ODD)

_UNION = {
    (Family.EMPTY, Family.EMPTY): Family.EMPTY,
    (Family.EMPTY, Family.COMB): Family.COMB,
    (Family.EMPTY, Family.HALF): Family.HALF,
    (Family.EMPTY, Family.ODD): Family.ODD,
    (Family.COMB, Family.COMB): Family.COMB,
    (Family.COMB, Family.HALF): Family.COMB,
    (Family.COMB, Family.ODD): Family.COMB,
    (Family.HALF, Family.HALF): Family.HALF,
    (Family.HALF, Family.ODD): Family.COMB,
    (Family.ODD, Family.ODD): Family.ODD,
}

_INTERSECT = {
    (Family.EMPTY, Family.EMPTY): Family.EMPTY,
    (Family.EMPTY, Family.COMB): Family.EMPTY,
    (Family.EMPTY, Family.HALF): Family.EMPTY,
    (Family.EMPTY, Family.ODD): Family.EMPTY,
    (Family.COMB, Family.COMB): Family.COMB,
    (Family.COMB, Family.HALF): Family.HALF,
    (Family.COMB, Family.ODD): Family.ODD,
    (Family.HALF, Family.HALF): Family.HALF,
    (Family.HALF, Family.ODD): Family.EMPTY,
    (Family.ODD, Family.ODD): Family.ODD,
}

_DIFF = {
    (Family.EMPTY, Family.EMPTY): Family.EMPTY,
    (Family.EMPTY, Family.COMB): Family.EMPTY,
    (Family.EMPTY, Family.HALF): Family.EMPTY,
    (Family.EMPTY, Family.ODD): Family.EMPTY,
    (Family.COMB, Family.EMPTY): Family.COMB,
    (Family.COMB, Family.COMB): Family.EMPTY,
    (Family.COMB, Family.HALF): Family.ODD,
    (Family.COMB, Family.ODD): Family.HALF,
    (Family.HALF, Family.EMPTY): Family.HALF,
    (Family.HALF, Family.COMB): Family.EMPTY,
    (Family.HALF, Family.HALF): Family.EMPTY,
    (Family.HALF, Family.ODD): Family.HALF,
    (Family.ODD, Family.EMPTY): Family.ODD,
    (Family.ODD, Family.COMB): Family.EMPTY,
    (Family.ODD, Family.HALF): Family.ODD,
    (Family.ODD, Family.ODD): Family.EMPTY,
}


def _combine(d1: SupportDescriptor, d2: SupportDescriptor, table, op) -> SupportDescriptor:
    key = (d1.family, d2.family)
    family = table.get(key) or table.get((d2.family, d1.family))
    probes = d1.perturbation_atoms() | d2.perturbation_atoms()
    return descriptor(family, ((a, op(d1.member(a), d2.member(a))) for a in probes))


def union(d1: SupportDescriptor, d2: SupportDescriptor) -> SupportDescriptor:
    return _combine(d1, d2, _UNION, lambda x, y: x or y)


def intersect(d1: SupportDescriptor, d2: SupportDescriptor) -> SupportDescriptor:
    return _combine(d1, d2, _INTERSECT, lambda x, y: x and y)


def diff(d1: SupportDescriptor, d2: SupportDescriptor) -> SupportDescriptor:
    key = (d1.family, d2.family)
    probes = d1.perturbation_atoms() | d2.perturbation_atoms()
    return descriptor(_DIFF[key], ((a, d1.member(a) and not d2.member(a)) for a in probes))


def remove(d: SupportDescriptor, atoms: Iterable[Atom]) -> SupportDescriptor:
    return diff(d, finite_set(atoms))


def add(d: SupportDescriptor, atoms: Iterable[Atom]) -> SupportDescriptor:
    return union(d, finite_set(atoms))


def subset_of(d1: SupportDescriptor, d2) -> bool:
    d2 = d2 if isinstance(d2, SupportDescriptor) else d2.descriptor()
    return diff(d1, d2).is_empty()


def _zone_flippers(k: int) -> list[Atom]:
    """Sort-0 atoms whose zone changes under shift^(-k)."""
    if k > 0:
        return [down(0, n) for n in range(k)]
    if k < 0:
        return [up(0, 2 * m) for m in range(1, -k + 1)]
    return []


def act_descriptor(p: FinPerm | GenPerm, d: SupportDescriptor) -> SupportDescriptor:
    """Pointwise image of the denoted set, as a canonical descriptor."""
    g = as_gen(p)
    if g.shift != 0 and d.family in (Family.HALF, Family.ODD):
        raise UnrepresentableError(
            "shift image of a half-comb based set is not representable"
        )
    inv = invert(g)
    cand: set[Atom] = set(g.fin.moved())
    for b in d.perturbation_atoms():
        cand.add(apply(g, b))
    for b in _zone_flippers(g.shift):
        cand.add(g.fin(b))
    return descriptor(d.family, ((a, d.member(apply(inv, a))) for a in cand))


@dataclass(frozen=True)
class PermissionSet:
    """The comb minus finitely many Down atoms, plus finitely many Up atoms."""

    removed: frozenset[Atom] = frozenset()
    added: frozenset[Atom] = frozenset()

    def __post_init__(self):
        for a in self.removed:
            if a.zone != Zone.DOWN:
                raise ValueError("removed atoms must come from the Down zone")
        for a in self.added:
            if a.zone != Zone.UP:
                raise ValueError("added atoms must come from the Up zone")

    def member(self, a: Atom) -> bool:
        if a.zone == Zone.DOWN:
            return a not in self.removed
        return a in self.added

    def is_finite(self) -> bool:
        return False

    def is_strict(self) -> bool:
        """Whether the set is the image of the comb under a finite permutation."""
        rem = Counter(a.sort for a in self.removed)
        add_ = Counter(a.sort for a in self.added)
        return rem == add_

    def descriptor(self) -> SupportDescriptor:
        return SupportDescriptor(Family.COMB, self.removed, self.added)

    def witness_perm(self) -> FinPerm:
        """A finite permutation carrying the comb onto this set (strict only)."""
        if not self.is_strict():
            raise UnrepresentableError("no finite permutation reaches a non-strict set")
        mapping: dict[Atom, Atom] = {}
        by_sort: dict[int, tuple[list[Atom], list[Atom]]] = {}
        for a in sorted(self.removed):
            by_sort.setdefault(a.sort, ([], []))[0].append(a)
        for b in sorted(self.added):
            by_sort.setdefault(b.sort, ([], []))[1].append(b)
        for rem, add_ in by_sort.values():
            for a, b in zip(rem, add_):
                mapping[a] = b
                mapping[b] = a
        return FinPerm.from_mapping(mapping)

    def __str__(self) -> str:
        return str(self.descriptor())

    __repr__ = __str__


COMB_SET = PermissionSet()


def from_descriptor(d: SupportDescriptor) -> PermissionSet:
    if d.family != Family.COMB:
        raise UnrepresentableError("only comb-family descriptors are permission sets")
    return PermissionSet(d.minus, d.plus)


def act_pointwise(p: FinPerm | GenPerm, s: PermissionSet) -> PermissionSet:
    return from_descriptor(act_descriptor(p, s.descriptor()))


def member(region, a: Atom) -> bool:
    if isinstance(region, (set, frozenset)):
        return a in region
    return region.member(a)


def fresh_atom(sort: int, zone: Zone, avoid) -> Atom:
    """The least atom of the given sort and zone outside the avoid region."""
    avoid_d = avoid if isinstance(avoid, SupportDescriptor) else (
        avoid.descriptor() if isinstance(avoid, PermissionSet) else finite_set(avoid)
    )
    if zone == Zone.DOWN and avoid_d.family == Family.COMB:
        free = sorted(a for a in avoid_d.minus if a.sort == sort and a.zone == zone)
        for a in free:
            if not avoid_d.member(a):
                return a
        raise UnrepresentableError(f"no fresh Down atom of sort {sort} outside {avoid_d}")
    index = 0
    while True:
        a = Atom(sort, zone, index)
        if not avoid_d.member(a):
            return a
        index += 1


def strictly_supportable(d: SupportDescriptor) -> bool:
    """Whether the denoted set fits inside some strict permission set."""
    if d.family != Family.COMB:
        return True
    plus = Counter(a.sort for a in d.plus)
    minus = Counter(a.sort for a in d.minus)
    return all(plus[s] <= minus[s] for s in plus)


def medium_supportable(d: SupportDescriptor) -> bool:
    """Whether the denoted set fits inside some permuted half-comb."""
    if d.family == Family.EMPTY:
        return True
    if d.family != Family.HALF:
        return False
    plus = Counter(a.sort for a in d.plus)
    minus = Counter(a.sort for a in d.minus)
    return all(plus[s] <= minus[s] for s in plus)
