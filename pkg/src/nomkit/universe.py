"""The executable universe of permissive-nominal elements.

Elements carry a permutation action, a computable support descriptor, and a
decidable equality that treats atom abstraction and list abstraction up to
renaming.  An abstraction binds one atom; a list abstraction binds all the
atoms of an infinite list at once, leaving a finite residual support (the
constructor rejects anything else, which is exactly where the shift group
breaks the theory).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .atoms import Atom
from .errors import NotFreshError, UnrepresentableError
from . import regions
from .lists import AtomList, ListMode, connecting_perm, fresh_list
from .perms import FinPerm, GenPerm, as_gen, swap
from .regions import (
    EMPTY_SET,
    PermissionSet,
    SupportDescriptor,
    act_descriptor,
    act_pointwise,
    finite_set,
)


@dataclass(frozen=True)
class Atm:
    atom: Atom


@dataclass(frozen=True)
class Tup:
    items: tuple["Element", ...]


@dataclass(frozen=True)
class Abs:
    atom: Atom
    body: "Element"


@dataclass(frozen=True)
class ListAbs:
    lst: AtomList
    body: "Element"

    def __post_init__(self):
        residual = regions.diff(support(self.body), self.lst.support())
        if not residual.is_finite():
            raise UnrepresentableError(
                f"unrepresentable abstraction: residual support {residual} is infinite"
            )


@dataclass(frozen=True)
class PSetElem:
    pset: PermissionSet


@dataclass(frozen=True)
class Fuzzy:
    """An orbit element fixed by every finite permutation but moved by shift."""

    index: int


@dataclass(frozen=True)
class Unit:
    """An opaque constant-like element with a declared support."""

    tag: str
    supp: SupportDescriptor = EMPTY_SET


Element = Union[Atm, Tup, Abs, ListAbs, PSetElem, Fuzzy, Unit]


def act_elem(p: FinPerm | GenPerm, x: Element) -> Element:
    g = as_gen(p)
    if g.is_identity():
        return x
    match x:
        case Atm(a):
            return Atm(g(a))
        case Tup(items):
            return Tup(tuple(act_elem(g, y) for y in items))
        case Abs(a, body):
            return Abs(g(a), act_elem(g, body))
        case ListAbs(lst, body):
            return ListAbs(lst.act(g), act_elem(g, body))
        case PSetElem(s):
            return PSetElem(act_pointwise(g, s))
        case Fuzzy(i):
            return Fuzzy(i + g.shift)
        case Unit(tag, d):
            return Unit(tag, act_descriptor(g, d))
    raise TypeError(f"not an element: {x!r}")


def support(x: Element) -> SupportDescriptor:
    """The least supporting atom set, computed structurally.

    Fuzzy elements report empty support; they are fixed by every finite
    permutation yet moved by shift, see shift_sensitive.
    """
    match x:
        case Atm(a):
            return finite_set([a])
        case Tup(items):
            d = EMPTY_SET
            for y in items:
                d = regions.union(d, support(y))
            return d
        case Abs(a, body):
            return regions.remove(support(body), [a])
        case ListAbs(lst, body):
            return regions.diff(support(body), lst.support())
        case PSetElem(s):
            return s.descriptor()
        case Fuzzy(_):
            return EMPTY_SET
        case Unit(_, d):
            return d
    raise TypeError(f"not an element: {x!r}")


def shift_sensitive(x: Element) -> bool:
    """Whether the element can be moved by shift despite its finite-perm support."""
    match x:
        case Fuzzy(_):
            return True
        case Tup(items):
            return any(shift_sensitive(y) for y in items)
        case Abs(_, body) | ListAbs(_, body):
            return shift_sensitive(body)
        case _:
            return False


def elem_eq(x: Element, y: Element) -> bool:
    """Semantic equality: abstraction cases are compared up to renaming."""
    if type(x) is not type(y):
        return False
    match x, y:
        case Atm(a), Atm(b):
            return a == b
        case Tup(xs), Tup(ys):
            return len(xs) == len(ys) and all(elem_eq(u, v) for u, v in zip(xs, ys))
        case Abs(a, bx), Abs(b, by):
            if a == b:
                return elem_eq(bx, by)
            if a.sort != b.sort:
                return False
            if support(bx).member(b):
                return False
            return elem_eq(act_elem(swap(b, a), bx), by)
        case ListAbs(_, _), ListAbs(_, _):
            return _listabs_eq(x, y)
        case PSetElem(s), PSetElem(t):
            return s == t
        case Fuzzy(i), Fuzzy(j):
            return i == j
        case Unit(t1, d1), Unit(t2, d2):
            return t1 == t2 and d1 == d2
    raise TypeError(f"not elements: {x!r}, {y!r}")


def _listabs_eq(x: ListAbs, y: ListAbs) -> bool:
    if x.lst.mode != y.lst.mode:
        return False
    dx, dy = support(x), support(y)
    if dx != dy:
        return False
    if x.lst == y.lst:
        return elem_eq(x.body, y.body)
    avoid = (
        set(dx.finite_atoms())
        | set(dy.finite_atoms())
        | _list_symdiff_atoms(x.lst, y.lst)
    )
    common = fresh_list(x.lst.mode, avoid)
    return elem_eq(listabs_at(x, common), listabs_at(y, common))


def _list_symdiff_atoms(l1: AtomList, l2: AtomList) -> set[Atom]:
    atoms: set[Atom] = set()
    for pos in l1.perturbed_positions() | l2.perturbed_positions():
        a, b = l1.entry(pos), l2.entry(pos)
        if a != b:
            atoms |= {a, b}
    return atoms


def listabs(lst: AtomList, body: Element) -> Element:
    """Abstract every atom of the list in the body at once."""
    return ListAbs(lst, body)


def listabs_at(xhat: Element, lst: AtomList) -> Element:
    """The unique body x with xhat equal to listabs(lst, x).

    Requires the abstraction's residual support to be disjoint from the
    atoms of the target list.
    """
    if not isinstance(xhat, ListAbs):
        raise TypeError("extraction applies to list abstractions only")
    residual = support(xhat)
    meet = regions.intersect(residual, lst.support())
    if not meet.is_empty():
        raise NotFreshError(f"list not fresh for abstraction: overlaps on {meet}")
    carrier = connecting_perm(xhat.lst, lst)
    for a in carrier.moved():
        if residual.member(a):
            raise NotFreshError("carrying permutation touches the residual support")
    return act_elem(carrier, xhat.body)


def factor_common(
    ys: Sequence[Element], avoid: Iterable[Atom] = (), mode: ListMode = ListMode.FULL
) -> tuple[AtomList, list[Element]]:
    """One list over which every given abstraction factors.

    Returns (l, xs) with each ys[i] equal to listabs(l, xs[i]) and the atoms
    of l disjoint from every residual support and from the avoid set.
    """
    modes = {y.lst.mode for y in ys if isinstance(y, ListAbs)}
    if len(modes) > 1:
        raise UnrepresentableError("cannot factor abstractions over different bases")
    if modes:
        mode = modes.pop()
    avoid_atoms = set(avoid)
    for y in ys:
        avoid_atoms |= set(support(y).finite_atoms())
    lst = fresh_list(mode, avoid_atoms)
    return lst, [listabs_at(y, lst) for y in ys]
