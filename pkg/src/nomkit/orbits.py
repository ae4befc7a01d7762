"""Orbit-finite carriers and transporter search.

A carrier is a finite set of generator elements closed under the chosen
permutation group.  Membership testing reduces to finding a transporter: a
group element carrying a generator onto the candidate.  The solver covers
the element shapes used by desk-scale models (atoms, tuples, units,
permission-set elements, fuzzy elements, and abstractions compared atom for
atom); it collects atom-pair and set-pair constraints and closes them into a
finite permutation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from .atoms import Atom, Zone
from .errors import FamilyCapError, SortError, UnrepresentableError
from .lists import extend_to_finperm
from .perms import FinPerm, GenPerm
from .regions import SupportDescriptor
from .universe import (
    Abs,
    Atm,
    Element,
    Fuzzy,
    ListAbs,
    PSetElem,
    Tup,
    Unit,
    act_elem,
    elem_eq,
    support,
)


class Closure(str, Enum):
    FINITE = "finite"
    SHIFT = "shift"


@dataclass
class _Constraints:
    pairs: dict[Atom, Atom] = field(default_factory=dict)
    sets: list[tuple[SupportDescriptor, SupportDescriptor]] = field(default_factory=list)
    shift: int | None = None

    def add_pair(self, a: Atom, b: Atom) -> bool:
        if a.sort != b.sort:
            return False
        if a in self.pairs:
            return self.pairs[a] == b
        if b in self.pairs.values():
            return False
        self.pairs[a] = b
        return True

    def add_shift(self, k: int) -> bool:
        if self.shift is None:
            self.shift = k
            return True
        return self.shift == k


def _collect(g: Element, x: Element, cons: _Constraints) -> bool:
    match g, x:
        case Atm(a), Atm(b):
            return cons.add_pair(a, b)
        case Tup(gs), Tup(xs):
            return len(gs) == len(xs) and all(
                _collect(u, v, cons) for u, v in zip(gs, xs)
            )
        case Abs(a, gb), Abs(b, xb):
            return cons.add_pair(a, b) and _collect(gb, xb, cons)
        case Fuzzy(i), Fuzzy(j):
            return cons.add_shift(j - i)
        case Unit(t1, d1), Unit(t2, d2):
            if t1 != t2:
                return False
            cons.sets.append((d1, d2))
            return True
        case PSetElem(s), PSetElem(t):
            cons.sets.append((s.descriptor(), t.descriptor()))
            return True
        case ListAbs(l1, b1), ListAbs(l2, b2):
            if l1.mode != l2.mode:
                return False
            cons.sets.append((support(ListAbs(l1, b1)), support(ListAbs(l2, b2))))
            return True
        case _:
            return False


def _solve_sets(cons: _Constraints) -> dict[Atom, Atom] | None:
    """Close atom pairs and set-image demands into one finite bijection.

    All exceptional atoms of every set constraint, together with the paired
    atoms, form a finite working set; the bijection is built as a permutation
    of that set matching source membership profiles to target profiles, so no
    later chain closure can break a set image.
    """
    pairs = dict(cons.pairs)
    sets: list[tuple[SupportDescriptor, SupportDescriptor]] = []
    for src, dst in cons.sets:
        if (src, dst) not in sets:
            sets.append((src, dst))
    if not sets:
        return pairs
    for src, dst in sets:
        if src.family != dst.family:
            return None
        if _sort_defects(src) != _sort_defects(dst):
            return None
    src_profile = lambda a: tuple(s.member(a) for s, _ in sets)
    dst_profile = lambda a: tuple(t.member(a) for _, t in sets)
    for a, b in pairs.items():
        if src_profile(a) != dst_profile(b):
            return None
    work: set[Atom] = set(pairs) | set(pairs.values())
    for src, dst in sets:
        work |= src.perturbation_atoms() | dst.perturbation_atoms()
    dom = [a for a in sorted(work) if a not in pairs]
    ran = [b for b in sorted(work) if b not in pairs.values()]
    sorts = {a.sort for a in dom} | {b.sort for b in ran}
    for s in sorted(sorts):
        groups_d: dict[tuple, list[Atom]] = {}
        groups_r: dict[tuple, list[Atom]] = {}
        for a in dom:
            if a.sort == s:
                groups_d.setdefault(src_profile(a), []).append(a)
        for b in ran:
            if b.sort == s:
                groups_r.setdefault(dst_profile(b), []).append(b)
        for profile in sorted(set(groups_d) | set(groups_r)):
            da = groups_d.get(profile, [])
            ra = groups_r.get(profile, [])
            while len(da) != len(ra):
                short, side = (da, "src") if len(da) < len(ra) else (ra, "dst")
                pad = _pad_atom(s, profile, sets, side, work)
                if pad is None:
                    return None
                short.append(pad)
                work.add(pad)
            for a, b in zip(da, ra):
                pairs[a] = b
    return pairs


def _sort_defects(d: SupportDescriptor) -> dict[int, int]:
    counts: dict[int, int] = {}
    for a in d.minus:
        counts[a.sort] = counts.get(a.sort, 0) + 1
    for a in d.plus:
        counts[a.sort] = counts.get(a.sort, 0) - 1
    return {s: n for s, n in counts.items() if n}


def _pad_atom(sort: int, profile: tuple, sets, side: str, work: set[Atom]) -> Atom | None:
    """A fresh atom whose generic membership profile matches, if one exists."""
    for zone, start, step in ((Zone.UP, 0, 1), (Zone.DOWN, 0, 2), (Zone.DOWN, 1, 2)):
        idx = start
        while True:
            a = Atom(sort, zone, idx)
            if a in work:
                idx += step
                continue
            break
        got = tuple(
            (s if side == "src" else t).member(a) for s, t in sets
        )
        if got == profile:
            return a
    return None


def find_transporter(g: Element, x: Element, closure: Closure) -> GenPerm | None:
    """A group element carrying g onto x, or None if the shapes rule it out."""
    cons = _Constraints()
    if not _collect(g, x, cons):
        return None
    k = cons.shift or 0
    if k != 0 and closure != Closure.SHIFT:
        return None
    if k != 0:
        try:
            shifted = act_elem(GenPerm(FinPerm(), k), g)
        except UnrepresentableError:
            return None
        cons2 = _Constraints()
        if not _collect(shifted, x, cons2) or (cons2.shift or 0) != 0:
            return None
        cons = cons2
    pairs = _solve_sets(cons)
    if pairs is None:
        return None
    try:
        fin = extend_to_finperm(pairs)
    except (ValueError, SortError):
        return None
    candidate = GenPerm(fin, k)
    try:
        if elem_eq(act_elem(candidate, g), x):
            return candidate
    except UnrepresentableError:
        return None
    return None


def perms_over(pool: frozenset[Atom] | set[Atom]) -> list[FinPerm]:
    """Every finite permutation whose moved atoms lie inside the pool."""
    by_sort: dict[int, list[Atom]] = {}
    for a in sorted(pool):
        by_sort.setdefault(a.sort, []).append(a)
    groups: list[list[FinPerm]] = []
    for atoms in by_sort.values():
        perms = []
        for image in itertools.permutations(atoms):
            perms.append(FinPerm.from_mapping(dict(zip(atoms, image))))
        groups.append(perms)
    out: list[FinPerm] = []
    for combo in itertools.product(*groups) if groups else [()]:
        p = FinPerm()
        for q in combo:
            p = _merge(p, q)
        out.append(p)
    return out


def _merge(p: FinPerm, q: FinPerm) -> FinPerm:
    mapping = {a: p(a) for a in p.moved()}
    mapping.update({a: q(a) for a in q.moved()})
    return FinPerm.from_mapping(mapping)


@dataclass(frozen=True)
class Carrier:
    generators: tuple[Element, ...]
    closure: Closure = Closure.FINITE

    def contains(self, x: Element) -> bool:
        return any(find_transporter(g, x, self.closure) is not None for g in self.generators)

    def sample_values(self, pool: frozenset[Atom], cap: int = 2000) -> list[Element]:
        """Orbit samples: generators moved by pool permutations (and small
        shift powers under the shift closure), deduplicated."""
        out: list[Element] = []
        shifts = [0] if self.closure == Closure.FINITE else [-2, -1, 0, 1, 2]
        for g in self.generators:
            local = set(pool) | set(support(g).perturbation_atoms())
            for fin in perms_over(frozenset(local)):
                for k in shifts:
                    p = GenPerm(fin, k)
                    try:
                        v = act_elem(p, g)
                    except Exception:
                        continue
                    if not any(elem_eq(v, w) for w in out):
                        out.append(v)
                    if len(out) > cap:
                        raise FamilyCapError(f"carrier sample exceeds cap {cap}")
        return out
