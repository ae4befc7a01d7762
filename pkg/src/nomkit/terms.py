"""Term syntax over a signature: sorts, typing, free atoms, alpha-equivalence.

Terms are not quotiented by renaming; alpha_eq is a separate decision
procedure.  Moderated unknowns and constants carry their permutation
explicitly, and every unknown has the full comb as its permission set; an
unknown with a smaller or shifted permission set is written as a moderated
unknown instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .atoms import Atom, Zone
from .errors import SortError, UnrepresentableError
from . import regions
from .perms import FinPerm, GenPerm, GEN_ID, agree_on, as_gen, compose, restrict, swap
from .regions import (
    COMB,
    COMB_SET,
    EMPTY_SET,
    Family,
    SupportDescriptor,
    act_descriptor,
    finite_set,
)


@dataclass(frozen=True)
class SortName:
    sort: int


@dataclass(frozen=True)
class SortBase:
    name: str


@dataclass(frozen=True)
class SortTuple:
    items: tuple["Sort", ...]


@dataclass(frozen=True)
class SortAbs:
    binder: int
    body: "Sort"


Sort = Union[SortName, SortBase, SortTuple, SortAbs]


@dataclass(frozen=True)
class Signature:
    name_sorts: tuple[str, ...] = ()
    base_sorts: tuple[str, ...] = ()
    constants: dict = field(default_factory=dict)   # name -> (base sort name, pmss)
    unknowns: dict = field(default_factory=dict)    # name -> Sort
    formers: dict = field(default_factory=dict)     # name -> (arg Sort, base sort name)
    predicates: dict = field(default_factory=dict)  # name -> arg Sort
    mode: str = "strict"
    perm_group: str = "finite"

    def __post_init__(self):
        for name, (base, pmss) in self.constants.items():
            if base not in self.base_sorts:
                raise SortError(f"constant {name} has unknown base sort {base}")
            if pmss.family not in (Family.EMPTY, Family.COMB):
                raise SortError(f"pmss of {name} must be comb based or finite")
            if any(a.zone == Zone.UP for a in pmss.plus):
                raise SortError(f"pmss of {name} must stay inside the comb")

    def name_sort_index(self, name: str) -> int:
        return self.name_sorts.index(name)

    def sort_of_atom(self, a: Atom) -> Sort:
        if a.sort >= len(self.name_sorts):
            raise SortError(f"atom {a} has no declared name sort")
        return SortName(a.sort)

    def const_pmss(self, name: str) -> SupportDescriptor:
        return self.constants[name][1]


@dataclass(frozen=True)
class TermAtm:
    atom: Atom


@dataclass(frozen=True)
class TermUnk:
    perm: GenPerm
    name: str


@dataclass(frozen=True)
class TermConst:
    perm: GenPerm
    name: str


@dataclass(frozen=True)
class TermApp:
    former: str
    arg: "Term"


@dataclass(frozen=True)
class TermTup:
    items: tuple["Term", ...]


@dataclass(frozen=True)
class TermAbs:
    atom: Atom
    body: "Term"


Term = Union[TermAtm, TermUnk, TermConst, TermApp, TermTup, TermAbs]


def unk(name: str, p: FinPerm | GenPerm = GEN_ID) -> TermUnk:
    return TermUnk(as_gen(p), name)


def const(name: str, p: FinPerm | GenPerm = GEN_ID) -> TermConst:
    return TermConst(as_gen(p), name)


def typecheck(sig: Signature, r: Term) -> Sort:
    """The unique sort of a term, or a SortError naming the offender."""
    match r:
        case TermAtm(a):
            return sig.sort_of_atom(a)
        case TermUnk(_, name):
            if name not in sig.unknowns:
                raise SortError(f"undeclared unknown {name}")
            return sig.unknowns[name]
        case TermConst(_, name):
            if name not in sig.constants:
                raise SortError(f"undeclared constant {name}")
            return SortBase(sig.constants[name][0])
        case TermApp(f, arg):
            if f not in sig.formers:
                raise SortError(f"undeclared term former {f}")
            want, result = sig.formers[f]
            got = typecheck(sig, arg)
            if got != want:
                raise SortError(f"argument of {f} has sort {got}, expected {want}")
            return SortBase(result)
        case TermTup(items):
            return SortTuple(tuple(typecheck(sig, t) for t in items))
        case TermAbs(a, body):
            if a.sort >= len(sig.name_sorts):
                raise SortError(f"abstraction binds {a} of undeclared sort")
            return SortAbs(a.sort, typecheck(sig, body))
    raise TypeError(f"not a term: {r!r}")


def free_atoms(sig: Signature | None, r: Term) -> SupportDescriptor:
    """fa: the atoms a term can depend on, as a support descriptor."""
    match r:
        case TermAtm(a):
            return finite_set([a])
        case TermUnk(p, _):
            return act_descriptor(p, COMB)
        case TermConst(p, name):
            pmss = sig.const_pmss(name) if sig else COMB
            return act_descriptor(p, pmss)
        case TermApp(_, arg):
            return free_atoms(sig, arg)
        case TermTup(items):
            d = EMPTY_SET
            for t in items:
                d = regions.union(d, free_atoms(sig, t))
            return d
        case TermAbs(a, body):
            return regions.remove(free_atoms(sig, body), [a])
    raise TypeError(f"not a term: {r!r}")


def free_unknowns(r: Term) -> frozenset[str]:
    match r:
        case TermAtm(_) | TermConst(_, _):
            return frozenset()
        case TermUnk(_, name):
            return frozenset([name])
        case TermApp(_, arg):
            return free_unknowns(arg)
        case TermTup(items):
            out: frozenset[str] = frozenset()
            for t in items:
                out |= free_unknowns(t)
            return out
        case TermAbs(_, body):
            return free_unknowns(body)
    raise TypeError(f"not a term: {r!r}")


def act_term(p: FinPerm | GenPerm, r: Term) -> Term:
    g = as_gen(p)
    if g.is_identity():
        return r
    match r:
        case TermAtm(a):
            return TermAtm(g(a))
        case TermUnk(q, name):
            return TermUnk(compose(g, q), name)
        case TermConst(q, name):
            return TermConst(compose(g, q), name)
        case TermApp(f, arg):
            return TermApp(f, act_term(g, arg))
        case TermTup(items):
            return TermTup(tuple(act_term(g, t) for t in items))
        case TermAbs(a, body):
            return TermAbs(g(a), act_term(g, body))
    raise TypeError(f"not a term: {r!r}")


def explicit_atoms(sig: Signature | None, r: Term) -> frozenset[Atom]:
    """The finitely many atoms a term mentions explicitly.

    Moderated heads contribute the moved atoms of their permutation restricted
    to the head's permission set.  A moderating shift has no finite answer.
    """
    match r:
        case TermAtm(a):
            return frozenset([a])
        case TermUnk(p, _):
            return _moderation_atoms(p, COMB_SET)
        case TermConst(p, name):
            pmss = sig.const_pmss(name) if sig else COMB
            return _moderation_atoms(p, pmss)
        case TermApp(_, arg):
            return explicit_atoms(sig, arg)
        case TermTup(items):
            out: frozenset[Atom] = frozenset()
            for t in items:
                out |= explicit_atoms(sig, t)
            return out
        case TermAbs(a, body):
            return explicit_atoms(sig, body) | {a}
    raise TypeError(f"not a term: {r!r}")


def _moderation_atoms(p: GenPerm, region) -> frozenset[Atom]:
    if p.shift != 0:
        raise UnrepresentableError("atoms(r) infinite under shift")
    return restrict(p.fin, region).moved()


def assert_group_ok(sig: Signature, r: Term) -> None:
    """Reject shift-moderated heads when the signature's group is finite."""
    if sig.perm_group == "shift":
        return
    match r:
        case TermUnk(p, name) | TermConst(p, name):
            if p.shift != 0:
                raise SortError(f"shift moderation on {name} outside the shift group")
        case TermApp(_, arg):
            assert_group_ok(sig, arg)
        case TermTup(items):
            for t in items:
                assert_group_ok(sig, t)
        case TermAbs(_, body):
            assert_group_ok(sig, body)
        case _:
            pass


def alpha_eq(sig: Signature | None, r: Term, s: Term) -> bool:
    """Syntax-directed alpha-equivalence on well-sorted terms."""
    if sig is not None:
        rs, ss = typecheck(sig, r), typecheck(sig, s)
        if rs != ss:
            raise SortError(f"alpha comparison across sorts {rs} and {ss}")
    return _alpha(sig, r, s)


def _alpha(sig, r: Term, s: Term) -> bool:
    match r, s:
        case TermAtm(a), TermAtm(b):
            return a == b
        case TermUnk(p, n1), TermUnk(q, n2):
            return n1 == n2 and agree_on(p, q, COMB_SET)
        case TermConst(p, n1), TermConst(q, n2):
            if n1 != n2:
                return False
            pmss = sig.const_pmss(n1) if sig else COMB
            return agree_on(p, q, pmss)
        case TermApp(f, a1), TermApp(g, a2):
            return f == g and _alpha(sig, a1, a2)
        case TermTup(xs), TermTup(ys):
            return len(xs) == len(ys) and all(_alpha(sig, u, v) for u, v in zip(xs, ys))
        case TermAbs(a, b1), TermAbs(b, b2):
            if a == b:
                return _alpha(sig, b1, b2)
            if a.sort != b.sort:
                return False
            if free_atoms(sig, b1).member(b):
                return False
            return _alpha(sig, act_term(swap(b, a), b1), b2)
        case _:
            return False
