"""Textual syntax: tokenizer, parsers, and printers for every value kind.

Atoms print as d<sort>.<index> (Down) and u<sort>.<index> (Up).  For desk
work the single letters a..z are accepted on input as aliases for the sort-0
Down atoms d0.0..d0.25; printers emit canonical spellings unless letter
rendering is requested.  Every printer round-trips through its parser.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .atoms import Atom, Zone, down
from .errors import ParseError
from .lists import AtomList, ListMode, base_atom, base_position
from .orbits import Carrier, Closure
from .perms import FIN_ID, FinPerm, GenPerm
from .regions import (
    COMB,
    EMPTY_SET,
    Family,
    PermissionSet,
    SupportDescriptor,
    descriptor,
    from_descriptor,
)
from .semantics import (
    EqCompose,
    EqConst,
    EqIdentity,
    EqMkAbs,
    EqMkTuple,
    EqProj,
    EqTable,
    EquivFn,
    Interpretation,
    Theory,
    validate_table,
)
from .pnl import (
    BOT,
    PAll,
    PBot,
    PImp,
    PNLInterpretation,
    PPred,
    PredEqual,
    PredFresh,
    PredTable,
    Proposition,
    p_exists,
)
from .terms import (
    Signature,
    Sort,
    SortAbs,
    SortBase,
    SortName,
    SortTuple,
    Term,
    TermAbs,
    TermApp,
    TermAtm,
    TermConst,
    TermTup,
    TermUnk,
)
from .universe import Abs, Atm, Element, Fuzzy, ListAbs, PSetElem, Tup, Unit, listabs


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<atom>[du]\d+\.\d+)
  | (?P<arrow>->)
  | (?P<int>-?\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[()\[\]{},:=*.+\-/^])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, line_offset: int = 0) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1 + line_offset, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    return tokens


class Parser:
    def __init__(self, text: str, line_offset: int = 0):
        self.tokens = tokenize(text, line_offset)
        self.pos = 0

    def peek(self, ahead: int = 0) -> Token | None:
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", *self._last_pos())
        self.pos += 1
        return tok

    def _last_pos(self) -> tuple[int, int]:
        if self.tokens:
            last = self.tokens[-1]
            return last.line, last.col + len(last.text)
        return 1, 1

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def at(self, text: str, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok is not None and tok.text == text

    def done(self) -> bool:
        return self.pos >= len(self.tokens)

    def fail(self, message: str) -> ParseError:
        tok = self.peek()
        if tok is None:
            return ParseError(message, *self._last_pos())
        return ParseError(message, tok.line, tok.col)

    # -- atoms ------------------------------------------------------------

    def atom(self) -> Atom:
        tok = self.next()
        a = _atom_from_token(tok)
        if a is None:
            raise ParseError(f"expected an atom, found {tok.text!r}", tok.line, tok.col)
        return a

    def try_atom(self) -> Atom | None:
        tok = self.peek()
        if tok is None:
            return None
        a = _atom_from_token(tok)
        if a is not None:
            self.pos += 1
        return a

    # -- permutations -----------------------------------------------------

    def perm(self) -> GenPerm:
        shift = 0
        fin = FIN_ID
        tok = self.peek()
        if tok is not None and tok.text == "shift":
            self.next()
            if self.at("^"):
                self.next()
                shift = self.int_value()
            else:
                shift = 1
            # the star binds to a following cycle list, not to a moderated head
            if self.at("*") and (self.at("(", ahead=1) or self.at("id", ahead=1)):
                self.next()
                fin = self.fin_perm()
        elif tok is not None and tok.text == "id":
            self.next()
        else:
            fin = self.fin_perm()
        return GenPerm(fin, shift)

    def fin_perm(self) -> FinPerm:
        if self.at("id"):
            self.next()
            return FIN_ID
        cycles = []
        if not self.at("("):
            raise self.fail("expected a cycle list or id")
        while self.at("("):
            self.next()
            cyc = []
            while not self.at(")"):
                cyc.append(self.atom())
            self.expect(")")
            cycles.append(tuple(cyc))
        try:
            return FinPerm.from_cycles(cycles)
        except Exception as exc:
            raise self.fail(str(exc))

    def int_value(self) -> int:
        tok = self.next()
        try:
            return int(tok.text)
        except ValueError:
            raise ParseError(f"expected an integer, found {tok.text!r}", tok.line, tok.col)

    # -- atom set descriptors ----------------------------------------------

    def region(self) -> SupportDescriptor:
        tok = self.peek()
        if tok is None:
            raise self.fail("expected an atom set")
        if tok.text in ("comb", "halfcomb", "oddcomb"):
            self.next()
            family = {
                "comb": Family.COMB,
                "halfcomb": Family.HALF,
                "oddcomb": Family.ODD,
            }[tok.text]
            verdicts = []
            while self.at("-") or self.at("+"):
                sign = self.next().text
                for a in self.atom_set():
                    verdicts.append((a, sign == "+"))
            try:
                return descriptor(family, verdicts)
            except ValueError as exc:
                raise self.fail(str(exc))
        if tok.text == "{":
            return descriptor(Family.EMPTY, [(a, True) for a in self.atom_set()])
        raise ParseError(f"expected an atom set, found {tok.text!r}", tok.line, tok.col)

    def atom_set(self) -> list[Atom]:
        self.expect("{")
        atoms = []
        while not self.at("}"):
            atoms.append(self.atom())
            if self.at(","):
                self.next()
        self.expect("}")
        return atoms

    def permission_set(self) -> PermissionSet:
        d = self.region()
        try:
            return from_descriptor(d)
        except Exception as exc:
            raise self.fail(str(exc))

    # -- elements -----------------------------------------------------------

    def element(self) -> Element:
        tok = self.peek()
        if tok is None:
            raise self.fail("expected an element")
        if tok.text == "atm":
            self.next()
            return Atm(self.atom())
        if tok.text == "pset":
            self.next()
            return PSetElem(self.permission_set())
        if tok.text == "fuzzy":
            self.next()
            return Fuzzy(self.int_value())
        if tok.text == "unit":
            self.next()
            name = self.next()
            if name.kind != "name":
                raise ParseError("expected a unit tag", name.line, name.col)
            supp = EMPTY_SET
            if self.at("supp"):
                self.next()
                self.expect("=")
                supp = self.region()
            return Unit(name.text, supp)
        if tok.text == "(":
            self.next()
            items = []
            while not self.at(")"):
                items.append(self.element())
                if self.at(","):
                    self.next()
            self.expect(")")
            return Tup(tuple(items))
        if tok.text == "[":
            self.next()
            if self.at("list"):
                lst = self.atom_list()
                self.expect("]")
                body = self.element()
                try:
                    return listabs(lst, body)
                except Exception as exc:
                    raise self.fail(str(exc))
            a = self.atom()
            self.expect("]")
            return Abs(a, self.element())
        a = self.try_atom()
        if a is not None:
            return Atm(a)
        raise ParseError(f"expected an element, found {tok.text!r}", tok.line, tok.col)

    def atom_list(self) -> AtomList:
        self.expect("list")
        mode_tok = self.next()
        if mode_tok.text not in ("full", "half"):
            raise ParseError("expected list mode full or half", mode_tok.line, mode_tok.col)
        mode = ListMode(mode_tok.text)
        pert = []
        if self.at("/"):
            self.next()
            while True:
                src = self.atom()
                self.expect("->")
                dst = self.atom()
                pos = base_position(mode, src)
                if pos is None:
                    raise self.fail(f"{src} is not a base atom of the {mode.value} list")
                pert.append((pos, dst))
                if self.at(","):
                    self.next()
                    continue
                break
        pert.sort(key=lambda pa: pa[0])
        try:
            return AtomList(mode, tuple(pert))
        except ValueError as exc:
            raise self.fail(str(exc))

    # -- sorts ---------------------------------------------------------------

    def sort(self, sig: Signature) -> Sort:
        tok = self.peek()
        if tok is None:
            raise self.fail("expected a sort")
        if tok.text == "(":
            self.next()
            items = []
            while not self.at(")"):
                items.append(self.sort(sig))
                if self.at(","):
                    self.next()
            self.expect(")")
            return SortTuple(tuple(items))
        if tok.text == "[":
            self.next()
            name = self.next()
            if name.text not in sig.name_sorts:
                raise ParseError(f"unknown name sort {name.text}", name.line, name.col)
            self.expect("]")
            return SortAbs(sig.name_sorts.index(name.text), self.sort(sig))
        self.next()
        if tok.text in sig.name_sorts:
            return SortName(sig.name_sorts.index(tok.text))
        if tok.text in sig.base_sorts:
            return SortBase(tok.text)
        raise ParseError(f"unknown sort {tok.text}", tok.line, tok.col)

    # -- terms ----------------------------------------------------------------

    def term(self, sig: Signature, permissive: bool = False) -> Term:
        tok = self.peek()
        if tok is None:
            raise self.fail("expected a term")
        if tok.text == "[":
            self.next()
            a = self.atom()
            self.expect("]")
            return TermAbs(a, self.term(sig, permissive))
        if tok.text == "(":
            saved = self.pos
            moderated = self._try_moderated(sig, permissive)
            if moderated is not None:
                return moderated
            self.pos = saved
            self.next()
            items = []
            while not self.at(")"):
                items.append(self.term(sig, permissive))
                if self.at(","):
                    self.next()
            self.expect(")")
            return TermTup(tuple(items))
        if tok.text in ("id", "shift"):
            moderated = self._try_moderated(sig, permissive)
            if moderated is not None:
                return moderated
            raise self.fail("dangling permutation")
        if tok.kind == "atom":
            return TermAtm(self.atom())
        if tok.kind == "name":
            return self._head_term(sig, permissive)
        raise ParseError(f"expected a term, found {tok.text!r}", tok.line, tok.col)

    def _try_moderated(self, sig: Signature, permissive: bool) -> Term | None:
        saved = self.pos
        try:
            p = self.perm()
            if not self.at("*"):
                raise self.fail("no moderation star")
            self.next()
        except ParseError:
            self.pos = saved
            return None
        head = self.next()
        if head.kind != "name":
            raise ParseError("expected an unknown or constant", head.line, head.col)
        return self._resolve_head(sig, permissive, head, p)

    def _head_term(self, sig: Signature, permissive: bool) -> Term:
        head = self.next()
        return self._resolve_head(sig, permissive, head, GenPerm())

    def _resolve_head(self, sig, permissive, head: Token, p: GenPerm) -> Term:
        name = head.text
        if name in sig.formers:
            if not p.is_identity():
                raise ParseError("term formers cannot be moderated", head.line, head.col)
            self.expect("(")
            arg_items = []
            while not self.at(")"):
                arg_items.append(self.term(sig, permissive))
                if self.at(","):
                    self.next()
            self.expect(")")
            arg = arg_items[0] if len(arg_items) == 1 else TermTup(tuple(arg_items))
            return TermApp(name, arg)
        if name in sig.constants:
            return TermConst(p, name)
        if name in sig.unknowns:
            return TermUnk(p, name)
        alias = _letter_atom(name)
        if alias is not None and p.is_identity():
            return TermAtm(alias)
        if permissive:
            return TermUnk(p, name)
        raise ParseError(f"undeclared name {name}", head.line, head.col)

    # -- propositions -----------------------------------------------------------

    def prop(self, sig: Signature, permissive: bool = False) -> Proposition:
        left = self.prop_atom(sig, permissive)
        if self.at("->"):
            self.next()
            return PImp(left, self.prop(sig, permissive))
        return left

    def prop_atom(self, sig: Signature, permissive: bool) -> Proposition:
        tok = self.peek()
        if tok is None:
            raise self.fail("expected a proposition")
        if tok.text == "bot":
            self.next()
            return BOT
        if tok.text == "(":
            self.next()
            inner = self.prop(sig, permissive)
            self.expect(")")
            return inner
        if tok.text in ("forall", "exists"):
            self.next()
            name = self.next()
            if name.kind != "name":
                raise ParseError("expected an unknown", name.line, name.col)
            self.expect(".")
            body = self.prop(sig, permissive)
            if tok.text == "forall":
                return PAll(name.text, body)
            return p_exists(name.text, body)
        if tok.kind == "name":
            name = self.next().text
            self.expect("(")
            args = [self.term(sig, permissive)]
            while self.at(","):
                self.next()
                args.append(self.term(sig, permissive))
            self.expect(")")
            arg = args[0] if len(args) == 1 else TermTup(tuple(args))
            return PPred(name, arg)
        raise ParseError(f"expected a proposition, found {tok.text!r}", tok.line, tok.col)

    # -- equivariant function expressions ------------------------------------

    def equiv_fn(self) -> EquivFn:
        tok = self.next()
        if tok.text == "identity":
            return EqIdentity()
        if tok.text == "const":
            return EqConst(self.element())
        if tok.text == "proj":
            return EqProj(self.int_value())
        if tok.text == "mkabs":
            return EqMkAbs()
        if tok.text == "compose":
            self.expect("(")
            outer = self.equiv_fn()
            self.expect(",")
            inner = self.equiv_fn()
            self.expect(")")
            return EqCompose(outer, inner)
        if tok.text == "mktuple":
            self.expect("(")
            parts = []
            while not self.at(")"):
                parts.append(self.equiv_fn())
                if self.at(","):
                    self.next()
            self.expect(")")
            return EqMkTuple(tuple(parts))
        if tok.text == "table":
            self.expect("{")
            entries = []
            while not self.at("}"):
                key = self.element()
                self.expect("->")
                entries.append((key, self.element()))
                if self.at(","):
                    self.next()
            self.expect("}")
            return EqTable(tuple(entries))
        raise ParseError(f"unknown combinator {tok.text!r}", tok.line, tok.col)


def _letter_atom(name: str) -> Atom | None:
    if len(name) == 1 and "a" <= name <= "z":
        return down(0, ord(name) - ord("a"))
    return None


def _atom_from_token(tok: Token) -> Atom | None:
    if tok.kind == "atom":
        zone = Zone.DOWN if tok.text[0] == "d" else Zone.UP
        sort_text, index_text = tok.text[1:].split(".")
        return Atom(int(sort_text), zone, int(index_text))
    if tok.kind == "name":
        return _letter_atom(tok.text)
    return None


# ---------------------------------------------------------------------------
# Whole-input convenience parsers.

def _parse_all(text: str, produce):
    p = Parser(text)
    value = produce(p)
    if not p.done():
        tok = p.peek()
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
    return value


def parse_atom(text: str) -> Atom:
    return _parse_all(text, lambda p: p.atom())


def parse_perm(text: str) -> GenPerm:
    return _parse_all(text, lambda p: p.perm())


def parse_region(text: str) -> SupportDescriptor:
    return _parse_all(text, lambda p: p.region())


def parse_element(text: str) -> Element:
    return _parse_all(text, lambda p: p.element())


def parse_term(text: str, sig: Signature | None = None) -> Term:
    permissive = sig is None
    sig = sig if sig is not None else ambient_signature()
    return _parse_all(text, lambda p: p.term(sig, permissive))


def parse_prop(text: str, sig: Signature | None = None) -> Proposition:
    permissive = sig is None
    sig = sig if sig is not None else ambient_signature()
    return _parse_all(text, lambda p: p.prop(sig, permissive))


def ambient_signature() -> Signature:
    """A permissive signature for signature-free command-line parsing."""
    return Signature(name_sorts=("nu0", "nu1"), base_sorts=("ambient",))


# ---------------------------------------------------------------------------
# Printers.  Each round-trips through the parser above.

def show_atom(a: Atom, letters: bool = False) -> str:
    if letters and a.zone == Zone.DOWN and a.sort == 0 and a.index < 26:
        return chr(ord("a") + a.index)
    return str(a)


def show_fin_perm(p: FinPerm, letters: bool = False) -> str:
    if p.is_identity():
        return "id"
    return "".join(
        "(" + " ".join(show_atom(a, letters) for a in cyc) + ")" for cyc in p.cycles
    )


def show_perm(p: FinPerm | GenPerm, letters: bool = False) -> str:
    if isinstance(p, FinPerm):
        return show_fin_perm(p, letters)
    if p.shift == 0:
        return show_fin_perm(p.fin, letters)
    head = f"shift^{p.shift}"
    if p.fin.is_identity():
        return head
    return f"{head} * {show_fin_perm(p.fin, letters)}"


def show_region(d: SupportDescriptor, letters: bool = False) -> str:
    def atoms(xs) -> str:
        return "{" + ", ".join(show_atom(a, letters) for a in sorted(xs)) + "}"

    if d.family == Family.EMPTY:
        return atoms(d.plus)
    text = d.family.value
    if d.minus:
        text += " - " + atoms(d.minus)
    if d.plus:
        text += " + " + atoms(d.plus)
    return text


def show_list(lst: AtomList) -> str:
    subs = ", ".join(
        f"{show_atom(base_atom(lst.mode, pos))}->{show_atom(a)}" for pos, a in lst.pert
    )
    return f"list {lst.mode.value}" + (f" / {subs}" if subs else "")


def show_element(x: Element) -> str:
    match x:
        case Atm(a):
            return f"atm {show_atom(a)}"
        case Tup(items):
            return "(" + ", ".join(show_element(y) for y in items) + ")"
        case Abs(a, body):
            return f"[{show_atom(a)}]{show_element(body)}"
        case ListAbs(lst, body):
            return f"[{show_list(lst)}]{show_element(body)}"
        case PSetElem(s):
            return f"pset {show_region(s.descriptor())}"
        case Fuzzy(i):
            return f"fuzzy {i}"
        case Unit(tag, supp):
            if supp.is_empty():
                return f"unit {tag}"
            return f"unit {tag} supp={show_region(supp)}"
    raise TypeError(f"not an element: {x!r}")


def show_sort(sort: Sort, sig: Signature) -> str:
    match sort:
        case SortName(nu):
            return sig.name_sorts[nu]
        case SortBase(name):
            return name
        case SortTuple(items):
            return "(" + ", ".join(show_sort(s, sig) for s in items) + ")"
        case SortAbs(nu, body):
            return f"[{sig.name_sorts[nu]}]{show_sort(body, sig)}"
    raise TypeError(f"not a sort: {sort!r}")


def show_term(r: Term, letters: bool = False) -> str:
    match r:
        case TermAtm(a):
            return show_atom(a, letters)
        case TermUnk(p, name) | TermConst(p, name):
            if p.is_identity():
                return name
            return f"{show_perm(p, letters)} * {name}"
        case TermApp(f, TermTup(items)) if len(items) != 1:
            return f"{f}(" + ", ".join(show_term(t, letters) for t in items) + ")"
        case TermApp(f, arg):
            return f"{f}({show_term(arg, letters)})"
        case TermTup(items):
            return "(" + ", ".join(show_term(t, letters) for t in items) + ")"
        case TermAbs(a, body):
            return f"[{show_atom(a, letters)}]{show_term(body, letters)}"
    raise TypeError(f"not a term: {r!r}")


def show_prop(phi: Proposition, letters: bool = False) -> str:
    match phi:
        case PBot():
            return "bot"
        case PImp(a, b):
            return f"{_show_prop_atom(a, letters)} -> {show_prop(b, letters)}"
        case PAll(name, body):
            return f"forall {name}. {show_prop(body, letters)}"
        case PPred(name, TermTup(items)) if len(items) != 1:
            return f"{name}(" + ", ".join(show_term(t, letters) for t in items) + ")"
        case PPred(name, arg):
            return f"{name}({show_term(arg, letters)})"
    raise TypeError(f"not a proposition: {phi!r}")


def _show_prop_atom(phi: Proposition, letters: bool) -> str:
    if isinstance(phi, (PImp, PAll)):
        return f"({show_prop(phi, letters)})"
    return show_prop(phi, letters)


# ---------------------------------------------------------------------------
# Line-based files: signatures, theories, models.

def _logical_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines()):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line))
    return out


def parse_signature(text: str) -> tuple[Signature, list[tuple[Term, Term]]]:
    """Parse signature declarations, collecting any axiom lines on the way."""
    name_sorts: list[str] = []
    base_sorts: list[str] = []
    constants: dict = {}
    unknowns: dict = {}
    formers: dict = {}
    predicates: dict = {}
    mode = "strict"
    perm_group = "finite"
    axiom_lines: list[tuple[int, str]] = []

    for offset, line in _logical_lines(text):
        p = Parser(line, line_offset=offset)
        head = p.next().text
        sig = Signature(
            tuple(name_sorts), tuple(base_sorts), constants, unknowns,
            formers, predicates, mode, perm_group,
        )
        if head == "namesort":
            name_sorts.append(p.next().text)
        elif head == "basesort":
            base_sorts.append(p.next().text)
        elif head == "const":
            name = p.next().text
            p.expect(":")
            base = p.next().text
            pmss = COMB
            if p.at("pmss"):
                p.next()
                pmss = p.region()
            constants[name] = (base, pmss)
        elif head == "unknown":
            name = p.next().text
            p.expect(":")
            unknowns[name] = p.sort(sig)
        elif head == "former":
            name = p.next().text
            p.expect(":")
            p.expect("(")
            args = []
            while not p.at(")"):
                args.append(p.sort(sig))
                if p.at(","):
                    p.next()
            p.expect(")")
            result = p.next().text
            arg = args[0] if len(args) == 1 else SortTuple(tuple(args))
            formers[name] = (arg, result)
        elif head == "pred":
            name = p.next().text
            p.expect(":")
            predicates[name] = p.sort(sig)
        elif head == "mode":
            mode = p.next().text
        elif head == "group":
            perm_group = p.next().text
        elif head == "axiom":
            axiom_lines.append((offset, line))
            continue
        else:
            raise ParseError(f"unknown declaration {head!r}", offset + 1, 1)
        if not p.done():
            tok = p.peek()
            raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)

    sig = Signature(
        tuple(name_sorts), tuple(base_sorts), constants, unknowns,
        formers, predicates, mode, perm_group,
    )
    axioms = []
    for offset, line in axiom_lines:
        p = Parser(line, line_offset=offset)
        p.expect("axiom")
        lhs = p.term(sig)
        p.expect("=")
        rhs = p.term(sig)
        if not p.done():
            tok = p.peek()
            raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
        axioms.append((lhs, rhs))
    return sig, axioms


def parse_theory(text: str) -> Theory:
    sig, axioms = parse_signature(text)
    return Theory(sig, tuple(axioms))


def parse_model(text: str, sig: Signature) -> PNLInterpretation:
    """Parse carrier/former/const/pred/quantbasis lines into a model."""
    carriers: dict[str, Carrier] = {}
    formers: dict[str, EquivFn] = {}
    consts: dict[str, Element] = {}
    preds: dict = {}
    basis: dict[Sort, tuple[Element, ...]] = {}

    for offset, line in _logical_lines(text):
        p = Parser(line, line_offset=offset)
        head = p.next().text
        if head == "carrier":
            name = p.next().text
            if name not in sig.base_sorts:
                raise ParseError(f"carrier for unknown base sort {name}", offset + 1, 1)
            p.expect("=")
            p.expect("{")
            gens = []
            while not p.at("}"):
                gens.append(p.element())
                if p.at(","):
                    p.next()
            p.expect("}")
            closure = Closure.FINITE
            if p.at("closure"):
                p.next()
                closure = Closure(p.next().text)
            carriers[name] = Carrier(tuple(gens), closure)
        elif head == "former":
            name = p.next().text
            if name not in sig.formers:
                raise ParseError(f"undeclared former {name}", offset + 1, 1)
            p.expect("=")
            fn = p.equiv_fn()
            if isinstance(fn, EqTable):
                validate_table(fn, frozenset())
            formers[name] = fn
        elif head == "const":
            name = p.next().text
            if name not in sig.constants:
                raise ParseError(f"undeclared constant {name}", offset + 1, 1)
            p.expect("=")
            consts[name] = p.element()
        elif head == "pred":
            name = p.next().text
            p.expect("=")
            kind = p.next().text
            if kind == "fresh":
                preds[name] = PredFresh()
            elif kind == "equal":
                preds[name] = PredEqual()
            elif kind == "table":
                p.expect("{")
                gens = []
                while not p.at("}"):
                    gens.append(p.element())
                    if p.at(","):
                        p.next()
                p.expect("}")
                closure = Closure.FINITE
                if p.at("closure"):
                    p.next()
                    closure = Closure(p.next().text)
                preds[name] = PredTable(tuple(gens), closure)
            else:
                raise ParseError(f"unknown predicate kind {kind}", offset + 1, 1)
        elif head == "quantbasis":
            sort = p.sort(sig)
            p.expect("=")
            p.expect("{")
            gens = []
            while not p.at("}"):
                gens.append(p.element())
                if p.at(","):
                    p.next()
            p.expect("}")
            basis[sort] = tuple(gens)
        else:
            raise ParseError(f"unknown model line {head!r}", offset + 1, 1)
        if not p.done():
            tok = p.peek()
            raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)

    interp = Interpretation(sig, carriers, formers, consts)
    default_basis = {
        SortBase(name): car.generators for name, car in carriers.items()
    }
    default_basis.update(basis)
    return PNLInterpretation(interp, preds, default_basis)

