"""Command-line front end.

Exit codes: 0 success or valid/true, 1 counterwitness or false, 2 usage or
parse error, 3 semantic error (representability, regime violation, sorts).
Every command prints a human-readable report followed by a machine-readable
block of key=value lines.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import NomkitError, ParseError
from .lists import ListMode, base_list
from .perms import restrict
from .pnl import EvalConfig, SupportRegime, check_conformance, eval_prop, typecheck_prop
from .semantics import Theory, Valuation, check_theory, denote, reduce_support
from .syntax import (
    parse_element,
    parse_model,
    parse_perm,
    parse_prop,
    parse_region,
    parse_signature,
    parse_term,
    parse_theory,
    show_element,
    show_perm,
    show_region,
    show_term,
    tokenize,
)
from .terms import alpha_eq, assert_group_ok
from .universe import support
from .demos import DEMOS


def _machine(pairs: dict[str, str]) -> None:
    for key in pairs:
        print(f"{key}={pairs[key]}")


def _load_signature(path: str):
    return parse_signature(Path(path).read_text())[0]


def _pool_atoms(sig, n: int):
    from .atoms import Atom, Zone

    sorts = range(max(1, len(sig.name_sorts)))
    return frozenset(Atom(s, Zone.DOWN, i) for s in sorts for i in range(n))


def _uses_letter_atoms(text: str) -> bool:
    return any(
        tok.kind == "name" and len(tok.text) == 1 and "a" <= tok.text <= "z"
        for tok in tokenize(text)
    )


def cmd_perm_restrict(args) -> int:
    region_text = getattr(args, "in")
    letters = _uses_letter_atoms(args.perm) or _uses_letter_atoms(region_text)
    p = parse_perm(args.perm)
    region = parse_region(region_text)
    if p.shift != 0:
        raise NomkitError("restriction is defined for finite permutations only")
    result = restrict(p.fin, region)
    print(f"restriction of {show_perm(p, letters)} to {show_region(region, letters)}:")
    print(f"  {show_perm(result, letters)}")
    _machine({"result": show_perm(result)})
    return 0


def cmd_alpha_eq(args) -> int:
    sig = _load_signature(args.sig) if args.sig else None
    r = parse_term(args.left, sig)
    s = parse_term(args.right, sig)
    same = alpha_eq(sig, r, s)
    print(f"{show_term(r)}  and  {show_term(s)}: " + ("alpha-equal" if same else "different"))
    _machine({"result": str(same).lower()})
    return 0 if same else 1


def cmd_support(args) -> int:
    x = parse_element(args.element)
    d = support(x)
    print(f"support of {show_element(x)}:")
    print(f"  {show_region(d)}")
    _machine({"support": show_region(d), "finite": str(d.is_finite()).lower()})
    return 0


def cmd_denote(args) -> int:
    sig = _load_signature(args.theory)
    model = parse_model(Path(args.model).read_text(), sig).base
    if args.list:
        model = reduce_support(model, base_list(ListMode(args.list)))
    term = parse_term(args.term, sig)
    assignments = {}
    for pair in args.val or []:
        name, text = pair.split("=", 1)
        assignments[name] = parse_element(text)
    value = denote(model, Valuation.of(assignments), term)
    d = support(value)
    print(f"denotation of {show_term(term)}:")
    print(f"  {show_element(value)}")
    print(f"  support: {show_region(d)}")
    _machine({"element": show_element(value), "support": show_region(d)})
    return 0


def cmd_check_theory(args) -> int:
    theory = parse_theory(Path(args.theory).read_text())
    sig = theory.signature
    if args.mode or args.group:
        from dataclasses import replace

        sig = replace(
            sig,
            mode=args.mode or sig.mode,
            perm_group=args.group or sig.perm_group,
        )
        theory = Theory(sig, theory.axioms)
    for r, s in theory.axioms:
        assert_group_ok(sig, r)
        assert_group_ok(sig, s)
    model = parse_model(Path(args.model).read_text(), sig).base
    pool = _pool_atoms(sig, args.pool)
    results = check_theory(model, theory, pool, cap=args.family_cap)
    all_valid = True
    machine = {}
    for i, ((r, s), verdict) in enumerate(results):
        print(f"axiom {show_term(r)} = {show_term(s)}: {verdict}")
        machine[f"axiom.{i}"] = "valid" if verdict.valid else "counterwitness"
        if not verdict.valid:
            machine[f"axiom.{i}.witness"] = str(verdict.witness)
            all_valid = False
    machine["result"] = "valid" if all_valid else "counterwitness"
    _machine(machine)
    return 0 if all_valid else 1


def cmd_reduce_support(args) -> int:
    sig = _load_signature(args.theory)
    model = parse_model(Path(args.model).read_text(), sig).base
    mode = ListMode(args.list)
    reduced = reduce_support(model, base_list(mode))
    machine = {}
    ok = True
    for name in sig.base_sorts:
        try:
            car = reduced.carrier(name)
        except NomkitError:
            continue
        for i, g in enumerate(car.generators):
            d = support(g)
            finite = d.is_finite()
            ok = ok and finite
            print(f"carrier {name} generator {i}: support {show_region(d)}")
            machine[f"{name}.{i}.support"] = show_region(d)
            machine[f"{name}.{i}.finite"] = str(finite).lower()
    machine["all_finite"] = str(ok).lower()
    _machine(machine)
    return 0


def cmd_pnl_eval(args) -> int:
    sig = _load_signature(args.theory)
    pnl_model = parse_model(Path(args.model).read_text(), sig)
    regime = SupportRegime(args.regime)
    check_conformance(pnl_model, regime)
    phi = parse_prop(args.formula, sig)
    typecheck_prop(sig, phi)
    config = EvalConfig(pool=_pool_atoms(sig, args.pool), cap=args.family_cap)
    names = sorted(args.val or [])
    assignments = {}
    for pair in names:
        name, text = pair.split("=", 1)
        assignments[name] = parse_element(text)
    value = eval_prop(pnl_model, Valuation.of(assignments), phi, config)
    print(f"[{regime.value} regime] {args.formula}: {str(value).lower()}")
    _machine({"result": str(value).lower(), "regime": regime.value})
    return 0 if value else 1


def cmd_demo(args) -> int:
    if args.name not in DEMOS:
        print(f"unknown demo {args.name}; available: {', '.join(sorted(DEMOS))}")
        return 2
    ok, lines, machine = DEMOS[args.name]()
    print(f"demo {args.name}:")
    for line in lines:
        print(f"  {line}")
    _machine(machine)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="nomkit")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("perm-restrict", help="least permutation agreeing on a region")
    p.add_argument("perm")
    p.add_argument("--in", required=True, help="atom region, e.g. {a} or comb")
    p.set_defaults(run=cmd_perm_restrict)

    p = sub.add_parser("alpha-eq", help="decide alpha-equivalence of two terms")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--sig", help="signature file (optional)")
    p.set_defaults(run=cmd_alpha_eq)

    p = sub.add_parser("support", help="support of an element")
    p.add_argument("element")
    p.set_defaults(run=cmd_support)

    p = sub.add_parser("denote", help="denote a term in a model")
    p.add_argument("theory", help="signature or theory file")
    p.add_argument("model")
    p.add_argument("term")
    p.add_argument("--val", action="append", help="X=<element>")
    p.add_argument("--list", choices=["full", "half"], help="reduce support first")
    p.set_defaults(run=cmd_denote)

    p = sub.add_parser("check-theory", help="check every axiom over a valuation family")
    p.add_argument("theory")
    p.add_argument("model")
    p.add_argument("--pool", type=int, default=3)
    p.add_argument("--family-cap", type=int, default=4000)
    p.add_argument("--mode", choices=["strict", "extended"])
    p.add_argument("--group", choices=["finite", "shift"])
    p.set_defaults(run=cmd_check_theory)

    p = sub.add_parser("reduce-support", help="wrap a model and report its supports")
    p.add_argument("theory")
    p.add_argument("model")
    p.add_argument("--list", choices=["full", "half"], default="full")
    p.set_defaults(run=cmd_reduce_support)

    p = sub.add_parser("pnl-eval", help="evaluate a formula in a model")
    p.add_argument("theory", help="signature or theory file")
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("--regime", choices=["full", "medium", "finite"], required=True)
    p.add_argument("--pool", type=int, default=2)
    p.add_argument("--family-cap", type=int, default=4000)
    p.add_argument("--val", action="append", help="X=<element>")
    p.set_defaults(run=cmd_pnl_eval)

    p = sub.add_parser("demo", help="run a named demonstration")
    p.add_argument("name")
    p.set_defaults(run=cmd_demo)

    return top


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except NomkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))
