"""Named demonstrations built from the data files shipped with the package.

Each demo returns (ok, report lines, machine key/value pairs); the CLI turns
the machine pairs into the key=value block test harnesses read.
"""

from __future__ import annotations

from importlib import resources

from .atoms import down, up
from .errors import UnrepresentableError
from .lists import AtomList, ListMode, base_list, base_position
from .perms import FIN_ID, GenPerm
from .regions import finite_set
from .semantics import (
    Valuation,
    check_equation,
    check_theory,
    reduce_support,
    valuation_family,
    valuation_supports_ok,
)
from .pnl import SupportRegime, check_validity
from .syntax import parse_model, parse_prop, parse_signature, parse_theory, show_element
from .terms import TermUnk, const, explicit_atoms, unk
from .universe import Fuzzy, PSetElem, elem_eq, listabs, support


def _data(name: str) -> str:
    return resources.files("nomkit.data").joinpath(name).read_text()


def demo_prop6() -> tuple[bool, list[str], dict[str, str]]:
    """Three support regimes disagree on: every value has a fresh atom."""
    sig, _ = parse_signature(_data("prop6.sig"))
    phi = parse_prop("forall X. exists Y. fresh(Y, X)", sig)
    models = [
        (parse_model(_data("prop6_full.model"), sig), SupportRegime.FULL),
        (parse_model(_data("prop6_medium.model"), sig), SupportRegime.MEDIUM),
        (parse_model(_data("prop6_finite.model"), sig), SupportRegime.FINITE),
    ]
    results = {}
    for regime in (SupportRegime.FULL, SupportRegime.MEDIUM, SupportRegime.FINITE):
        results[regime.value] = check_validity(models, phi, regime).valid
    ok = results == {"full": False, "medium": True, "finite": True}
    lines = ["formula: forall X. exists Y. fresh(Y, X)"]
    for regime, value in results.items():
        lines.append(f"  {regime:7} regime: {'valid' if value else 'counterwitness found'}")
    machine = {f"regime.{k}": str(v).lower() for k, v in results.items()}
    machine["expected"] = "full=false medium=true finite=true"
    machine["ok"] = str(ok).lower()
    return ok, lines, machine


def demo_prop7() -> tuple[bool, list[str], dict[str, str]]:
    """Fuzzy support: finite swaps fix every value, the shift moves them all."""
    theory = parse_theory(_data("prop7.thy"))
    sig = theory.signature
    model = parse_model(_data("prop7.model"), sig).base
    family = [Valuation.of({"X": Fuzzy(i)}) for i in (0, 1, -1, 2, -2)]
    axiom = theory.axioms[0]
    ax_verdict = check_equation(model, *axiom, family)
    shifted = TermUnk(GenPerm(FIN_ID, 1), "X")
    refuted = check_equation(model, shifted, unk("X"), family)
    try:
        explicit_atoms(sig, shifted)
        atoms_error = ""
    except UnrepresentableError as exc:
        atoms_error = str(exc)
    ok = (
        ax_verdict.valid
        and not refuted.valid
        and elem_eq(refuted.witness.get("X"), Fuzzy(0))
        and "infinite under shift" in atoms_error
    )
    lines = [
        "axiom (d0.0 u0.1) * X = X over the fuzzy carrier: "
        + ("valid" if ax_verdict.valid else "refuted"),
        f"shift^1 * X = X: refuted with X := {show_element(refuted.witness.get('X'))}"
        if not refuted.valid
        else "shift^1 * X = X: unexpectedly valid",
        f"atoms(shift^1 * X) raises: {atoms_error}",
    ]
    machine = {
        "axiom.valid": str(ax_verdict.valid).lower(),
        "shifted.valid": str(refuted.valid).lower(),
        "shifted.witness": show_element(refuted.witness.get("X")) if refuted.witness else "",
        "atoms.error": atoms_error,
        "ok": str(ok).lower(),
    }
    return ok, lines, machine


def demo_prop8() -> tuple[bool, list[str], dict[str, str]]:
    """Extended permission sets break the finite-support transfer."""
    lines: list[str] = []
    machine: dict[str, str] = {}
    a, bu = down(0, 0), up(0, 1)
    pool = frozenset({a, down(0, 1)})

    # (a) strict companion: reduction preserves validity
    strict = parse_theory(_data("prop8_strict.thy"))
    strict_model = parse_model(_data("prop8_strict.model"), strict.signature).base
    plain = check_theory(strict_model, strict, pool)
    reduced_model = reduce_support(strict_model, base_list(ListMode.FULL))
    reduced = check_theory(reduced_model, strict, pool)
    preserved = all(v.valid for _, v in plain) and all(v.valid for _, v in reduced)
    lines.append(f"strict theory: plain and reduced validity both hold: {preserved}")
    machine["strict.preserved"] = str(preserved).lower()

    # (b) the extended-mode theory
    theory = parse_theory(_data("prop8.thy"))
    sig = theory.signature
    model = parse_model(_data("prop8.model"), sig).base
    big = next(g for g in model.carrier("tau").generators if isinstance(g, PSetElem))
    not_strict = not big.pset.is_strict()
    machine["pset.strict"] = str(not not_strict).lower()
    lines.append(f"comb + {{u0.1}} lies outside the strict family: {not_strict}")

    fam_strict = valuation_family(model, ["X"], pool, mode="strict")
    ax = check_equation(model, unk("X"), const("O"), fam_strict)
    lines.append(
        f"axiom X = O over comb-supported valuations: "
        + ("valid" if ax.valid else "refuted")
    )
    machine["axiom.valid"] = str(ax.valid).lower()

    fam_ext = valuation_family(model, ["Z"], pool, mode="extended")
    vz = check_equation(model, unk("Z"), const("O"), fam_ext)
    witness = show_element(vz.witness.get("Z")) if vz.witness else ""
    lines.append(f"Z = O refuted with Z := {witness}" if not vz.valid else "Z = O valid?!")
    machine["z.valid"] = str(vz.valid).lower()
    machine["z.witness"] = witness

    # (c) the reduced model refutes the axiom through a legal valuation
    index = base_list(ListMode.FULL)
    reduced8 = reduce_support(model, index)
    lprime = AtomList(ListMode.FULL, ((base_position(ListMode.FULL, a), bu),))
    wrapped_value = listabs(lprime, big)
    val = Valuation.of({"X": wrapped_value})
    legal = valuation_supports_ok(val, "strict") and support(wrapped_value) == finite_set([a])
    vred = check_equation(reduced8, unk("X"), const("O"), [val])
    lines.append(
        f"reduced model: X := [{lprime}]{show_element(big)} has support {support(wrapped_value)}"
    )
    lines.append(
        "  accepted as a comb-supported valuation and refutes X = O: "
        + str(legal and not vred.valid)
    )
    machine["reduced.legal"] = str(legal).lower()
    machine["reduced.refutes"] = str(not vred.valid).lower()

    ok = preserved and not_strict and ax.valid and not vz.valid and legal and not vred.valid
    machine["ok"] = str(ok).lower()
    return ok, lines, machine


DEMOS = {
    "prop-6-counterexample": demo_prop6,
    "prop-7-fuzzy": demo_prop7,
    "prop-8-zero": demo_prop8,
}
