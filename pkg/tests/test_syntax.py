"""Parser/printer round trips and file formats."""

import pytest
from hypothesis import given, strategies as st

from nomkit.errors import ParseError
from nomkit.atoms import down, up
from nomkit.syntax import (
    parse_atom,
    parse_element,
    parse_perm,
    parse_prop,
    parse_region,
    parse_model,
    parse_signature,
    parse_term,
    parse_theory,
    show_atom,
    show_element,
    show_perm,
    show_prop,
    show_region,
    show_term,
)
from nomkit.terms import SortBase, SortName, SortTuple
from nomkit.universe import elem_eq

from helpers import rand_element, rand_genperm, rand_formula, rand_term_any, MODEL_SIG, PNL_SIG

atoms = st.builds(lambda s, z, i: down(s, i) if z else up(s, i),
                  st.integers(0, 3), st.booleans(), st.integers(0, 40))


class TestRoundTrips:
    @given(atoms)
    def test_atoms(self, a):
        assert parse_atom(show_atom(a)) == a

    def test_letter_aliases(self):
        assert parse_atom("a") == down(0, 0)
        assert parse_atom("z") == down(0, 25)

    def test_perm_examples(self):
        for text in ["id", "(d0.0 d0.1)", "(d0.0 d0.1)(d0.4 u0.2)",
                     "shift^2", "shift^-1 * (d0.0 u0.1)"]:
            assert show_perm(parse_perm(text)) == text

    def test_noncanonical_cycle_reparses_to_same_value(self):
        assert parse_perm("(u0.2 d0.4)") == parse_perm("(d0.4 u0.2)")

    def test_perm_random(self, rng):
        for _ in range(100):
            p = rand_genperm(rng)
            assert parse_perm(show_perm(p)) == p

    def test_region_examples(self):
        for text in ["comb", "halfcomb", "oddcomb", "{}", "{d0.0, u0.1}",
                     "comb - {d0.0} + {u0.1}", "halfcomb - {d0.2} + {d0.3}"]:
            assert show_region(parse_region(text)) == text

    def test_element_random(self, rng):
        for _ in range(150):
            x = rand_element(rng, depth=3, allow_fuzzy=True)
            text = show_element(x)
            assert elem_eq(parse_element(text), x), text

    def test_term_random(self, rng):
        for _ in range(150):
            r = rand_term_any(rng)
            text = show_term(r)
            assert parse_term(text, MODEL_SIG) == r, text

    def test_prop_random(self, rng):
        for _ in range(100):
            phi = rand_formula(rng)
            text = show_prop(phi)
            assert parse_prop(text, PNL_SIG) == phi, text


class TestParseErrors:
    def test_fuzzed_input_never_crashes(self, rng):
        import string

        from nomkit.syntax import parse_perm, parse_element, parse_term, parse_prop, parse_region

        alphabet = list(string.ascii_lowercase[:8]) + [
            "d0.0", "u0.1", "(", ")", "[", "]", "{", "}", ",", "*", "->",
            "shift", "^", "1", "-2", "comb", "pset", "unit", "fuzzy", "atm",
            "list", "full", "/", "supp", "=", "forall", ".", "bot", "fresh", "X",
        ]
        for _ in range(800):
            text = " ".join(rng.choice(alphabet) for _ in range(rng.randrange(1, 10)))
            for fn in (parse_perm, parse_element, parse_term, parse_prop, parse_region):
                try:
                    fn(text)
                except ParseError:
                    pass

    def test_positions_reported(self):
        with pytest.raises(ParseError) as info:
            parse_perm("(d0.0 !")
        assert "col" in str(info.value)

    def test_trailing_input(self):
        with pytest.raises(ParseError, match="trailing"):
            parse_atom("d0.0 d0.1")

    def test_cross_sort_cycle(self):
        with pytest.raises(ParseError):
            parse_perm("(d0.0 d1.0)")

    def test_undeclared_name(self):
        with pytest.raises(ParseError, match="undeclared"):
            parse_term("nosuch(d0.0)", MODEL_SIG)


class TestSignatureFiles:
    def test_full_signature(self):
        text = """
        # comments survive
        namesort nu
        basesort tau
        const O : tau pmss {}
        const C : tau pmss comb
        unknown X : tau
        unknown Y : nu
        unknown V : (nu, tau)
        unknown U : [nu]tau
        former f : (nu)tau
        former g : (nu, tau)tau
        pred P : (nu, tau)
        mode extended
        group shift
        """
        sig, axioms = parse_signature(text)
        assert sig.name_sorts == ("nu",)
        assert sig.mode == "extended" and sig.perm_group == "shift"
        assert sig.unknowns["V"] == SortTuple((SortName(0), SortBase("tau")))
        assert sig.formers["g"][0] == SortTuple((SortName(0), SortBase("tau")))
        assert axioms == []

    def test_theory_axioms(self):
        text = """
        basesort tau
        const O : tau pmss {}
        unknown X : tau
        axiom X = O
        axiom O = O
        """
        theory = parse_theory(text)
        assert len(theory.axioms) == 2

    def test_bad_declaration(self):
        with pytest.raises(ParseError, match="unknown declaration"):
            parse_signature("frobnicate foo")


class TestModelFiles:
    def test_model_lines(self):
        sig, _ = parse_signature(
            """
            namesort nu
            basesort tau
            const O : tau pmss {}
            unknown X : tau
            former f : (nu)tau
            pred P : tau
            """
        )
        model = parse_model(
            """
            carrier tau = { unit zero, pset comb } closure finite
            former f = const unit zero
            const O = unit zero
            pred P = table { unit zero }
            quantbasis tau = { unit zero }
            """,
            sig,
        )
        assert len(model.base.carrier("tau").generators) == 2
        assert "P" in model.preds
        assert model.quant_basis[SortBase("tau")] == (parse_element("unit zero"),)

    def test_undeclared_const_rejected(self):
        sig, _ = parse_signature("basesort tau")
        with pytest.raises(ParseError, match="undeclared constant"):
            parse_model("const O = unit zero", sig)
