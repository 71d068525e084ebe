"""Tests for evaluation: metatruth, validity, and the classical special case."""

import itertools

import pytest
from hypothesis import given

from helpers import cirquents, rand_classical
from ifp import (
    And,
    Literal,
    MissingAtomError,
    MissingClusterError,
    NotClassicalError,
    Or,
    TooLargeError,
    TruthTable,
    classical_countermodel,
    classical_tautology,
    clusters,
    compile_classical,
    countermodel,
    ensure_within_bounds,
    eval_classical,
    interpretations,
    metaselections,
    metatrue,
    parse,
    print_cirquent,
    true_under,
    truth_table,
    valid,
    witness_metaselection,
)

import random

P = Literal("p")
Q = Literal("q")


class TestMetatrue:
    def test_one_choice_per_cluster(self, x_pair):
        # Both disjunctions sit in cluster 1, so one side serves both.
        assert metatrue(x_pair, {"p": True, "q": False}, {1: "left"}) is False
        assert metatrue(x_pair, {"p": True, "q": False}, {1: "right"}) is False

    def test_independent_clusters_choose_separately(self):
        c = parse("(p|1 q)&(~p|2 ~q)")
        assert metatrue(c, {"p": True, "q": False}, {1: "left", 2: "right"})

    def test_extra_keys_are_ignored(self):
        assert metatrue(P, {"p": True, "q": False}, {9: "left"})

    def test_missing_atom(self):
        with pytest.raises(MissingAtomError):
            metatrue(And(P, Q), {"p": True}, {})

    def test_missing_cluster(self):
        with pytest.raises(MissingClusterError):
            metatrue(Or(1, P, Q), {"p": True, "q": True}, {2: "left"})

    def test_enumeration_is_lexicographic(self):
        assert list(interpretations(["q", "p"]))[:2] == [
            {"p": False, "q": False},
            {"p": False, "q": True},
        ]
        assert list(metaselections([2, 1]))[:2] == [
            {1: "left", 2: "left"},
            {1: "left", 2: "right"},
        ]

    def test_true_under_and_witness(self, e4):
        i = {"p": False, "q": True, "r": True, "s": True}
        assert true_under(e4, i)
        f = witness_metaselection(e4, i)
        assert f == {1: "right"}
        assert metatrue(e4, i, f)

    def test_witness_is_none_when_false(self, x_pair):
        assert witness_metaselection(x_pair, {"p": True, "q": True}) is None


class TestValidity:
    def test_shared_cluster_fixture_is_never_true(self, x_pair):
        for i in interpretations(["p", "q"]):
            assert not true_under(x_pair, i)

    def test_singleton_variant_is_true_exactly_on_disagreement(self, x_free):
        for i in interpretations(["p", "q"]):
            assert true_under(x_free, i) == (i["p"] != i["q"])

    def test_valid_fixtures(self, goal, e1, x_pair, e4):
        assert valid(goal)
        assert valid(e1)
        assert not valid(x_pair)
        assert not valid(e4)

    def test_countermodel_is_the_first_falsifier(self, x_pair, e4):
        assert countermodel(x_pair) == {"p": False, "q": False}
        assert countermodel(e4) == {"p": False, "q": False, "r": False, "s": False}

    def test_countermodel_of_a_valid_cirquent_is_none(self, e1):
        assert countermodel(e1) is None


class TestBounds:
    def test_too_many_atoms(self):
        wide = parse("&".join(f"a{i}" for i in range(21)))
        with pytest.raises(TooLargeError):
            ensure_within_bounds(wide)
        with pytest.raises(TooLargeError):
            valid(wide)

    def test_too_many_clusters(self):
        crowded = parse("|".join("p" for _ in range(22)))
        with pytest.raises(TooLargeError):
            ensure_within_bounds(crowded)

    def test_overrides(self):
        c = parse("p&q&r")
        with pytest.raises(TooLargeError):
            ensure_within_bounds(c, 2, None)
        ensure_within_bounds(c, 3, 0)


class TestClassical:
    def test_tautology(self, a0):
        assert classical_tautology(a0)
        assert not classical_tautology(parse("p|q"))

    def test_classical_countermodel(self):
        assert classical_countermodel(parse("p|q")) == {"p": False, "q": False}
        assert classical_countermodel(parse("p|~p")) is None

    def test_clustered_input_is_rejected(self, x_pair):
        with pytest.raises(NotClassicalError):
            classical_tautology(x_pair)
        with pytest.raises(NotClassicalError):
            classical_countermodel(x_pair)

    def test_plain_evaluation_agrees_on_classical_cirquents(self):
        rng = random.Random(7)
        for _ in range(25):
            classical = rand_classical(rng, 5)
            for i in interpretations("pqrs"):
                assert eval_classical(classical, i) == true_under(classical, i)

    def test_eval_classical_missing_atom(self):
        with pytest.raises(MissingAtomError):
            eval_classical(P, {})


class TestTruthTables:
    def test_rows_cover_every_assignment(self, x_pair):
        table = truth_table(x_pair)
        assert table.atoms == ("p", "q")
        assert table.rows == {
            (False, False): False,
            (False, True): False,
            (True, False): False,
            (True, True): False,
        }

    def test_row_count_is_enforced(self):
        with pytest.raises(ValueError):
            TruthTable(("p",), {(False,): True})

    def test_compile_exclusive_or(self):
        table = truth_table(parse("(p|q)&(~p|~q)"))
        compiled = compile_classical(table)
        assert print_cirquent(compiled) == "(~p&q)|(p&~q)"

    def test_compile_unsatisfiable(self, x_pair):
        assert compile_classical(truth_table(x_pair)) is None

    def test_compile_preserves_the_table(self, goal):
        table = truth_table(goal)
        compiled = compile_classical(table)
        assert truth_table(compiled) == table

    def test_compiled_ids_are_canonical_singletons(self):
        compiled = compile_classical(truth_table(parse("p|q")))
        recompiled = compile_classical(truth_table(compiled))
        assert compiled == recompiled


class TestTruthAgainstBruteForce:
    @given(cirquents(max_leaves=5))
    def test_true_under_is_an_existential_over_metaselections(self, c):
        i = dict.fromkeys("pqr", True)
        expected = any(metatrue(c, i, f) for f in metaselections(clusters(c)))
        assert true_under(c, i) == expected
