from fractions import Fraction
from itertools import permutations

import pytest

from posslog import (
    DomainError,
    InconsistentBaseError,
    Ordering,
    ParentSet,
    WeightedBase,
    check_normalization,
    compile_network,
    conditional_possibility,
    cpt_for,
    distribution_of_base,
    hidden_parent_closure,
    immediate_parents,
    network_distribution,
    verify_compilation,
)
from posslog.compiler import StageSummary

from helpers import (
    A1,
    A2,
    A3,
    SE,
    SU,
    WI,
    X,
    Y,
    clause,
    neg,
    pos,
)

F = Fraction


class TestImmediateParents:
    def test_weather_first_node(self, weather):
        assert immediate_parents(weather, SE) == frozenset({WI, SU})

    def test_weather_second_stage(self):
        b = WeightedBase(
            [(clause(pos(SU)), F(1, 3)), (clause(pos(SU), neg(WI)), F(2, 3))],
            (SU, WI),
        )
        assert immediate_parents(b, WI) == frozenset({SU})

    def test_absent_variable(self, weather):
        extended = WeightedBase(weather.entries, weather.variables + (X,))
        assert immediate_parents(extended, X) == frozenset()


class TestHiddenParentClosure:
    def test_conflict_source_becomes_parent(self, support):
        seed = immediate_parents(support, A1)
        assert seed == frozenset({A2})
        assert hidden_parent_closure(support, A1, seed) == frozenset({A2, A3})

    def test_weather_adds_nothing(self, weather):
        seed = immediate_parents(weather, SE)
        assert hidden_parent_closure(weather, SE, seed) == frozenset({WI, SU})

    def test_isolated_variable(self, weather):
        extended = WeightedBase(weather.entries, weather.variables + (X,))
        assert hidden_parent_closure(extended, X, frozenset()) == frozenset()

    def test_weak_side_clause_still_matters(self):
        # a unit below the support level rescales the conditional of the
        # unsupported value, so its variable must become a parent
        b = WeightedBase(
            [(clause(pos(A1)), F(2, 5)), (clause(pos(A3)), F(1, 5))], (A1, A3)
        )
        assert hidden_parent_closure(b, A1, immediate_parents(b, A1)) == frozenset(
            {A3}
        )


class TestConditionalPossibility:
    def test_weather_golden(self, weather):
        assert conditional_possibility(weather, neg(SE), [pos(WI), pos(SU)]) == F(2, 3)

    def test_support_context(self, support):
        assert conditional_possibility(support, neg(A1), [neg(A2)]) == F(3, 5)

    def test_conflicting_context(self, support):
        assert conditional_possibility(support, neg(A1), [neg(A2), neg(A3)]) == 1

    def test_impossible_context_convention(self):
        b = WeightedBase([(clause(pos(X)), F(1))], (X, Y))
        assert conditional_possibility(b, pos(Y), [neg(X)]) == 1
        assert conditional_possibility(b, neg(Y), [neg(X)]) == 1


class TestCptFor:
    def test_prior_table(self):
        b = WeightedBase([(clause(pos(SU)), F(1, 3))], (SU,))
        cpt = cpt_for(b, SU, ())
        assert cpt.cell((), True) == 1
        assert cpt.cell((), False) == F(2, 3)

    def test_one_parent_table(self):
        b = WeightedBase(
            [(clause(pos(SU)), F(1, 3)), (clause(pos(SU), neg(WI)), F(2, 3))],
            (SU, WI),
        )
        cpt = cpt_for(b, WI, (SU,))
        assert cpt.cell((False,), True) == F(1, 2)
        assert cpt.cell((True,), True) == 1
        assert cpt.cell((False,), False) == 1
        assert cpt.cell((True,), False) == 1

    def test_two_parent_table(self, weather):
        cpt = cpt_for(weather, SE, (WI, SU))
        expected_pos = {(False, True): F(2, 3)}
        expected_neg = {(True, True): F(2, 3)}
        for assignment, negative, positive in cpt.columns():
            assert positive == expected_pos.get(assignment, F(1))
            assert negative == expected_neg.get(assignment, F(1))


class TestCompileNetwork:
    def test_weather_network_golden(self, weather):
        net = compile_network(weather, (SE, WI, SU))
        se_node, wi_node, su_node = net.nodes
        assert se_node.parents == (WI, SU)
        assert wi_node.parents == (SU,)
        assert su_node.parents == ()
        assert su_node.cell((), True) == 1
        assert su_node.cell((), False) == F(2, 3)
        assert wi_node.cell((False,), True) == F(1, 2)
        assert se_node.cell((False, True), True) == F(2, 3)
        assert se_node.cell((True, True), False) == F(2, 3)
        from posslog import distributions_equal

        assert distributions_equal(
            network_distribution(net), distribution_of_base(weather)
        )

    def test_empty_base_compiles_to_all_ones(self):
        b = WeightedBase((), (X, Y))
        net = compile_network(b, (X, Y))
        for cpt in net.nodes:
            assert cpt.parents == ()
            assert cpt.cell((), True) == 1
            assert cpt.cell((), False) == 1

    def test_rejects_inconsistent_base(self):
        b = WeightedBase([(clause(pos(X)), F(1)), (clause(neg(X)), F(1))], (X,))
        with pytest.raises(InconsistentBaseError) as err:
            compile_network(b, (X,))
        assert err.value.degree == 1

    def test_every_ordering_of_a_small_base(self, support):
        for order in permutations(support.variables):
            net = compile_network(support, order)
            assert verify_compilation(support, net).ok
            assert check_normalization(net) == ()

    def test_stage_callback(self, weather):
        stages = []
        compile_network(weather, (SE, WI, SU), on_stage=stages.append)
        assert [s.parent_set.var for s in stages] == [SE, WI, SU]
        assert all(isinstance(s, StageSummary) for s in stages)
        assert stages[0].parent_set.parents == frozenset({WI, SU})

    def test_formula_entries_are_clausalized_first(self):
        from posslog import And

        b = WeightedBase([(And((pos(X), pos(Y))), F(1, 2))], (X, Y))
        net = compile_network(b, (X, Y))
        assert verify_compilation(b, net).ok


class TestOrdering:
    def test_must_cover_base_exactly(self, weather):
        with pytest.raises(DomainError):
            compile_network(weather, (SE, WI))
        with pytest.raises(DomainError):
            compile_network(weather, (SE, WI, SU, X))

    def test_no_repeats(self):
        with pytest.raises(DomainError):
            Ordering((X, X))

    def test_position(self):
        order = Ordering((SE, WI, SU))
        assert order.position(WI) == 1
        with pytest.raises(DomainError):
            order.position(X)


class TestParentSet:
    def test_self_parent_rejected(self):
        with pytest.raises(DomainError):
            ParentSet(X, {X})

    def test_holds_a_frozenset(self):
        ps = ParentSet(X, [Y])
        assert ps.parents == frozenset({Y})
