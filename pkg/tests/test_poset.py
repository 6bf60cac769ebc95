"""Order ideals, order-preserving maps, chain products, and the
state-to-ideal correspondence."""

import random
from itertools import product

import pytest

from maxlin.dag import Dag, transitive_closure
from maxlin.errors import BadStateError, NotAStateError
from maxlin.poset import (
    Poset,
    antichain,
    chain,
    chain_product,
    ideal_lattice,
    ideal_members,
    incomparable_pairs,
    is_order_ideal,
    lattice_meet_join,
    order_ideals,
    order_preserving_maps,
    state_leq,
    state_to_ideal,
)

from conftest import brute_force_ideals, brute_force_states, catalog_dags, random_dag


def digits(states):
    return ["".join(map(str, g)) for g in states]


class TestPosetType:
    def test_rejects_missing_reflexivity(self):
        with pytest.raises(ValueError):
            Poset((1, 2), frozenset({(1, 1)}))

    def test_rejects_antisymmetry_violation(self):
        with pytest.raises(ValueError):
            Poset((1, 2), frozenset({(1, 1), (2, 2), (1, 2), (2, 1)}))

    def test_rejects_intransitivity(self):
        with pytest.raises(ValueError):
            Poset((1, 2, 3), frozenset({(1, 1), (2, 2), (3, 3), (1, 2), (2, 3)}))

    def test_covers_of_chain(self):
        assert chain(4).covers() == [(0, 1), (1, 2), (2, 3)]

    def test_dual(self):
        p = chain(3).dual()
        assert p.leq(2, 0) and not p.leq(0, 2)

    def test_json_emission(self, fig3_dag):
        closure = transitive_closure(fig3_dag)
        assert closure.to_json_dict() == {
            "elements": [1, 2, 3],
            "strict_relations": [[1, 2], [1, 3]],
        }
        prod = chain_product(closure, 2)
        data = prod.to_json_dict()
        assert data["elements"][0] == [1, 0]
        assert [[1, 0], [1, 1]] in data["strict_relations"]


class TestOrderIdeals:
    def test_fig1_golden(self, fig1_poset):
        assert digits(order_ideals(fig1_poset)) == [
            "00000", "01000", "10000", "11000",
            "11100", "11101", "11110", "11111",
        ]

    def test_antichain_all_subsets(self):
        assert len(order_ideals(antichain((1, 2)))) == 4

    def test_chain_prefixes(self):
        assert order_ideals(chain(3)) == [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)]

    def test_matches_brute_force_on_catalog(self):
        for _, dag in catalog_dags(2):
            poset = transitive_closure(dag)
            assert order_ideals(poset) == sorted(brute_force_ideals(poset))

    def test_ideal_members(self, fig1_poset):
        assert ideal_members(fig1_poset, (1, 1, 1, 0, 1)) == {1, 2, 3, 5}

    def test_is_order_ideal(self, fig1_poset):
        assert is_order_ideal(fig1_poset, (1, 1, 1, 0, 1))
        assert not is_order_ideal(fig1_poset, (0, 0, 1, 0, 0))
        with pytest.raises(BadStateError):
            is_order_ideal(fig1_poset, (0, 2, 0, 0, 0))


class TestOrderPreservingMaps:
    def test_fig2_golden(self, fig2_dag):
        lattice = order_preserving_maps(transitive_closure(fig2_dag), 2)
        assert digits(lattice.states) == [
            "00000", "00001", "00011", "00101", "00111",
            "01011", "01111", "10111", "11111",
        ]

    def test_fig3_count(self, fig3_dag):
        lattice = order_preserving_maps(transitive_closure(fig3_dag), 3)
        assert len(lattice) == 14

    def test_single_element(self):
        poset = transitive_closure(Dag(n=1, k=4))
        for k in (1, 2, 5):
            assert len(order_preserving_maps(poset, k)) == k

    def test_matches_brute_force_on_catalog(self):
        for k in (2, 3):
            for _, dag in catalog_dags(k):
                poset = transitive_closure(dag)
                assert list(order_preserving_maps(poset, k)) == sorted(
                    brute_force_states(poset, k)
                )

    def test_lattice_contains_bounds(self):
        for _, dag in catalog_dags(3):
            lattice = order_preserving_maps(transitive_closure(dag), 3)
            assert lattice.bottom == (0,) * dag.n
            assert lattice.top == (2,) * dag.n

    def test_meet_join_closure(self):
        for _, dag in catalog_dags(2):
            lattice = order_preserving_maps(transitive_closure(dag), 2)
            for g in lattice:
                for h in lattice:
                    meet, join = lattice_meet_join(g, h)
                    assert meet in lattice and join in lattice


class TestMeetJoin:
    def test_golden_pair(self):
        g, h = (0, 1, 1, 1, 1), (1, 0, 1, 1, 1)
        assert lattice_meet_join(g, h) == ((0, 0, 1, 1, 1), (1, 1, 1, 1, 1))

    def test_equal_states(self):
        g = (0, 1, 2)
        assert lattice_meet_join(g, g) == (g, g)

    def test_comparable_pair(self):
        g, h = (0, 0, 1), (0, 1, 1)
        assert lattice_meet_join(g, h) == (g, h)


class TestIncomparablePairs:
    def test_fig2_exactly_five(self, fig2_dag):
        lattice = order_preserving_maps(transitive_closure(fig2_dag), 2)
        pairs = incomparable_pairs(lattice)
        assert len(pairs) == 5
        assert {tuple(digits(p)) for p in pairs} == {
            ("00011", "00101"),
            ("00101", "01011"),
            ("00111", "01011"),
            ("01011", "10111"),
            ("01111", "10111"),
        }

    def test_fig1_ideals_two_pairs(self, fig1_poset):
        pairs = incomparable_pairs(ideal_lattice(fig1_poset))
        assert {tuple(digits(p)) for p in pairs} == {
            ("01000", "10000"),
            ("11101", "11110"),
        }

    def test_chain_has_none(self):
        assert incomparable_pairs(order_preserving_maps(chain(4), 2)) == []
        assert incomparable_pairs(order_preserving_maps(chain(1), 6)) == []

    def test_pairs_are_incomparable(self):
        rng = random.Random(2)
        for _ in range(20):
            dag = random_dag(rng, k=2)
            lattice = order_preserving_maps(transitive_closure(dag), 2)
            for g, h in incomparable_pairs(lattice):
                assert not state_leq(g, h) and not state_leq(h, g)


class TestChainProduct:
    def test_fig3_product_poset(self, fig3_dag):
        closure = transitive_closure(fig3_dag)
        prod = chain_product(closure, 2)
        assert prod.elements == ((1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1))
        assert set(prod.covers()) == {
            ((1, 0), (1, 1)),
            ((1, 0), (2, 0)),
            ((1, 0), (3, 0)),
            ((1, 1), (2, 1)),
            ((1, 1), (3, 1)),
            ((2, 0), (2, 1)),
            ((3, 0), (3, 1)),
        }

    def test_product_with_single_chain_is_isomorphic(self, fig1_poset):
        prod = chain_product(fig1_poset, 1)
        assert [e for e, _ in prod.elements] == list(fig1_poset.elements)
        for a, r in prod.elements:
            for b, s in prod.elements:
                assert prod.leq((a, r), (b, s)) == fig1_poset.leq(a, b)

    def test_antichain_times_chain(self):
        prod = chain_product(antichain((1, 2)), 2)
        assert set(prod.strict_pairs()) == {((1, 0), (1, 1)), ((2, 0), (2, 1))}

    def test_empty_chain(self):
        prod = chain_product(chain(3), 0)
        assert prod.elements == ()
        assert order_ideals(prod) == [()]


class TestStateToIdeal:
    def test_golden_fig3(self, fig3_dag):
        closure = transitive_closure(fig3_dag)
        assert state_to_ideal(closure, (0, 1, 2), 3) == {(1, 0), (1, 1), (2, 0)}

    def test_top_state_empty(self, fig3_dag):
        closure = transitive_closure(fig3_dag)
        assert state_to_ideal(closure, (2, 2, 2), 3) == frozenset()

    def test_bottom_state_full(self, fig3_dag):
        closure = transitive_closure(fig3_dag)
        assert state_to_ideal(closure, (0, 0, 0), 3) == set(chain_product(closure, 2).elements)

    def test_rejects_non_state(self, fig3_dag):
        closure = transitive_closure(fig3_dag)
        with pytest.raises(NotAStateError):
            state_to_ideal(closure, (1, 0, 0), 3)
        with pytest.raises(BadStateError):
            state_to_ideal(closure, (0, 0, 3), 3)

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_bijection_onto_product_ideals(self, k):
        for _, dag in catalog_dags(k):
            poset = transitive_closure(dag)
            lattice = order_preserving_maps(poset, k)
            prod = chain_product(poset, k - 1)
            images = [state_to_ideal(poset, g, k) for g in lattice]
            assert len(set(images)) == len(images)
            expected = {
                frozenset(ideal_members(prod, ind)) for ind in order_ideals(prod)
            }
            assert set(images) == expected

    def test_order_reversing(self):
        for _, dag in catalog_dags(3):
            poset = transitive_closure(dag)
            lattice = order_preserving_maps(poset, 3)
            for g in lattice:
                for h in lattice:
                    if state_leq(g, h):
                        gi = state_to_ideal(poset, g, 3)
                        hi = state_to_ideal(poset, h, 3)
                        assert gi >= hi


class TestLatticeCorrespondence:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_state_count_equals_product_ideal_count(self, k):
        for _, dag in catalog_dags(max(k, 1)):
            poset = transitive_closure(dag)
            lattice = order_preserving_maps(poset, k)
            prod = chain_product(poset, k - 1)
            assert len(lattice) == len(order_ideals(prod))

    def test_two_state_complementation(self):
        for _, dag in catalog_dags(2):
            poset = transitive_closure(dag)
            states = set(order_preserving_maps(poset, 2))
            complements = {
                tuple(1 - b for b in ind) for ind in order_ideals(poset)
            }
            assert states == complements
