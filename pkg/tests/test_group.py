"""Residue-class minima, witnesses, Frobenius numbers, covering radii."""

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from knapgap import (
    BoundTooLarge,
    KnapsackInstance,
    NegativeWeight,
    NoPointInBox,
    ValidationError,
    covering_radius_integral,
    covering_radius_simplex,
    frobenius,
    frobenius_sieve_oracle,
    group_min_bruteforce,
    group_minima,
    lattice_gap,
    tightness_threshold,
)

small_instances = (
    st.lists(st.integers(min_value=1, max_value=60), min_size=2, max_size=4)
    .filter(lambda a: math.gcd(*a) == 1)
    .map(lambda a: KnapsackInstance(tuple(a)))
)


class TestGroupTable:
    def test_single_generator_table(self):
        table = group_minima(KnapsackInstance((3, 5)), 1, (3,))
        assert table.modulus == 5
        assert table.generators == (3,)
        assert table.minima == [0, 6, 12, 3, 9]
        assert table.witness == [(0,), (2,), (4,), (1,), (3,)]
        assert table.load == [0, 6, 12, 3, 9]
        assert lattice_gap(table) == 12
        assert tightness_threshold(table) == 12

    def test_two_generator_value(self):
        table = group_minima(KnapsackInstance((6, 9, 20)), 0, (9, 20))
        assert table.minima[1] == 49  # 9*1 + 20*2
        assert table.minima[0] == 0

    def test_modulus_one(self):
        table = group_minima(KnapsackInstance((1, 7)), 0, (0,))
        assert table.modulus == 1
        assert table.minima == [0]
        assert tightness_threshold(table) == 0
        assert lattice_gap(table) == 0

    def test_zero_weights(self):
        table = group_minima(KnapsackInstance((4, 7)), 0, (0,))
        assert table.minima == [0, 0, 0, 0]
        assert lattice_gap(table) == 0
        # witnesses must still be consistent, not cyclic garbage
        for r, x in enumerate(table.witness):
            assert 7 * x[0] % 4 == r

    def test_rational_weights(self):
        table = group_minima(KnapsackInstance((3, 5)), 1, (Fraction(1, 2),))
        assert table.minima == [0, Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 2)]

    def test_rejects_negative_weight(self):
        with pytest.raises(NegativeWeight):
            group_minima(KnapsackInstance((3, 5)), 1, (-1,))

    def test_rejects_bad_tau(self):
        with pytest.raises(ValidationError):
            group_minima(KnapsackInstance((3, 5)), 2, (1,))

    def test_weight_count_mismatch(self):
        with pytest.raises(ValidationError):
            group_minima(KnapsackInstance((3, 5)), 1, (1, 2))

    def test_guardrail(self, monkeypatch):
        monkeypatch.setenv("KNAPGAP_GUARDRAIL_CELLS", "10")
        with pytest.raises(BoundTooLarge, match="KNAPGAP_GUARDRAIL_CELLS"):
            group_minima(KnapsackInstance((3, 50)), 1, (1,))
        # explicit cap wins over the environment
        group_minima(KnapsackInstance((3, 50)), 1, (1,), max_cells=100)

    @given(inst=small_instances, data=st.data())
    def test_witness_invariants(self, inst, data):
        tau = data.draw(st.integers(min_value=0, max_value=inst.n - 1))
        weights = data.draw(
            st.lists(
                st.integers(min_value=0, max_value=30),
                min_size=inst.n - 1,
                max_size=inst.n - 1,
            )
        )
        table = group_minima(inst, tau, weights)
        m = table.modulus
        assert table.minima[0] == 0
        assert len(table.minima) == m
        for r in range(m):
            x = table.witness[r]
            assert all(xi >= 0 for xi in x)
            assert sum(w * xi for w, xi in zip(table.weights, x)) == table.minima[r]
            assert sum(g * xi for g, xi in zip(table.generators, x)) % m == r
            assert table.load[r] == sum(g * xi for g, xi in zip(table.generators, x))
        # fixed-point property: no arc improves any label
        for r in range(m):
            for g, w in zip(table.generators, table.weights):
                assert table.minima[(r + g) % m] <= table.minima[r] + w

    @given(inst=small_instances, data=st.data())
    @settings(max_examples=25)
    def test_against_bruteforce(self, inst, data):
        tau = data.draw(st.integers(min_value=0, max_value=inst.n - 1))
        weights = tuple(inst.a[j] for j in range(inst.n) if j != tau)
        table = group_minima(inst, tau, weights)
        m = table.modulus
        r = data.draw(st.integers(min_value=0, max_value=m - 1))
        # every class has a point with all coordinates < m
        value = group_min_bruteforce(inst, tau, weights, r, radius=m)
        assert value == table.minima[r]


class TestBruteforceBox:
    def test_known_value(self):
        got = group_min_bruteforce(KnapsackInstance((6, 9, 20)), 0, (9, 20), 1, 12)
        assert got == 49

    def test_box_too_small(self):
        with pytest.raises(NoPointInBox):
            group_min_bruteforce(KnapsackInstance((5, 7)), 0, (7,), 1, 0)


class TestFrobenius:
    @pytest.mark.parametrize(
        "a,expected",
        [((2, 3), 1), ((3, 5), 7), ((6, 9, 20), 43), ((1, 7), -1), ((7, 1), -1)],
    )
    def test_known_values(self, a, expected):
        assert frobenius(KnapsackInstance(a)) == expected

    @pytest.mark.parametrize("a", [(2, 3), (3, 5), (6, 9, 20), (1, 7), (11, 13, 17, 19)])
    def test_sieve_agrees(self, a):
        inst = KnapsackInstance(a)
        assert frobenius(inst) == frobenius_sieve_oracle(inst)

    @given(inst=small_instances)
    @settings(max_examples=40)
    def test_sieve_agrees_random(self, inst):
        assert frobenius(inst) == frobenius_sieve_oracle(inst)

    @given(
        a1=st.integers(min_value=1, max_value=300),
        a2=st.integers(min_value=1, max_value=300),
    )
    def test_two_coefficient_closed_form(self, a1, a2):
        assume(math.gcd(a1, a2) == 1)
        inst = KnapsackInstance((a1, a2))
        assert frobenius(inst) == a1 * a2 - a1 - a2

    def test_definition_via_representability(self):
        # g is the largest non-representable b: check directly for (6, 9, 20)
        inst = KnapsackInstance((6, 9, 20))
        g = frobenius(inst)

        def representable(b):
            reach = [False] * (b + 1)
            reach[0] = True
            for coin in inst.a:
                for t in range(coin, b + 1):
                    if reach[t - coin]:
                        reach[t] = True
            return reach[b]

        assert not representable(g)
        assert all(representable(b) for b in range(g + 1, g + 1 + max(inst.a)))


class TestCoveringRadii:
    def test_known_values(self):
        inst = KnapsackInstance((6, 9, 20))
        assert covering_radius_simplex(inst) == 78
        assert covering_radius_integral(inst) == 63

    @given(inst=small_instances)
    @settings(max_examples=25)
    def test_identities(self, inst):
        g = frobenius(inst)
        assert covering_radius_simplex(inst) == g + sum(inst.a)
        assert covering_radius_integral(inst) == g + inst.a[-1]
        assert covering_radius_simplex(inst) >= covering_radius_integral(inst)

    @given(inst=small_instances)
    @settings(max_examples=25)
    def test_group_route_matches_frobenius_route(self, inst):
        # max residue minimum with tau at the end and the other coefficients
        # as weights equals g(a) + a_n
        table = group_minima(inst, inst.n - 1, inst.a[:-1])
        assert lattice_gap(table) == frobenius(inst) + inst.a[-1]
