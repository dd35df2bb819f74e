from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from oracles import surface_reference, threefold_reference
from quinticbg.bounds import (
    OutOfValidityError,
    check_character,
    classical_bound,
    dominated_by_parabola,
    prior_bound,
    profile_by_name,
    star_shaped,
    surface_bound,
    threefold_bound,
    toda_check,
)
from quinticbg.characters import dual, from_rank, quintic_surface, quintic_threefold
from strategies import lattice_characters

T = quintic_threefold
open_unit = st.fractions(min_value=0, max_value=1, max_denominator=200).filter(lambda x: 0 < x < 1)
closed_unit = st.fractions(min_value=-1, max_value=1, max_denominator=200)


class TestProfiles:
    def test_surface_examples(self):
        fs = surface_bound()
        assert fs(F(7, 46)) == F(-5, 92)
        assert fs(F(1, 2)) == F(-1, 20)
        assert fs(F(39, 46)) == F(27, 92)
        assert fs.validity() == "(0, 1)"
        for x in (0, 1):
            with pytest.raises(OutOfValidityError):
                fs(x)

    def test_threefold_examples(self):
        fx = threefold_bound()
        assert fx(F(1, 2)) == F(-1, 20)
        assert fx(1) == F(1, 2)
        assert fx(0) == 0
        assert fx.validity() == "[0, 1]"

    def test_prior_examples(self):
        fp = prior_bound()
        assert fp(F(1, 2)) == 0
        assert fp(F(1, 4)) == F(-1, 8)
        assert fp(1) == F(1, 2)

    def test_unknown_profile(self):
        with pytest.raises(ValueError):
            profile_by_name("quartic")

    @given(open_unit)
    def test_surface_matches_reference(self, x):
        assert surface_bound()(x) == surface_reference(x)

    @given(closed_unit)
    def test_threefold_matches_reference(self, m):
        assert threefold_bound()(abs(m)) == threefold_reference(m)

    @given(open_unit)
    def test_surface_duality_symmetry(self, x):
        fs = surface_bound()
        assert fs(1 - x) == fs(x) - x + F(1, 2)

    @given(st.fractions(min_value=F(5, 13), max_value=F(8, 13), max_denominator=500))
    def test_new_bound_below_prior(self, x):
        assert threefold_bound()(x) <= prior_bound()(x)

    def test_strict_improvement_at_half(self):
        assert threefold_bound()(F(1, 2)) < prior_bound()(F(1, 2))

    @pytest.mark.parametrize("name", ["surface", "threefold", "prior"])
    def test_parabola_domination(self, name):
        assert dominated_by_parabola(profile_by_name(name))

    @given(st.fractions(min_value=0, max_value=1, max_denominator=1000))
    def test_parabola_domination_sampled(self, x):
        for profile in (surface_bound(), threefold_bound(), prior_bound()):
            if profile.valid_at(x):
                assert profile(x) <= x * x / 2


class TestCheckCharacter:
    def test_examples(self):
        fx = threefold_bound()
        r = check_character(T(5, 5, F(5, 2)), fx)
        assert r.satisfies and r.margin == 0
        r = check_character(T(10, 5, F(-1, 2)), fx)
        assert r.satisfies and r.margin == 0
        r = check_character(T(10, 5, 0), fx)
        assert not r.satisfies and r.margin == F(-1, 20)

    def test_out_of_validity(self):
        with pytest.raises(OutOfValidityError):
            check_character(T(5, 10, 0), threefold_bound())
        with pytest.raises(ValueError):
            check_character(T(0, 5, 0), threefold_bound())

    def test_classical(self):
        assert check_character(T(5, 0, 0), classical_bound()).satisfies
        assert not check_character(T(5, 0, 1), classical_bound()).satisfies

    def test_json(self):
        data = check_character(T(10, 5, 0), threefold_bound()).to_json()
        assert data["margin"] == "-1/20" and data["margin_decimal"] == "-0.050000"

    @given(lattice_characters(a_max=3))
    def test_threefold_check_is_even(self, c):
        assume(abs(c.c1) <= c.c0)
        assert check_character(c, threefold_bound()) == check_character(dual(c), threefold_bound())


class TestStarShaped:
    @pytest.mark.parametrize("d", [0, 1])
    def test_surface(self, d):
        assert star_shaped(surface_bound(), d)

    def test_spike_fails(self):
        from quinticbg.bounds import BoundProfile
        from quinticbg.piecewise import Piece, PiecewiseLinearFn

        spike = BoundProfile("spike", PiecewiseLinearFn([Piece(0, F(1, 2), 1, 0), Piece(F(1, 2), 1, -1, 1)]))
        assert not star_shaped(spike, 0)

    def test_classical_rejected(self):
        with pytest.raises(ValueError):
            star_shaped(classical_bound(), 0)


class TestToda:
    def test_examples(self):
        r = toda_check(T(10, -5, F(-1, 2)))
        assert (r.lhs_delta, r.lhs_xi) == (F(7, 4), F(-1, 20))
        assert r.passes_delta and r.passes_xi and r.passes
        r = toda_check(T(10, -5, 0))
        assert r.lhs_delta == F(5, 4) and not r.passes_delta

    def test_scale_invariance(self):
        raw = from_rank(3, 2, -1, F(-1, 2))
        assert toda_check(raw) == toda_check(T(10, -5, F(-1, 2))) == toda_check(T(20, -10, -1))

    @given(st.fractions(min_value=-3, max_value=1, max_denominator=100))
    def test_normalization(self, x):
        r = toda_check(T(5, F(-5, 2), 5 * x))
        assert r.lhs_delta == F(5, 4) - 10 * x

    def test_hypotheses(self):
        with pytest.raises(ValueError):
            toda_check(T(10, 5, 0))
        with pytest.raises(ValueError):
            toda_check(quintic_surface(10, -5, 0))

    @given(st.integers(1, 10), st.integers(-200, 0))
    def test_bound_implies_toda(self, half_rank, k):
        c = T(10 * half_rank, -5 * half_rank, F(k, 2))
        if check_character(c, threefold_bound()).satisfies:
            assert toda_check(c).passes
