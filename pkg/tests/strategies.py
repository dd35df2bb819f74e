from fractions import Fraction

from hypothesis import strategies as st

from quinticbg.characters import ReducedCharacter

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def characters(draw, dim=3, nonzero_rank=False):
    c0 = draw(rationals.filter(lambda x: x != 0) if nonzero_rank else rationals)
    return ReducedCharacter(dim, 5, c0, draw(rationals), draw(rationals))


@st.composite
def lattice_characters(draw, dim=3, rank_max=4, a_max=4, den=2):
    r = draw(st.integers(1, rank_max))
    a = draw(st.integers(-a_max, a_max))
    k = draw(st.integers(-40, 40))
    return ReducedCharacter(dim, 5, 5 * r, 5 * a, Fraction(k, den))
