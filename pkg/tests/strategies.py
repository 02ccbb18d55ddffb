from fractions import Fraction

from hypothesis import strategies as st

from acvariety.polyalg import Monomial, SparsePoly

NVARS = 4

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))
nonzero_rationals = rationals.filter(bool)

monomials = st.dictionaries(st.integers(1, NVARS), st.integers(1, 3), max_size=3).map(Monomial)


@st.composite
def polys(draw, nvars=NVARS, max_terms=4):
    terms = draw(st.dictionaries(monomials, rationals, max_size=max_terms))
    return SparsePoly(terms, nvars)


points = st.lists(rationals, min_size=NVARS, max_size=NVARS)
