import pytest
from hypothesis import given
from hypothesis import strategies as st

from acvariety.brackets import BracketError, Kind, enumerate_strings, starts_with_angle
from acvariety.polysets import bra_set, par_set, shift_plus_one, tbra_two_set
from acvariety.transforms import TRANSFORMS, ass, ass_braket, ass_tbra, ass_to_qbra, ass_to_tbra, bra


@pytest.mark.parametrize("fn,src,out", [
    (ass, "(())()(())", "()(()(()))"),
    (ass, "()", "()"),
    (ass, "(())", "()()"),
    (bra, "(())()(())", "<()|()(())>"),
    (bra, "()", "<|>"),
    (bra, "()()", "<|()>"),
    (ass_braket, "<()|(())>()", "()<(())|()>"),
    (ass_braket, "<|>", "<|>"),
    (ass_braket, "<|()>", "<()|>"),
    (ass_to_tbra, "<()|(())>()", "<()|(())|()>"),
    (ass_to_tbra, "<|>", "<||>"),
    (ass_to_tbra, "<|()>", "<|()|>"),
    (ass_tbra, "<||>", "<||>"),
    (ass_tbra, "<()||>", "()<||>"),
    (ass_tbra, "<|()|>", "<()||>"),
    (ass_to_qbra, "<||>", "<|||>"),
    (ass_to_qbra, "<()||>", "<()|||>"),
    (ass_to_qbra, "<|()|>", "<|()||>"),
])
def test_examples(fn, src, out):
    assert fn(src).text == out


@pytest.mark.parametrize("fn,bad", [
    (ass, "<|>"), (bra, "<>"), (ass_braket, "()<|>"), (ass_to_tbra, "()<|>()"),
    (ass_tbra, "()<||>"), (ass_to_qbra, "()<||>"), (ass_braket, "(())"),
])
def test_wrong_input_is_rejected(fn, bad):
    with pytest.raises(BracketError):
        fn(bad)


def _leading(kind, n):
    return [b for b in enumerate_strings(kind, n) if starts_with_angle(b)]


@pytest.mark.parametrize("n", range(1, 7))
def test_rotation_of_round_strings_is_a_bijection(n):
    strings = enumerate_strings(Kind.PAR, n)
    images = {ass(b).text for b in strings}
    assert images == {b.text for b in strings}


@pytest.mark.parametrize("n", range(1, 7))
def test_outputs_have_the_right_kind_and_size(n):
    for b in enumerate_strings(Kind.PAR, n):
        assert (ass(b).kind, ass(b).n) == (Kind.PAR, n)
        assert (bra(b).kind, bra(b).n) == (Kind.BRA, n)
    for b in _leading(Kind.BRA, n):
        assert (ass_braket(b).kind, ass_braket(b).n) == (Kind.BRA, n)
        assert (ass_to_tbra(b).kind, ass_to_tbra(b).n) == (Kind.TBRA, n)
    if n <= 5:
        for b in _leading(Kind.TBRA, n):
            assert (ass_tbra(b).kind, ass_tbra(b).n) == (Kind.TBRA, n)
            assert (ass_to_qbra(b).kind, ass_to_qbra(b).n) == (Kind.QBRA, n + 1)


def _interior(s, lo, hi):
    return {f for f in s.forms if all(lo <= k <= hi for k in f.support())}


@pytest.mark.parametrize("n", range(1, 7))
def test_round_rotation_shares_all_but_one_form(n):
    for b in enumerate_strings(Kind.PAR, n):
        first, second = par_set(b), shift_plus_one(par_set(ass(b)))
        assert _interior(first, 2, 2 * n - 1) == _interior(second, 2, 2 * n - 1)
        assert len(first) - len(_interior(first, 2, 2 * n - 1)) == 1
        assert len(second) - len(_interior(second, 2, 2 * n - 1)) == 1
        assert len(first.union(second)) == n + 1


@pytest.mark.parametrize("n", range(1, 6))
def test_braket_rotation_shares_all_but_one_form(n):
    for b in _leading(Kind.BRA, n):
        first, second = bra_set(b, 3), shift_plus_one(bra_set(ass_braket(b), 3))
        assert _interior(first, 2, 2 * n) == _interior(second, 2, 2 * n)
        assert len(first.union(second)) == n + 1


def test_example_rotated_set():
    assert str(shift_plus_one(par_set(ass("(())()(())")))) == "{x2, x4+x6+x10, x5, x7+x9, x8}"
    assert str(shift_plus_one(bra_set(ass_braket("<()|(())>()"), 7))) == "{x2, x5+x7, x6, x10, (x4+x8)(x9+x11)-7}"


@pytest.mark.parametrize("n", range(1, 5))
def test_triple_rotation_shares_the_middle_product(n):
    for b in _leading(Kind.TBRA, n):
        first, second = tbra_two_set(b), shift_plus_one(tbra_two_set(ass_tbra(b)))
        assert set(first.quadratic()) & set(second.quadratic())


@given(st.integers(1, 6), st.data())
def test_registry_names_every_rewrite(n, data):
    b = data.draw(st.sampled_from(enumerate_strings(Kind.PAR, n)))
    assert TRANSFORMS["ass"](b) == ass(b)
    assert TRANSFORMS["bra"](b) == bra(b)
    assert set(TRANSFORMS) == {"ass", "bra", "ass-braket", "ass-to-tbra", "ass-tbra", "ass-to-qbra"}
