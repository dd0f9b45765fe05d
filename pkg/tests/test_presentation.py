"""Parser, word reduction and relator normal form."""

import pytest
from hypothesis import given, strategies as st

from cubiccayley.errors import EmptyRelator, ParseError, UnknownGenerator
from cubiccayley.presentation import (Word, free_reduce, parse_presentation,
                                      relator_multiset_normal_form,
                                      subword_in_closure)


def test_parse_basic():
    p = parse_presentation("<a,b | b^2, (ab)^3>")
    assert p.generator_names == ("a", "b")
    assert p.involutions == frozenset({"b"})
    assert p.cubic_eligible
    lens = sorted(len(w) for w in p.relators)
    assert lens == [2, 6]


def test_parse_inverse_letters():
    p = parse_presentation("<a,b | b^2, (aba^-1b^-1)^2>")
    w = max(p.relators, key=len)
    assert len(w) == 8
    signs = [s for _, s in w]
    assert signs.count(-1) == 2  # b^-1 normalises to b for an involution


def test_parse_three_involutions():
    p = parse_presentation("<b,c,d | b^2, c^2, d^2, (bc)^2, (bcd)^4>")
    assert p.involutions == frozenset({"b", "c", "d"})
    assert p.cubic_eligible


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_presentation("a,b | b^2")
    with pytest.raises(UnknownGenerator):
        parse_presentation("<a,b | c^2>")
    with pytest.raises(EmptyRelator):
        parse_presentation("<a,b | b^2, aa^-1>")
    with pytest.raises(ParseError):
        parse_presentation("<a,b | b^2, >")


def test_parse_pretty_roundtrip():
    texts = ["<a,b|b^2,(ab)^3>",
             "<b,c,d|b^2,c^2,d^2,(bc)^4,(cbcd)^2>"]
    for text in texts:
        p = parse_presentation(text)
        q = parse_presentation(p.pretty())
        assert relator_multiset_normal_form(p) == relator_multiset_normal_form(q)


def test_free_reduce_cancels():
    w = Word((("a", 1), ("a", -1), ("b", 1)))
    assert free_reduce(w).letters == (("b", 1),)


def test_free_reduce_involution():
    w = Word((("b", 1), ("b", 1)))
    assert free_reduce(w, frozenset({"b"})).letters == ()
    assert free_reduce(w).letters == w.letters  # not an involution: kept


@given(st.lists(st.tuples(st.sampled_from("ab"), st.sampled_from((-1, 1))),
                max_size=24))
def test_free_reduce_idempotent(letters):
    inv = frozenset({"b"})
    w = Word(tuple(letters))
    once = free_reduce(w, inv)
    assert free_reduce(once, inv) == once


@given(st.lists(st.tuples(st.sampled_from("ab"), st.sampled_from((-1, 1))),
                max_size=16))
def test_free_reduce_shrinks(letters):
    w = Word(tuple(letters))
    assert len(free_reduce(w)) <= len(w)


def test_normal_form_rotation_invariant():
    a = parse_presentation("<a,b | b^2, abab>")
    b = parse_presentation("<a,b | b^2, baba>")
    assert relator_multiset_normal_form(a) == relator_multiset_normal_form(b)


def test_normal_form_inversion_invariant():
    a = parse_presentation("<b,c,d | b^2,c^2,d^2, bcd>")
    b = parse_presentation("<b,c,d | b^2,c^2,d^2, dcb>")
    assert relator_multiset_normal_form(a) == relator_multiset_normal_form(b)


def test_normal_form_distinguishes():
    a = parse_presentation("<a,b | b^2, (ab)^2>")
    b = parse_presentation("<a,b | b^2, (ab)^3>")
    assert relator_multiset_normal_form(a) != relator_multiset_normal_form(b)


def test_subword_in_closure():
    rel = Word((("a", 1), ("b", 1), ("a", 1), ("b", 1)))
    assert subword_in_closure(Word((("b", 1), ("a", 1))), rel)
    assert not subword_in_closure(Word((("a", 1), ("a", 1))), rel)
