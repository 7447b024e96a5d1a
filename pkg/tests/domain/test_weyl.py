"""Tests for Weyl group elements and the group-algebra lemma."""

from collections import deque
from itertools import product

import pytest

from weylpoly.domain.config import UNCAPPED, enumeration_cap
from weylpoly.domain.exceptions import RankLimitError, ValidationError
from weylpoly.domain.root_system import (
    AlgebraId, build_root_system, is_dominant, is_integral, root_coefficients, simple_reflection,
    sub_weights
)
from weylpoly.domain.weyl import (
    all_reduced_words, check_enumerable, coxeter_exponent, dominant_representative, enumerate_group,
    from_word, identity, lemma_expansion, longest_element, orbit, reduced_word, s_elem,
    verify_weyl_sum_lemma, w_elem
)

GROUP_ORDERS = [("A1", 2), ("A2", 6), ("A3", 24), ("A4", 120), ("C2", 8), ("G2", 12)]

LONGEST_LENGTHS = [("A1", 1), ("A2", 3), ("A3", 6), ("C2", 4), ("G2", 6)]

COXETER_RELATIONS = [
    pytest.param("A2", 3, id="A2"),
    pytest.param("C2", 4, id="C2"),
    pytest.param("G2", 6, id="G2"),
]

def rs_for(name):
    return build_root_system(AlgebraId.from_str(name))

def bfs_lengths(rs):
    """Shortest word length of every element, by breadth-first search from the identity."""
    start = identity(rs)
    lengths = {start: 0}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(1, rs.rank + 1):
            v = w * from_word(rs, [i])
            if v not in lengths:
                lengths[v] = lengths[w] + 1
                queue.append(v)
    return lengths

def permutation_sign(perm):
    seen, sign = set(), 1
    for start in range(len(perm)):
        if start in seen:
            continue
        size, k = 0, start
        while k not in seen:
            seen.add(k)
            k = perm[k] - 1
            size += 1
        sign *= -1 if size % 2 == 0 else 1
    return sign

def test_from_word_identity(a2):
    assert from_word(a2, []) == identity(a2)
    assert from_word(a2, [1, 1]) == identity(a2)
    assert from_word(a2, []).is_identity

def test_from_word_braid_a2(a2):
    assert from_word(a2, [1, 2, 1]) == from_word(a2, [2, 1, 2]) == longest_element(a2)

def test_from_word_bad_index(a2):
    with pytest.raises(ValidationError):
        from_word(a2, [1, 3])

def test_word_convention_rightmost_acts_first(a2):
    w = from_word(a2, [2, 1])
    mu = (1, 0)
    assert w.act(mu) == simple_reflection(a2, 2, simple_reflection(a2, 1, mu))

@pytest.mark.parametrize("name,order", GROUP_ORDERS)
def test_enumerate_group(name, order):
    elements = enumerate_group(rs_for(name))
    assert len(elements) == order
    assert len(set(elements)) == order
    assert elements[0].is_identity

def test_enumerate_group_rank_limit(a3):
    with pytest.raises(RankLimitError, match="cap is 2"):
        enumerate_group(a3, limit=2)

def test_enumerate_group_env_cap(a3, monkeypatch):
    monkeypatch.setenv("WEYLPOLY_MAX_RANK", "2")
    with pytest.raises(RankLimitError):
        enumerate_group(a3)

def test_enumeration_cap_block(a3, monkeypatch):
    with enumeration_cap(2):
        with pytest.raises(RankLimitError, match="cap is 2"):
            enumerate_group(a3)
    monkeypatch.setenv("WEYLPOLY_MAX_RANK", "2")
    with enumeration_cap(UNCAPPED):
        assert len(enumerate_group(a3)) == 24
    with pytest.raises(RankLimitError):
        check_enumerable(a3)

def test_element_word_and_str(a2, c2):
    w = from_word(c2, [1, 2])
    assert w.word() == [1, 2]
    assert str(w) == "r1r2"
    for v in enumerate_group(a2):
        assert str(v) == ("".join(f"r{i}" for i in v.word()) or "1")

@pytest.mark.parametrize("name", ["A1", "A2", "A3", "C2", "G2"])
def test_reduced_word_round_trip_and_minimal(name):
    rs = rs_for(name)
    lengths = bfs_lengths(rs)
    assert len(lengths) == len(enumerate_group(rs))
    for w in enumerate_group(rs):
        word = reduced_word(w)
        assert from_word(rs, word) == w
        assert len(word) == w.length == lengths[w]

def test_reduced_word_identity(a2):
    assert reduced_word(identity(a2)) == []
    assert str(identity(a2)) == "1"

@pytest.mark.parametrize("name,length", LONGEST_LENGTHS)
def test_longest_element(name, length):
    rs = rs_for(name)
    w = longest_element(rs)
    assert w.length == length == len(rs.positive_roots)
    assert len(reduced_word(w)) == length
    assert max(v.length for v in enumerate_group(rs)) == length

def test_longest_element_a_is_reversal(a3):
    assert longest_element(a3).key == (4, 3, 2, 1)
    assert str(longest_element(build_root_system(AlgebraId.from_str("A1")))) == "r1"

def test_rank2_normal_form_is_lex_least(c2, g2):
    assert longest_element(c2).key == (1, 2, 1, 2)
    assert from_word(g2, [2, 1, 2, 1, 2, 1]) == from_word(g2, [1, 2, 1, 2, 1, 2])
    assert from_word(g2, [2, 1, 2, 1, 2, 1]).key == (1, 2, 1, 2, 1, 2)

@pytest.mark.parametrize("name,m", COXETER_RELATIONS)
def test_coxeter_relations(name, m):
    rs = rs_for(name)
    assert from_word(rs, [1, 2] * m).is_identity
    for k in range(1, m):
        assert not from_word(rs, [1, 2] * k).is_identity
    assert coxeter_exponent(rs, 1, 2) == coxeter_exponent(rs, 2, 1) == m
    assert coxeter_exponent(rs, 1, 1) == 1

def test_coxeter_exponent_commuting(a3):
    assert coxeter_exponent(a3, 1, 3) == 2
    assert from_word(a3, [1, 3]) == from_word(a3, [3, 1])

@pytest.mark.parametrize("name", ["A2", "C2", "G2"])
def test_det_multiplicative(name):
    rs = rs_for(name)
    group = enumerate_group(rs)
    for w in group:
        for v in group:
            assert (w * v).det == w.det * v.det

def test_det_matches_permutation_sign(a3):
    for w in enumerate_group(a3):
        assert w.det == permutation_sign(w.key)

@pytest.mark.parametrize("name", ["A3", "C2", "G2"])
def test_inverse(name):
    rs = rs_for(name)
    for w in enumerate_group(rs):
        assert (w * w.inverse()).is_identity
        assert w.inverse().length == w.length

def test_permutation_action_matches_simple_reflection(a3):
    for mu in product(range(-2, 3), repeat=3):
        for i in range(1, 4):
            assert from_word(a3, [i]).act(mu) == simple_reflection(a3, i, mu)

def test_orbit_examples(a2):
    assert orbit(a2, (1, 0)) == {(1, 0), (-1, 1), (0, -1)}
    assert orbit(a2, (0, 0)) == {(0, 0)}
    assert len(orbit(a2, (1, 1))) == 6

@pytest.mark.parametrize("name", ["A2", "A3", "C2", "G2"])
def test_orbit_properties(name):
    rs = rs_for(name)
    order = len(enumerate_group(rs))
    for mu in [(1,) + (0,) * (rs.rank - 1), (0,) * (rs.rank - 1) + (2,), (1,) * rs.rank]:
        weights = orbit(rs, mu)
        assert order % len(weights) == 0
        assert [nu for nu in weights if is_dominant(nu)] == [mu]
        assert weights == {w.act(mu) for w in enumerate_group(rs)}

@pytest.mark.parametrize("name", ["A2", "G2"])
def test_action_preserves_shifted_root_lattice(name):
    rs = rs_for(name)
    for w in enumerate_group(rs):
        for mu in product(range(-2, 3), repeat=2):
            assert is_integral(root_coefficients(rs, sub_weights(w.act(mu), mu)))

def test_dominant_representative(a2, g2):
    assert dominant_representative(a2, (-1, 1)) == ((1, 0), 1)
    assert dominant_representative(a2, (1, 1)) == ((1, 1), 0)
    mu, steps = dominant_representative(g2, (-1, -1))
    assert is_dominant(mu)
    assert mu in orbit(g2, (-1, -1))
    assert steps > 0

def test_s_elem(a3):
    assert s_elem(a3, 2, 2) == from_word(a3, [2])
    assert s_elem(a3, 1, 3) == from_word(a3, [3, 2, 1])

def test_w_elem(a2):
    assert set(w_elem(a2, 1, 1).items()) == {(from_word(a2, [1]), 1), (identity(a2), 1)}
    w12 = w_elem(a2, 1, 2)
    assert len(w12) == 3
    assert w12.coefficient(from_word(a2, [2, 1])) == 1
    assert w12.coefficient(from_word(a2, [2])) == 1
    assert w12.coefficient(identity(a2)) == 1

@pytest.mark.parametrize("i,j", [(2, 1), (0, 1), (1, 4)])
def test_s_w_elem_bad_indices(a3, i, j):
    with pytest.raises(ValidationError):
        s_elem(a3, i, j)
    with pytest.raises(ValidationError):
        w_elem(a3, i, j)

def test_s_elem_type_a_only(c2):
    with pytest.raises(ValidationError, match="A_n only"):
        s_elem(c2, 1, 2)
    with pytest.raises(ValidationError):
        verify_weyl_sum_lemma(c2)

@pytest.mark.parametrize("name,terms", [("A1", 2), ("A2", 6), ("A3", 24), ("A4", 120)])
def test_weyl_sum_lemma(name, terms):
    rs = rs_for(name)
    assert verify_weyl_sum_lemma(rs)
    expansion = lemma_expansion(rs)
    assert len(expansion) == terms
    assert set(expansion.coefficients()) == {1}

@pytest.mark.slow
def test_weyl_sum_lemma_a5():
    rs = rs_for("A5")
    assert verify_weyl_sum_lemma(rs)
    assert len(lemma_expansion(rs)) == 720

def test_all_reduced_words(a2, a3):
    assert all_reduced_words(longest_element(a2)) == [(1, 2, 1), (2, 1, 2)]
    assert all_reduced_words(identity(a2)) == [()]
    words = all_reduced_words(longest_element(a3))
    assert len(words) == 16
    assert all(from_word(a3, word) == longest_element(a3) for word in words)

def test_all_reduced_words_g2(g2):
    assert all_reduced_words(longest_element(g2)) == [(1, 2, 1, 2, 1, 2), (2, 1, 2, 1, 2, 1)]
