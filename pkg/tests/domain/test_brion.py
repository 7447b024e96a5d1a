"""Tests for Weyl polytope sums by dominance enumeration and signed cone counts."""

import pytest

from weylpoly.domain.brion import (
    PolytopeSumReport, brion_coefficient, brion_oracle, cone_polytope_sum, cone_terms,
    dominant_weights_below, polytope_sum, root_box, weight_system
)
from weylpoly.domain.config import UNCAPPED, SumMethod, enumeration_cap
from weylpoly.domain.exceptions import RankLimitError, ValidationError
from weylpoly.domain.formal_sum import FormalSum, apply_weyl
from weylpoly.domain.root_system import (
    AlgebraId, build_root_system, dominant_weights_by_level, dominates, scale_weight
)
from weylpoly.domain.weyl import enumerate_group, from_word, orbit

CONE_CASES = [
    pytest.param(name, lam, id=f"{name}-{','.join(map(str, lam))}")
    for name, level in (("A1", 3), ("A2", 3), ("C2", 2), ("G2", 2))
    for lam in dominant_weights_by_level(int(name[1]) if name[0] == "A" else 2, level)
]

def rs_for(name):
    return build_root_system(AlgebraId.from_str(name))

def test_weight_system_examples(a2):
    assert weight_system(a2, (1, 0)) == {(1, 0), (-1, 1), (0, -1)}
    assert len(weight_system(a2, (1, 1))) == 7
    assert weight_system(a2, (0, 0)) == {(0, 0)}

def test_weight_system_requires_dominant(a2):
    with pytest.raises(ValidationError, match="dominant"):
        weight_system(a2, (1, -1))

def test_oracle_a1(a1):
    assert brion_oracle(a1, (3,)) == FormalSum({(3,): 1, (1,): 1, (-1,): 1, (-3,): 1})

def test_oracle_a2_adjoint(a2):
    b = brion_oracle(a2, (1, 1))
    assert len(b) == 7
    assert b.coefficient((0, 0)) == 1

def test_dominant_weights_below(a2):
    assert dominant_weights_below(a2, (1, 1)) == [(1, 1), (0, 0)]
    assert dominant_weights_below(a2, (2, 2)) == [(2, 2), (0, 3), (3, 0), (1, 1), (0, 0)]
    assert dominant_weights_below(a2, (1, 0)) == [(1, 0)]

@pytest.mark.parametrize("name", ["A3", "C2", "G2"])
def test_oracle_invariants(name):
    rs = rs_for(name)
    for lam in dominant_weights_by_level(rs.rank, 3):
        b = brion_oracle(rs, lam)
        for i in range(1, rs.rank + 1):
            assert apply_weyl(from_word(rs, [i]), b) == b
        assert all(b.coefficient(mu) == 1 for mu in orbit(rs, lam))

def test_oracle_monotone(a2, g2):
    for rs, lam in [(a2, (2, 2)), (g2, (1, 1))]:
        support = brion_oracle(rs, lam).support()
        for nu in dominant_weights_below(rs, lam):
            assert dominates(rs, lam, nu)
            assert brion_oracle(rs, nu).support() <= support

def test_cone_terms_count(a3, g2):
    assert len(cone_terms(a3, (1, 0, 1))) == 24
    assert len(cone_terms(g2, (1, 0))) == 12

def test_cone_term_identity(a2):
    terms = {term.element: term for term in cone_terms(a2, (2, 1))}
    first = terms[enumerate_group(a2)[0]]
    assert first.sign == 1
    assert first.apex == (2, 1)
    assert first.generators == tuple(scale_weight(-1, alpha) for alpha in a2.simple_roots)

@pytest.mark.parametrize("m", [0, 1, 3])
def test_cone_term_reflection_a1(a1, m):
    term = next(t for t in cone_terms(a1, (m,)) if not t.element.is_identity)
    assert term.sign == -1
    assert term.apex == (-m - 2,)
    assert term.generators == ((-2,),)

def test_cone_sign_is_parity_of_negative_images(g2):
    positive = set(g2.positive_roots)
    for term in cone_terms(g2, (1, 1)):
        flips = sum(1 for alpha in g2.simple_roots if term.element.act(alpha) not in positive)
        assert term.sign == (-1) ** flips

def test_cone_membership(a1):
    term = cone_terms(a1, (2,))[0]
    assert term.contains((2,))
    assert term.contains((-6,))
    assert not term.contains((4,))
    assert not term.contains((1,))
    assert term.multiplicities((-2,)) == (2,)

def test_brion_coefficient_examples(a2):
    assert brion_coefficient(a2, (1, 0), (1, 0)) == 1
    assert brion_coefficient(a2, (1, 0), (3, -1)) == 0
    assert brion_coefficient(a2, (1, 0), (0, 0)) == 0

@pytest.mark.parametrize("name,lam", CONE_CASES)
def test_cone_counts_match_oracle_with_margin(name, lam):
    rs = rs_for(name)
    oracle = brion_oracle(rs, lam)
    box = root_box(rs, lam, margin=1)
    assert set(oracle.support()) <= set(box)
    for mu in box:
        assert brion_coefficient(rs, lam, mu) == oracle.coefficient(mu), mu

@pytest.mark.slow
def test_cone_counts_match_oracle_a3(a3):
    for lam in dominant_weights_by_level(3, 3):
        oracle = brion_oracle(a3, lam)
        for mu in root_box(a3, lam, margin=1):
            assert brion_coefficient(a3, lam, mu) == oracle.coefficient(mu)

def test_root_box(a1):
    assert sorted(root_box(a1, (2,))) == [(-2,), (0,), (2,)]
    assert len(root_box(a1, (2,), margin=1)) == 5

@pytest.mark.parametrize("name,lam", [("A2", (1, 1)), ("A3", (1, 0, 1)), ("C2", (1, 1)), ("G2", (1, 0))])
def test_cone_polytope_sum(name, lam):
    rs = rs_for(name)
    assert cone_polytope_sum(rs, lam) == brion_oracle(rs, lam)

def test_cone_terms_rank_limit(a3, monkeypatch):
    monkeypatch.setenv("WEYLPOLY_MAX_RANK", "2")
    with pytest.raises(RankLimitError):
        cone_terms(a3, (2, 1, 2))

def test_cached_cone_terms_respect_the_cap(a3):
    with enumeration_cap(UNCAPPED):
        assert len(cone_terms(a3, (1, 0, 1))) == 24
    with enumeration_cap(2):
        with pytest.raises(RankLimitError, match="cap is 2"):
            cone_terms(a3, (1, 0, 1))

@pytest.mark.parametrize("method", list(SumMethod))
def test_polytope_sum_methods_agree(c2, method):
    report = polytope_sum(c2, (1, 1), method)
    assert isinstance(report, PolytopeSumReport)
    assert report.method == method
    assert report.sum == brion_oracle(c2, (1, 1))
    assert report.term_count == 12
    assert report.multiplicity_free

def test_polytope_sum_g2_zero(g2):
    assert polytope_sum(g2, (0, 0)).term_count == 1
