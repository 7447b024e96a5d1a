"""Weyl polytope sums B_lam computed without Demazure operators.

Two independent methods are provided:

  - dominance: the support of B_lam is the union of the orbits of the dominant weights mu <= lam
    (mu in lam + Q with lam - mu a nonnegative integer combination of simple roots). This is the
    set of lattice points of lam + Q inside the convex hull of W lam.
  - cones: each Weyl group element w contributes e^(w lam) prod_{a simple} (1 - e^(-w a))^-1, a
    signed lattice cone with simplicial generators. The coefficient of e^mu in B_lam is the signed
    count of cones containing mu, decided by an exact integer linear solve.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import List, Optional, Set, Tuple

from sympy import Matrix

from weylpoly.domain.config import SumMethod
from weylpoly.domain.demazure import brion_demazure_product, brion_rank2
from weylpoly.domain.exceptions import ValidationError
from weylpoly.domain.formal_sum import FormalSum
from weylpoly.domain.root_system import (
    AlgebraId, RootSystem, Weight, add_weights, build_root_system, in_root_lattice, is_dominant,
    root_coefficients, scale_weight, sub_weights
)
from weylpoly.domain.weyl import (
    WeylElement, check_enumerable, enumerate_group, longest_element, orbit
)

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class ConeTerm:
    """sign * e^apex * prod_g (1 - e^g)^-1: the lattice points apex + sum n_g g, n_g >= 0.

    Attributes:
        sign (int): +1 or -1
        apex (Weight): the cone apex
        generators (tuple): rank linearly independent weights
        element (WeylElement): the Weyl group element this term comes from
    """
    sign: int
    apex: Weight
    generators: Tuple[Weight, ...]
    element: Optional[WeylElement] = None
    _adjugate: Tuple[Tuple[int, ...], ...] = field(default=(), repr=False, compare=False)
    _det: int = field(default=0, repr=False, compare=False)

    @classmethod
    def build(cls, sign: int, apex: Weight, generators: Tuple[Weight, ...],
              element: Optional[WeylElement] = None) -> "ConeTerm":
        n = len(apex)
        # generators are the columns of G
        G = Matrix(n, n, lambda r, c: generators[c][r])
        det = int(G.det())
        if det == 0:
            raise ValidationError(f"Cone generators {generators} are linearly dependent")
        if n == 1:
            adjugate = ((1,),)
        else:
            adj = G.adjugate()
            adjugate = tuple(tuple(int(adj[r, c]) for c in range(n)) for r in range(n))
        return cls(sign, tuple(apex), tuple(generators), element, adjugate, det)

    def multiplicities(self, mu: Weight) -> Optional[Tuple[int, ...]]:
        """The integers n with mu = apex + sum n_g g, or None when they are not integral."""
        v = sub_weights(mu, self.apex)
        n = len(v)
        result = []
        for r in range(n):
            numerator = sum(self._adjugate[r][c] * v[c] for c in range(n))
            if numerator % self._det:
                return None
            result.append(numerator // self._det)
        return tuple(result)

    def contains(self, mu: Weight) -> bool:
        counts = self.multiplicities(mu)
        return counts is not None and all(k >= 0 for k in counts)

@dataclass(frozen=True)
class PolytopeSumReport:
    """B_lam as computed by one method.

    Attributes:
        lam (Weight): the dominant weight
        sum (FormalSum): the polytope sum
        method (SumMethod): how it was computed
    """
    lam: Weight
    sum: FormalSum
    method: SumMethod

    @property
    def term_count(self) -> int:
        return len(self.sum)

    @property
    def multiplicity_free(self) -> bool:
        return all(c == 1 for _, c in self.sum.items())

def dominant_weights_below(rs: RootSystem, lam: Weight) -> List[Weight]:
    """Dominant mu <= lam, dominance-maximal first (height descending, ties by labels).

    Every such mu is reached from lam by subtracting positive roots through dominant weights.
    """
    lam = rs.check_dominant(lam)
    seen = {lam}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for beta in rs.positive_roots:
            nu = sub_weights(mu, beta)
            if is_dominant(nu) and nu not in seen:
                seen.add(nu)
                queue.append(nu)
    return sorted(seen, key=lambda mu: (-rs.height(mu), mu))

def weight_system(rs: RootSystem, lam: Weight) -> Set[Weight]:
    """P(lam), the support of B_lam."""
    weights: Set[Weight] = set()
    for mu in dominant_weights_below(rs, lam):
        weights |= orbit(rs, mu)
    return weights

def brion_oracle(rs: RootSystem, lam: Weight) -> FormalSum:
    """B_lam = sum of e^mu over P(lam), each coefficient 1."""
    return FormalSum.from_weights(weight_system(rs, lam), rs.rank)

def cone_terms(rs: RootSystem, lam: Weight) -> List[ConeTerm]:
    """One signed simplicial cone per Weyl group element.

    For each simple root a: if w a is positive the generator is -w a; otherwise the generator is
    w a, the apex moves by w a and the sign flips.

    Raises:
        RankLimitError: If W is too large to enumerate
    """
    lam = rs.check_dominant(lam)
    check_enumerable(rs)
    return list(_cone_terms(rs.algebra, lam))

@lru_cache(maxsize=128)
def _cone_terms(algebra: AlgebraId, lam: Weight) -> Tuple[ConeTerm, ...]:
    rs = build_root_system(algebra)
    positive = set(rs.positive_roots)
    terms = []
    for w in enumerate_group(rs):
        apex = w.act(lam)
        sign = 1
        generators = []
        for alpha in rs.simple_roots:
            beta = w.act(alpha)
            if beta in positive:
                generators.append(scale_weight(-1, beta))
            else:
                generators.append(beta)
                apex = add_weights(apex, beta)
                sign = -sign
        terms.append(ConeTerm.build(sign, apex, tuple(generators), w))
    logger.debug("Built %d cone terms for %s %s", len(terms), algebra, list(lam))
    return tuple(terms)

def brion_coefficient(rs: RootSystem, lam: Weight, mu: Weight) -> int:
    """Coefficient of e^mu in B_lam from the signed cone counts."""
    lam = rs.check_dominant(lam)
    mu = rs.check_weight(mu)
    if not in_root_lattice(rs, sub_weights(lam, mu)):
        return 0
    return sum(term.sign for term in _cone_terms(rs.algebra, lam) if term.contains(mu))

def root_box(rs: RootSystem, lam: Weight, margin: int = 0) -> List[Weight]:
    """Weights lam - sum c_j a_j with -margin <= c_j <= c_max_j + margin.

    c_max are the simple-root coefficients of lam - w_L lam, so margin 0 already contains P(lam).
    """
    lam = rs.check_dominant(lam)
    bottom = longest_element(rs).act(lam)
    c_max = [int(Fraction(c)) for c in root_coefficients(rs, sub_weights(lam, bottom))]
    ranges = [range(-margin, c + margin + 1) for c in c_max]
    box = []
    for coeffs in product(*ranges):
        mu = lam
        for c, alpha in zip(coeffs, rs.simple_roots):
            mu = sub_weights(mu, scale_weight(c, alpha))
        box.append(mu)
    return box

def cone_polytope_sum(rs: RootSystem, lam: Weight) -> FormalSum:
    """B_lam from signed cone counts over the root box of lam."""
    terms = {mu: brion_coefficient(rs, lam, mu) for mu in root_box(rs, lam)}
    return FormalSum(terms, rs.rank)

def polytope_sum(rs: RootSystem, lam: Weight, method: SumMethod = SumMethod.DOMINANCE) -> PolytopeSumReport:
    """B_lam by the selected method.

    Raises:
        ValidationError: If lam is not dominant
    """
    lam = rs.check_dominant(lam)
    if method == SumMethod.DOMINANCE:
        result = brion_oracle(rs, lam)
    elif method == SumMethod.CONES:
        result = cone_polytope_sum(rs, lam)
    elif method == SumMethod.DEMAZURE:
        result = brion_demazure_product(rs, lam) if rs.algebra.is_type_a else brion_rank2(rs, lam)
    else:
        raise ValidationError(f"Unknown method: {method}")
    return PolytopeSumReport(lam, result, method)
