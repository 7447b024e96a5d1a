"""Characters by exact Weyl division and the polytope expansion ch_lam = sum A_{lam,mu} B_mu."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from weylpoly.domain.brion import brion_oracle, dominant_weights_below
from weylpoly.domain.demazure import character_demazure
from weylpoly.domain.exceptions import DivisionError, ExpansionError
from weylpoly.domain.formal_sum import FormalSum, monomial
from weylpoly.domain.root_system import (
    RootSystem, Weight, add_weights, in_root_lattice, scale_weight, sub_weights
)
from weylpoly.domain.weyl import enumerate_group

logger = logging.getLogger(__name__)

def weyl_numerator(rs: RootSystem, lam: Weight) -> FormalSum:
    """sum_w det(w) e^(w(lam + rho) - rho)."""
    lam = rs.check_dominant(lam)
    shifted = add_weights(lam, rs.rho)
    terms: Dict[Weight, int] = {}
    for w in enumerate_group(rs):
        mu = sub_weights(w.act(shifted), rs.rho)
        terms[mu] = terms.get(mu, 0) + w.det
    return FormalSum(terms, rs.rank)

def weyl_denominator(rs: RootSystem) -> FormalSum:
    """prod over positive roots of (1 - e^(-beta))."""
    result = monomial(rs.zero())
    for beta in rs.positive_roots:
        result = result * (monomial(rs.zero()) - monomial(scale_weight(-1, beta)))
    return result

def _order_key(rs: RootSystem, mu: Weight) -> Tuple[Fraction, Weight]:
    # total order on exponents compatible with addition
    return (rs.height(mu), mu)

def divide_exact(rs: RootSystem, numerator: FormalSum, denominator: FormalSum) -> FormalSum:
    """The exact quotient numerator / denominator in Z[P].

    The leading residual term (largest height, ties by labels) is cancelled against the leading
    term of the denominator until nothing is left.

    Raises:
        DivisionError: If the denominator is zero or the division leaves a remainder
    """
    if not denominator:
        raise DivisionError("Division by the zero sum")
    if not numerator:
        return FormalSum.zero(rs.rank)
    lead = max(denominator.support(), key=lambda mu: _order_key(rs, mu))
    lead_coeff = denominator.coefficient(lead)
    # the quotient's lowest term times the denominator's lowest term is the numerator's lowest term
    floor = (min(rs.height(mu) for mu in numerator.support())
             - min(rs.height(mu) for mu in denominator.support()))

    quotient: Dict[Weight, int] = {}
    residual = numerator
    steps = 0
    while residual:
        top = max(residual.support(), key=lambda mu: _order_key(rs, mu))
        shift = sub_weights(top, lead)
        c = residual.coefficient(top)
        if rs.height(shift) < floor or c % lead_coeff:
            raise DivisionError(f"Division leaves a remainder with leading term e^{list(top)}")
        c //= lead_coeff
        quotient[shift] = quotient.get(shift, 0) + c
        residual = residual - denominator.shift(shift) * c
        steps += 1
    logger.debug("Exact division finished in %d steps", steps)
    return FormalSum(quotient, rs.rank)

def character_weyl_division(rs: RootSystem, lam: Weight) -> FormalSum:
    """ch_lam as the exact quotient of the Weyl numerator by the Weyl denominator."""
    return divide_exact(rs, weyl_numerator(rs, lam), weyl_denominator(rs))

def weight_multiplicity(rs: RootSystem, lam: Weight, mu: Weight) -> int:
    """Multiplicity of mu in L(lam)."""
    lam = rs.check_dominant(lam)
    mu = rs.check_weight(mu)
    if not in_root_lattice(rs, sub_weights(lam, mu)):
        return 0
    return character_demazure(rs, lam).coefficient(mu)

@dataclass(frozen=True)
class PolytopeExpansion:
    """The coefficients A_{lam,mu} of ch_lam = sum_mu A_{lam,mu} B_mu.

    Attributes:
        lam (Weight): the dominant highest weight
        coefficients (tuple): (mu, A_{lam,mu}) pairs with nonzero A, dominance-maximal first
    """
    lam: Weight
    coefficients: Tuple[Tuple[Weight, int], ...]

    def as_dict(self) -> Dict[Weight, int]:
        return dict(self.coefficients)

    def coefficient(self, mu: Weight) -> int:
        return self.as_dict().get(tuple(mu), 0)

    @property
    def negative(self) -> List[Weight]:
        return [mu for mu, a in self.coefficients if a < 0]

    def reconstruct(self, rs: RootSystem) -> FormalSum:
        """sum_mu A_{lam,mu} B_mu."""
        total = FormalSum.zero(rs.rank)
        for mu, a in self.coefficients:
            total = total + brion_oracle(rs, mu) * a
        return total

    def to_json(self) -> Dict[str, Any]:
        return {
            "lambda": list(self.lam),
            "coefficients": [{"weight": list(mu), "coeff": a} for mu, a in self.coefficients],
        }

def polytope_expansion(rs: RootSystem, lam: Weight, character: Optional[FormalSum] = None) -> PolytopeExpansion:
    """Solve ch_lam = sum A_{lam,mu} B_mu by descending elimination over dominant mu <= lam.

    Args:
        rs: the root system
        lam: dominant highest weight
        character: ch_lam when already computed

    Raises:
        ExpansionError: If the residual does not vanish
    """
    lam = rs.check_dominant(lam)
    residual = character_demazure(rs, lam) if character is None else character
    coefficients = []
    for nu in dominant_weights_below(rs, lam):
        a = residual.coefficient(nu)
        if a == 0:
            continue
        coefficients.append((nu, a))
        residual = residual - brion_oracle(rs, nu) * a
    if residual:
        raise ExpansionError(f"Polytope expansion of {list(lam)} left residual {residual}")

    expansion = PolytopeExpansion(lam, tuple(coefficients))
    if rs.algebra.is_type_a and expansion.negative:
        logger.warning(
            "Negative polytope coefficients for %s %s at %s",
            rs.algebra, list(lam), [list(mu) for mu in expansion.negative]
        )
    return expansion
