"""Demazure operators on Z[P] and the operator products built from them.

Operator products are compositions: in "D1 D2", D2 acts first. Every operator here is evaluated
term by term with the closed piecewise formula

    D_i e^lam =  e^lam + e^(lam - a_i) + ... + e^(r_i lam)          if lam_i >= 0
                 0                                                   if lam_i = -1
                 -(e^(lam + a_i) + ... + e^(r_i(lam + a_i)))         if lam_i < -1

so no rational expression in e^(-a_i) is ever formed.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from weylpoly.domain.config import Family
from weylpoly.domain.exceptions import OperatorSyntaxError, ValidationError
from weylpoly.domain.formal_sum import FormalSum, apply_weyl, monomial
from weylpoly.domain.root_system import (
    RootSystem, Weight, add_weights, scale_weight, simple_reflection, sub_weights
)
from weylpoly.domain.weyl import WeylElement, from_word, longest_element, reduced_word

logger = logging.getLogger(__name__)

_ATOM_RE = re.compile(r"^([rDd])(\d+)$")
_TOKEN_RE = re.compile(r"\S+")

@dataclass(frozen=True)
class OperatorAtom:
    """One of r_i, D_i or d_i."""
    kind: str
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

@dataclass(frozen=True)
class OperatorWord:
    """A product of operator atoms, applied right to left."""
    atoms: Tuple[OperatorAtom, ...]

    def apply(self, rs: RootSystem, f: FormalSum) -> FormalSum:
        for atom in reversed(self.atoms):
            f = apply_atom(rs, atom, f)
        return f

    def __len__(self) -> int:
        return len(self.atoms)

    def __str__(self) -> str:
        return " ".join(str(atom) for atom in self.atoms) or "1"

def _check_sum(rs: RootSystem, f: FormalSum) -> None:
    if f.rank != rs.rank:
        raise ValidationError(f"Rank mismatch: {rs.algebra} has rank {rs.rank}, sum has rank {f.rank}")

def demazure_D(rs: RootSystem, i: int, f: FormalSum) -> FormalSum:
    """Apply the Demazure operator D_i (1-based index)."""
    rs.check_index(i)
    _check_sum(rs, f)
    alpha = rs.simple_roots[i - 1]
    terms: Dict[Weight, int] = {}
    for lam, c in f.items():
        m = lam[i - 1]
        if m >= 0:
            string = [sub_weights(lam, scale_weight(k, alpha)) for k in range(m + 1)]
            sign = 1
        elif m == -1:
            continue
        else:
            string = [add_weights(lam, scale_weight(k, alpha)) for k in range(1, -m)]
            sign = -1
        for mu in string:
            terms[mu] = terms.get(mu, 0) + sign * c
    return FormalSum(terms, rs.rank)

def demazure_d(rs: RootSystem, i: int, f: FormalSum) -> FormalSum:
    """The modified operator d_i = D_i - 1."""
    return demazure_D(rs, i, f) - f

def reflect(rs: RootSystem, i: int, f: FormalSum) -> FormalSum:
    """r_i acting on exponents."""
    rs.check_index(i)
    _check_sum(rs, f)
    return f.map_exponents(lambda mu: simple_reflection(rs, i, mu))

def apply_atom(rs: RootSystem, atom: OperatorAtom, f: FormalSum) -> FormalSum:
    if atom.kind == "r":
        return reflect(rs, atom.index, f)
    if atom.kind == "D":
        return demazure_D(rs, atom.index, f)
    if atom.kind == "d":
        return demazure_d(rs, atom.index, f)
    raise ValidationError(f"Unknown operator kind {atom.kind!r}")

def demazure_word(rs: RootSystem, word: Sequence[int], f: FormalSum) -> FormalSum:
    """D_i1 D_i2 ... D_ik applied to f, rightmost first."""
    for letter in reversed(list(word)):
        f = demazure_D(rs, letter, f)
    return f

def demazure_w(rs: RootSystem, w: WeylElement, f: FormalSum) -> FormalSum:
    """D_w along a reduced word of w; the result does not depend on the word."""
    return demazure_word(rs, reduced_word(w), f)

def character_demazure(rs: RootSystem, lam: Weight) -> FormalSum:
    """ch_lam = D_{w_L}(e^lam).

    Raises:
        ValidationError: If lam is not dominant
    """
    lam = rs.check_dominant(lam)
    return demazure_w(rs, longest_element(rs), monomial(lam))

def _check_type_a(rs: RootSystem, what: str) -> None:
    if not rs.algebra.is_type_a:
        raise ValidationError(f"{what} is defined for A_n only, got {rs.algebra}")

def generalized_demazure(rs: RootSystem, i: int, j: int, f: FormalSum) -> FormalSum:
    """D_{i,j} = sum_{k=i}^{j} (r_j ... r_{k+1}) d_k + 1.

    The Weyl prefix r_j ... r_{k+1} is empty for k = j and acts with r_{k+1} first.
    """
    _check_type_a(rs, "D_{i,j}")
    rs.check_index(i)
    rs.check_index(j)
    if i > j:
        raise ValidationError(f"Need i <= j, got i={i}, j={j}")
    result = f
    for k in range(i, j + 1):
        prefix = from_word(rs, list(range(j, k, -1)))
        result = result + apply_weyl(prefix, demazure_d(rs, k, f))
    return result

def brion_demazure_product(rs: RootSystem, lam: Weight) -> FormalSum:
    """D_{1,1} D_{1,2} ... D_{1,n} applied to e^lam, D_{1,n} first."""
    _check_type_a(rs, "The Demazure product of D_{1,j}")
    lam = rs.check_dominant(lam)
    f = monomial(lam)
    for j in range(rs.rank, 0, -1):
        f = generalized_demazure(rs, 1, j, f)
    logger.debug("D-product for %s %s has %d terms", rs.algebra, list(lam), len(f))
    return f

# Summands of the right factor besides the identity, per rank-2 algebra.
RANK2_RIGHT_FACTOR: Dict[Family, Tuple[str, ...]] = {
    Family.C2: ("d1", "r1 d2", "r1 r2 d1"),
    Family.G2: ("d1", "r1 d2", "r1 r2 d1", "r1 r2 r1 d2", "r1 r2 r1 r2 d1"),
}

def g2_correction(rs: RootSystem, f: FormalSum) -> FormalSum:
    """r1 r2 D1 (e^(-a1-a2) f), the summand the G2 right factor needs beyond its five d-terms.

    It vanishes on e^lam whenever lam_1 = 0.
    """
    shift = scale_weight(-1, add_weights(rs.simple_roots[0], rs.simple_roots[1]))
    return apply_weyl(from_word(rs, [1, 2]), demazure_D(rs, 1, f.shift(shift)))

def brion_rank2(rs: RootSystem, lam: Weight, printed: bool = False) -> FormalSum:
    """The rank-2 Brion operator (1 + d2)(1 + d1 + r1 d2 + ...) applied to e^lam.

    Args:
        rs: root system of C2 or G2
        lam: dominant weight
        printed: for G2, leave out the r1 r2 D1 e^(-a1-a2) summand

    Raises:
        ValidationError: If the algebra is not C2 or G2, or lam is not dominant
    """
    family = rs.algebra.family
    if family not in RANK2_RIGHT_FACTOR:
        raise ValidationError(f"Rank-2 Brion operators exist for C2 and G2, got {rs.algebra}")
    lam = rs.check_dominant(lam)
    f = monomial(lam)
    right = f
    for text in RANK2_RIGHT_FACTOR[family]:
        right = right + parse_operator_expression(rs, text).apply(rs, f)
    if family == Family.G2 and not printed:
        right = right + g2_correction(rs, f)
    return demazure_D(rs, 2, right)

def parse_operator_expression(rs: RootSystem, text: str) -> OperatorWord:
    """Parse whitespace-separated atoms such as "r2 d1" or "D1 D2 D1".

    Raises:
        OperatorSyntaxError: On a malformed atom, an index out of range or an empty expression
    """
    atoms: List[OperatorAtom] = []
    for match in _TOKEN_RE.finditer(text or ""):
        token = match.group(0)
        parsed = _ATOM_RE.match(token)
        if not parsed:
            raise OperatorSyntaxError(f"Malformed operator atom {token!r}", match.start())
        index = int(parsed.group(2))
        if not 1 <= index <= rs.rank:
            raise OperatorSyntaxError(
                f"Index {index} of {token!r} out of range 1..{rs.rank}", match.start()
            )
        atoms.append(OperatorAtom(parsed.group(1), index))
    if not atoms:
        raise OperatorSyntaxError("Empty operator expression", 0)
    return OperatorWord(tuple(atoms))
