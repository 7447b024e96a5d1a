"""Root system data for A_n, C2 and G2 in Dynkin-label coordinates.

Conventions:
  - A weight is a tuple of Dynkin labels, label i being (mu, alpha_i^vee).
  - The Cartan matrix has C[i][j] = (alpha_j, alpha_i^vee), so the simple root alpha_j has the
    labels of column j.
  - C2 and G2 are numbered so that alpha_1^vee is the short simple coroot (alpha_1 is the long
    root of this system):

        C2 = [[ 2, -1],        G2 = [[ 2, -1],
              [-2,  2]]              [-3,  2]]

    This is the numbering under which the rank-2 Brion operators of weylpoly.domain.demazure
    hold.
"""

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy import Matrix

from weylpoly.domain.config import Family
from weylpoly.domain.exceptions import ValidationError

Weight = Tuple[int, ...]

CARTAN_C2 = ((2, -1), (-2, 2))
CARTAN_G2 = ((2, -1), (-3, 2))

# Independent tables used to cross-check the reflection closure.
TABULATED_POSITIVE_ROOTS: Dict[str, Tuple[Weight, ...]] = {
    "A2": ((2, -1), (-1, 2), (1, 1)),
    "C2": ((2, -2), (-1, 2), (1, 0), (0, 2)),
    "G2": ((2, -3), (-1, 2), (1, -1), (0, 1), (-1, 3), (1, 0)),
}

_ALGEBRA_RE = re.compile(r"^\s*([A-Za-z])(\d+)\s*$")

@dataclass(frozen=True)
class AlgebraId:
    """Identifier of a supported simple Lie algebra.

    Attributes:
        family (Family): A, C2 or G2
        rank (int): the rank; forced to 2 for C2 and G2
    """
    family: Family
    rank: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ValidationError(f"Rank must be a positive integer, got {self.rank!r}")
        if self.family in (Family.C2, Family.G2) and self.rank != 2:
            raise ValidationError(f"{self.family.value} has rank 2, got {self.rank}")

    @classmethod
    def from_str(cls, name: str) -> "AlgebraId":
        """Parse a name such as "A3", "C2" or "G2"."""
        match = _ALGEBRA_RE.match(name or "")
        if not match:
            raise ValidationError(f"Unknown algebra: {name!r}. Use A<n>, C2 or G2")
        letter, rank = match.group(1).upper(), int(match.group(2))
        if letter == "A":
            if rank < 1:
                raise ValidationError("For A<n>, n must be >= 1")
            return cls(Family.A, rank)
        if letter in ("C", "G") and rank == 2:
            return cls(Family.from_str(f"{letter}2"), 2)
        raise ValidationError(f"Unsupported algebra: {name!r}. Use A<n>, C2 or G2")

    @property
    def is_type_a(self) -> bool:
        return self.family == Family.A

    def __str__(self) -> str:
        if self.family == Family.A:
            return f"A{self.rank}"
        return self.family.value

@dataclass(frozen=True)
class RootSystem:
    """Static data of a root system.

    Attributes:
        algebra (AlgebraId): the algebra
        cartan: rank x rank integer matrix, C[i][j] = (alpha_j, alpha_i^vee)
        simple_roots: alpha_1..alpha_n as weights (columns of the Cartan matrix)
        rho: the Weyl vector, all labels 1
        positive_roots: R_+ sorted by height then labels
    """
    algebra: AlgebraId
    cartan: Tuple[Tuple[int, ...], ...]
    simple_roots: Tuple[Weight, ...]
    rho: Weight
    positive_roots: Tuple[Weight, ...]
    cartan_inverse: Tuple[Tuple[Fraction, ...], ...] = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.algebra.rank

    def check_index(self, i: int) -> int:
        """Validate a 1-based simple-root index."""
        if not isinstance(i, int) or not 1 <= i <= self.rank:
            raise ValidationError(f"Simple root index {i!r} out of range 1..{self.rank} for {self.algebra}")
        return i

    def check_weight(self, mu: Sequence[int]) -> Weight:
        """Validate and normalize a weight to a tuple of ints of the right length."""
        mu = tuple(mu)
        if len(mu) != self.rank:
            raise ValidationError(f"Weight {list(mu)} has {len(mu)} labels, {self.algebra} needs {self.rank}")
        if not all(isinstance(x, int) for x in mu):
            raise ValidationError(f"Weight {list(mu)} must have integer labels")
        return mu

    def check_dominant(self, mu: Sequence[int]) -> Weight:
        mu = self.check_weight(mu)
        if not is_dominant(mu):
            raise ValidationError(f"weight must be dominant, got {list(mu)}")
        return mu

    def height(self, mu: Weight) -> Fraction:
        """Sum of the simple-root coefficients of mu."""
        return sum(root_coefficients(self, mu), Fraction(0))

    def zero(self) -> Weight:
        return (0,) * self.rank

def is_dominant(mu: Weight) -> bool:
    return all(x >= 0 for x in mu)

def add_weights(mu: Weight, nu: Weight) -> Weight:
    return tuple(a + b for a, b in zip(mu, nu))

def sub_weights(mu: Weight, nu: Weight) -> Weight:
    return tuple(a - b for a, b in zip(mu, nu))

def scale_weight(k: int, mu: Weight) -> Weight:
    return tuple(k * a for a in mu)

def is_integral(vector: Iterable[Fraction]) -> bool:
    return all(Fraction(x).denominator == 1 for x in vector)

def cartan_matrix(algebra: AlgebraId) -> Tuple[Tuple[int, ...], ...]:
    """Tabulated Cartan matrix of the algebra."""
    if algebra.family == Family.C2:
        return CARTAN_C2
    if algebra.family == Family.G2:
        return CARTAN_G2
    n = algebra.rank
    return tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n))
        for i in range(n)
    )

def _reflect(cartan, i: int, mu: Weight) -> Weight:
    m = mu[i]
    if m == 0:
        return mu
    return tuple(mu[k] - m * cartan[k][i] for k in range(len(mu)))

@lru_cache(maxsize=None)
def build_root_system(algebra: AlgebraId) -> RootSystem:
    """Tabulate the root system of an algebra.

    The positive roots are obtained by closing the simple roots under the simple reflections
    and keeping the roots with nonnegative simple-root coefficients.

    Args:
        algebra: the algebra to build

    Returns:
        The immutable RootSystem
    """
    cartan = cartan_matrix(algebra)
    n = algebra.rank
    simple = tuple(tuple(cartan[k][j] for k in range(n)) for j in range(n))
    inverse = Matrix(cartan).inv()
    cartan_inverse = tuple(
        tuple(Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(n))
        for i in range(n)
    )

    roots = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(n):
            image = _reflect(cartan, i, beta)
            if image not in roots:
                roots.add(image)
                queue.append(image)

    def coefficients(mu: Weight) -> Tuple[Fraction, ...]:
        return tuple(sum((row[k] * mu[k] for k in range(n)), Fraction(0)) for row in cartan_inverse)

    positive = [beta for beta in roots if all(c >= 0 for c in coefficients(beta))]
    positive.sort(key=lambda beta: (sum(coefficients(beta)), beta))

    return RootSystem(
        algebra=algebra,
        cartan=cartan,
        simple_roots=simple,
        rho=(1,) * n,
        positive_roots=tuple(positive),
        cartan_inverse=cartan_inverse,
    )

def simple_reflection(rs: RootSystem, i: int, mu: Weight) -> Weight:
    """Apply the simple reflection r_i (1-based) to a weight: mu - mu_i alpha_i."""
    rs.check_index(i)
    return _reflect(rs.cartan, i - 1, mu)

def root_coefficients(rs: RootSystem, mu: Weight) -> Tuple[Fraction, ...]:
    """The unique rational c with mu = sum_j c_j alpha_j."""
    n = rs.rank
    return tuple(
        sum((row[k] * mu[k] for k in range(n)), Fraction(0))
        for row in rs.cartan_inverse
    )

def in_root_lattice(rs: RootSystem, mu: Weight) -> bool:
    return is_integral(root_coefficients(rs, mu))

def dominates(rs: RootSystem, lam: Weight, mu: Weight) -> bool:
    """Dominance order: mu <= lam iff lam - mu is a nonnegative integer combination of simple roots."""
    coeffs = root_coefficients(rs, sub_weights(lam, mu))
    return is_integral(coeffs) and all(c >= 0 for c in coeffs)

def dominant_weights_by_level(rank: int, max_level: int) -> List[Weight]:
    """All dominant weights with label sum at most max_level, ordered by level then labels."""
    result: List[Weight] = []

    def loop(prefix: Tuple[int, ...], budget: int):
        if len(prefix) == rank:
            result.append(prefix)
            return
        for value in range(budget + 1):
            loop(prefix + (value,), budget - value)

    loop((), max_level)
    result.sort(key=lambda mu: (sum(mu), mu))
    return result
