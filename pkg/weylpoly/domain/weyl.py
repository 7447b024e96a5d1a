"""Weyl group elements, reduced words and the group-algebra elements s_{i,j}, w_{i,j}.

A word [i1, ..., ik] denotes r_i1 o ... o r_ik as operators on weights: the rightmost letter acts
first. A_n elements are stored as one-line permutations of 1..n+1 (r_j swaps entries j and j+1);
C2 and G2 elements are stored as their lexicographically least reduced word.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Set, Tuple

from weylpoly.domain.config import group_rank_cap
from weylpoly.domain.exceptions import RankLimitError, ValidationError
from weylpoly.domain.formal_sum import GroupAlgebraElement
from weylpoly.domain.root_system import (
    AlgebraId, RootSystem, Weight, build_root_system, is_dominant, simple_reflection
)

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class WeylElement:
    """An element of the Weyl group of `algebra`.

    Attributes:
        algebra (AlgebraId): the algebra
        key (tuple): one-line permutation (A_n) or normal-form word (C2, G2)
    """
    algebra: AlgebraId
    key: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.algebra.rank

    @property
    def root_system(self) -> RootSystem:
        return build_root_system(self.algebra)

    def _check_same(self, other: "WeylElement") -> None:
        if self.algebra != other.algebra:
            raise ValidationError(f"Cannot combine elements of {self.algebra} and {other.algebra}")

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if not isinstance(other, WeylElement):
            return NotImplemented
        self._check_same(other)
        if self.algebra.is_type_a:
            return WeylElement(self.algebra, tuple(self.key[k - 1] for k in other.key))
        return _rank2_from_image(self.algebra, self.act(other.act(self.root_system.rho)))

    def inverse(self) -> "WeylElement":
        if self.algebra.is_type_a:
            inv = [0] * len(self.key)
            for position, value in enumerate(self.key, start=1):
                inv[value - 1] = position
            return WeylElement(self.algebra, tuple(inv))
        return from_word(self.root_system, list(reversed(self.key)))

    @property
    def length(self) -> int:
        if self.algebra.is_type_a:
            perm = self.key
            return sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
        return len(self.key)

    @property
    def det(self) -> int:
        return -1 if self.length % 2 else 1

    @property
    def is_identity(self) -> bool:
        return self.length == 0

    def act(self, mu: Weight) -> Weight:
        """The image w(mu) of a weight."""
        if self.algebra.is_type_a:
            x = _labels_to_epsilon(mu)
            y = [0] * len(x)
            for k, target in enumerate(self.key):
                y[target - 1] = x[k]
            return tuple(y[k] - y[k + 1] for k in range(len(y) - 1))
        rs = self.root_system
        for letter in reversed(self.key):
            mu = simple_reflection(rs, letter, mu)
        return tuple(mu)

    def word(self) -> List[int]:
        return reduced_word(self)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.length, self.key)

    def __str__(self) -> str:
        letters = self.word()
        if not letters:
            return "1"
        return "".join(f"r{i}" for i in letters)

def _labels_to_epsilon(mu: Weight) -> List[int]:
    # x_{n+1} = 0 and x_k = x_{k+1} + mu_k
    x = [0] * (len(mu) + 1)
    for k in range(len(mu) - 1, -1, -1):
        x[k] = x[k + 1] + mu[k]
    return x

@lru_cache(maxsize=None)
def _rank2_table(algebra: AlgebraId) -> Dict[Weight, Tuple[int, ...]]:
    """Map rho-image -> lexicographically least reduced word, by BFS from the identity."""
    rs = build_root_system(algebra)
    table: Dict[Weight, Tuple[int, ...]] = {rs.rho: ()}
    queue = deque([((), rs.rho)])
    while queue:
        word, image = queue.popleft()
        for letter in range(1, rs.rank + 1):
            # appending a letter acts first: w r_i (rho) = w(r_i rho)
            candidate = word + (letter,)
            target = _act_word(rs, candidate, rs.rho)
            if target not in table:
                table[target] = candidate
                queue.append((candidate, target))
    logger.debug("Tabulated %d elements of W(%s)", len(table), algebra)
    return table

def _act_word(rs: RootSystem, word: Sequence[int], mu: Weight) -> Weight:
    for letter in reversed(word):
        mu = simple_reflection(rs, letter, mu)
    return tuple(mu)

def _rank2_from_image(algebra: AlgebraId, image: Weight) -> WeylElement:
    return WeylElement(algebra, _rank2_table(algebra)[image])

def identity(rs: RootSystem) -> WeylElement:
    if rs.algebra.is_type_a:
        return WeylElement(rs.algebra, tuple(range(1, rs.rank + 2)))
    return WeylElement(rs.algebra, ())

def from_word(rs: RootSystem, word: Sequence[int]) -> WeylElement:
    """The element r_i1 r_i2 ... of a word (leftmost letter acts last).

    Raises:
        ValidationError: If a letter is not a simple-root index
    """
    for letter in word:
        rs.check_index(letter)
    if rs.algebra.is_type_a:
        perm = list(range(1, rs.rank + 2))
        for letter in word:
            perm[letter - 1], perm[letter] = perm[letter], perm[letter - 1]
        return WeylElement(rs.algebra, tuple(perm))
    return _rank2_from_image(rs.algebra, _act_word(rs, word, rs.rho))

def check_enumerable(rs: RootSystem, limit: Optional[int] = None) -> None:
    """Refuse A_n groups above the rank cap.

    Args:
        rs: the root system
        limit: largest A_n rank that may be enumerated (defaults to the configured cap)

    Raises:
        RankLimitError: If the rank is above the limit
    """
    limit = group_rank_cap() if limit is None else limit
    if rs.algebra.is_type_a and rs.rank > limit:
        raise RankLimitError(
            f"Enumerating W({rs.algebra}) needs {rs.rank + 1}! elements; the rank cap is {limit}"
        )

def enumerate_group(rs: RootSystem, limit: Optional[int] = None) -> List[WeylElement]:
    """Every element of W exactly once, sorted by length then key.

    Raises:
        RankLimitError: If the rank is above limit, or above the configured cap when limit is None
    """
    check_enumerable(rs, limit)
    if rs.algebra.is_type_a:
        elements = [WeylElement(rs.algebra, p) for p in permutations(range(1, rs.rank + 2))]
    else:
        elements = [WeylElement(rs.algebra, word) for word in _rank2_table(rs.algebra).values()]
    elements.sort(key=WeylElement.sort_key)
    logger.debug("Enumerated %d elements of W(%s)", len(elements), rs.algebra)
    return elements

def reduced_word(w: WeylElement) -> List[int]:
    """A reduced word of w.

    For A_n the word is read off by sorting the permutation with adjacent swaps at right descents.
    """
    if not w.algebra.is_type_a:
        return list(w.key)
    perm = list(w.key)
    letters: List[int] = []
    changed = True
    while changed:
        changed = False
        for i in range(len(perm) - 1):
            if perm[i] > perm[i + 1]:
                perm[i], perm[i + 1] = perm[i + 1], perm[i]
                letters.append(i + 1)
                changed = True
    letters.reverse()
    return letters

def _right_descents(w: WeylElement) -> List[int]:
    rs = w.root_system
    length = w.length
    return [i for i in range(1, rs.rank + 1) if (w * from_word(rs, [i])).length < length]

def all_reduced_words(w: WeylElement) -> List[Tuple[int, ...]]:
    """Every reduced word of w, sorted lexicographically."""
    rs = w.root_system
    memo: Dict[WeylElement, List[Tuple[int, ...]]] = {}

    def words(v: WeylElement) -> List[Tuple[int, ...]]:
        if v in memo:
            return memo[v]
        if v.is_identity:
            memo[v] = [()]
            return memo[v]
        result = []
        for i in _right_descents(v):
            for prefix in words(v * from_word(rs, [i])):
                result.append(prefix + (i,))
        memo[v] = sorted(result)
        return memo[v]

    return words(w)

def longest_element(rs: RootSystem) -> WeylElement:
    """w_L, of length |R_+|."""
    if rs.algebra.is_type_a:
        return WeylElement(rs.algebra, tuple(range(rs.rank + 1, 0, -1)))
    return max(enumerate_group(rs), key=WeylElement.sort_key)

def orbit(rs: RootSystem, lam: Weight) -> Set[Weight]:
    """The Weyl orbit of a weight, by closure under the simple reflections."""
    lam = rs.check_weight(lam)
    seen = {lam}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for i in range(1, rs.rank + 1):
            image = simple_reflection(rs, i, mu)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return seen

def dominant_representative(rs: RootSystem, mu: Weight) -> Tuple[Weight, int]:
    """The dominant weight of the orbit of mu and the number of reflections used to reach it."""
    mu = rs.check_weight(mu)
    steps = 0
    while not is_dominant(mu):
        i = next(k for k, x in enumerate(mu, start=1) if x < 0)
        mu = simple_reflection(rs, i, mu)
        steps += 1
    return mu, steps

_COXETER = {0: 2, 1: 3, 2: 4, 3: 6}

def coxeter_exponent(rs: RootSystem, i: int, j: int) -> int:
    """Order m_ij of r_i r_j."""
    rs.check_index(i)
    rs.check_index(j)
    if i == j:
        return 1
    return _COXETER[rs.cartan[i - 1][j - 1] * rs.cartan[j - 1][i - 1]]

def _check_type_a_range(rs: RootSystem, i: int, j: int) -> None:
    if not rs.algebra.is_type_a:
        raise ValidationError(f"s_{{i,j}} and w_{{i,j}} are defined for A_n only, got {rs.algebra}")
    rs.check_index(i)
    rs.check_index(j)
    if i > j:
        raise ValidationError(f"Need i <= j, got i={i}, j={j}")

def s_elem(rs: RootSystem, i: int, j: int) -> WeylElement:
    """s_{i,j} = r_j r_{j-1} ... r_i."""
    _check_type_a_range(rs, i, j)
    return from_word(rs, list(range(j, i - 1, -1)))

def w_elem(rs: RootSystem, i: int, j: int) -> GroupAlgebraElement:
    """w_{i,j} = s_{i,j} + s_{i+1,j} + ... + s_{j,j} + 1 in Z[W]."""
    _check_type_a_range(rs, i, j)
    elements = [s_elem(rs, k, j) for k in range(i, j + 1)]
    elements.append(identity(rs))
    return GroupAlgebraElement.from_elements(elements)

def lemma_expansion(rs: RootSystem) -> GroupAlgebraElement:
    """The expanded product w_{1,1} w_{1,2} ... w_{1,n}."""
    product = GroupAlgebraElement({identity(rs): 1})
    for j in range(1, rs.rank + 1):
        product = product * w_elem(rs, 1, j)
    return product

def verify_weyl_sum_lemma(rs: RootSystem, limit: Optional[int] = None) -> bool:
    """True iff w_{1,1} ... w_{1,n} equals the sum of all elements of W, each with coefficient 1."""
    expansion = lemma_expansion(rs)
    group_sum = GroupAlgebraElement.from_elements(enumerate_group(rs, limit))
    return expansion == group_sum
