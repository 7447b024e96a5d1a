"""The group algebras Z[P] (formal exponentials of weights) and Z[W].

Both are stored sparsely as maps to nonzero Python ints, so coefficients never overflow and
zero coefficients never survive an operation.
"""

from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from weylpoly.domain.exceptions import ValidationError
from weylpoly.domain.root_system import Weight, add_weights

def _canonical(terms: Mapping) -> Dict:
    return {k: int(c) for k, c in terms.items() if c != 0}

class FormalSum:
    """A finite integer combination of formal exponentials e^mu.

    Attributes:
        rank (int): length of every exponent
    """

    __slots__ = ("_terms", "rank")

    def __init__(self, terms: Optional[Mapping[Weight, int]] = None, rank: Optional[int] = None):
        terms = _canonical(terms or {})
        if rank is None:
            if not terms:
                raise ValidationError("Empty FormalSum needs an explicit rank")
            rank = len(next(iter(terms)))
        for mu in terms:
            if len(mu) != rank:
                raise ValidationError(f"Exponent {list(mu)} does not have rank {rank}")
        self._terms = {tuple(mu): c for mu, c in terms.items()}
        self.rank = rank

    @classmethod
    def zero(cls, rank: int) -> "FormalSum":
        return cls({}, rank)

    @classmethod
    def from_weights(cls, weights: Iterable[Weight], rank: int) -> "FormalSum":
        """Sum of e^mu over the given weights, repeated weights accumulating."""
        terms: Dict[Weight, int] = {}
        for mu in weights:
            terms[mu] = terms.get(mu, 0) + 1
        return cls(terms, rank)

    def _check_rank(self, other: "FormalSum") -> None:
        if self.rank != other.rank:
            raise ValidationError(f"Rank mismatch: {self.rank} != {other.rank}")

    def __add__(self, other: "FormalSum") -> "FormalSum":
        self._check_rank(other)
        terms = dict(self._terms)
        for mu, c in other._terms.items():
            terms[mu] = terms.get(mu, 0) + c
        return FormalSum(terms, self.rank)

    def __neg__(self) -> "FormalSum":
        return FormalSum({mu: -c for mu, c in self._terms.items()}, self.rank)

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def __mul__(self, other: Union["FormalSum", int]) -> "FormalSum":
        if isinstance(other, int):
            return FormalSum({mu: other * c for mu, c in self._terms.items()}, self.rank)
        if not isinstance(other, FormalSum):
            return NotImplemented
        self._check_rank(other)
        terms: Dict[Weight, int] = {}
        for mu, a in self._terms.items():
            for nu, b in other._terms.items():
                key = add_weights(mu, nu)
                terms[key] = terms.get(key, 0) + a * b
        return FormalSum(terms, self.rank)

    def __rmul__(self, other: int) -> "FormalSum":
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self._terms.items())))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[Weight]:
        return iter(sorted(self._terms))

    def __contains__(self, mu: Weight) -> bool:
        return tuple(mu) in self._terms

    def items(self) -> List[Tuple[Weight, int]]:
        """Terms sorted lexicographically by exponent."""
        return sorted(self._terms.items())

    def coefficient(self, mu: Weight) -> int:
        return self._terms.get(tuple(mu), 0)

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def total(self) -> int:
        """Sum of the coefficients (the dimension, for a character)."""
        return sum(self._terms.values())

    def map_exponents(self, fn: Callable[[Weight], Weight]) -> "FormalSum":
        """Linear extension of e^mu -> e^fn(mu)."""
        terms: Dict[Weight, int] = {}
        for mu, c in self._terms.items():
            key = fn(mu)
            terms[key] = terms.get(key, 0) + c
        return FormalSum(terms, self.rank)

    def shift(self, mu: Weight) -> "FormalSum":
        """Multiply by the monomial e^mu."""
        return self.map_exponents(lambda nu: add_weights(nu, mu))

    def to_json(self) -> Dict[str, Any]:
        return {"terms": [{"weight": list(mu), "coeff": c} for mu, c in self.items()]}

    @classmethod
    def from_json(cls, data: Mapping[str, Any], rank: Optional[int] = None) -> "FormalSum":
        """Read the {"terms": [...]} serialization; extra keys are ignored."""
        try:
            entries = data["terms"]
            terms: Dict[Weight, int] = {}
            for entry in entries:
                mu = tuple(int(x) for x in entry["weight"])
                terms[mu] = terms.get(mu, 0) + int(entry["coeff"])
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"Malformed FormalSum serialization: {e}")
        if rank is None and not terms:
            raise ValidationError("Cannot infer the rank of an empty serialized sum")
        return cls(terms, rank)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mu, c in self.items():
            exponent = "e^(" + ",".join(str(x) for x in mu) + ")"
            magnitude = "" if abs(c) == 1 else f"{abs(c)} "
            sign = "-" if c < 0 else "+"
            parts.append((sign, f"{magnitude}{exponent}"))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"FormalSum({dict(self.items())!r}, rank={self.rank})"

def monomial(mu: Weight) -> FormalSum:
    """The single term e^mu."""
    return FormalSum({tuple(mu): 1}, len(mu))

def add(f: FormalSum, g: FormalSum) -> FormalSum:
    return f + g

def scale(f: FormalSum, k: int) -> FormalSum:
    return f * k

def multiply(f: FormalSum, g: FormalSum) -> FormalSum:
    return f * g

def coefficient(f: FormalSum, mu: Weight) -> int:
    return f.coefficient(mu)

def apply_weyl(w, f: FormalSum) -> FormalSum:
    """Act with a Weyl group element on every exponent: e^mu -> e^(w mu)."""
    if w.rank != f.rank:
        raise ValidationError(f"Rank mismatch: {w.rank} != {f.rank}")
    return f.map_exponents(w.act)

class GroupAlgebraElement:
    """A finite integer combination of Weyl group elements.

    Keys only need to be hashable, ordered by `sort_key` and multiply with `*`.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Any, int]] = None):
        self._terms = _canonical(terms or {})

    @classmethod
    def from_elements(cls, elements: Iterable[Any]) -> "GroupAlgebraElement":
        terms: Dict[Any, int] = {}
        for w in elements:
            terms[w] = terms.get(w, 0) + 1
        return cls(terms)

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        terms = dict(self._terms)
        for w, c in other._terms.items():
            terms[w] = terms.get(w, 0) + c
        return GroupAlgebraElement(terms)

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        terms: Dict[Any, int] = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                uv = u * v
                terms[uv] = terms.get(uv, 0) + a * b
        return GroupAlgebraElement(terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def items(self) -> List[Tuple[Any, int]]:
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def coefficient(self, w: Any) -> int:
        return self._terms.get(w, 0)

    def coefficients(self) -> List[int]:
        return [c for _, c in self.items()]

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{w}" for w, c in self.items())
        return f"GroupAlgebraElement({body or '0'})"
