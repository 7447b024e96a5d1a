"""Verification sweeps: every identity of the library checked against an independent computation."""

import logging
import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Dict, List

from weylpoly.domain.brion import brion_coefficient, brion_oracle, root_box
from weylpoly.domain.config import DEFAULT_BRAID_RANK, Family, RunConfig, Sweep, enumeration_cap
from weylpoly.domain.demazure import (
    brion_demazure_product, brion_rank2, character_demazure, demazure_D, demazure_d, demazure_word
)
from weylpoly.domain.exceptions import ValidationError
from weylpoly.domain.expansion import character_weyl_division, polytope_expansion
from weylpoly.domain.formal_sum import FormalSum, monomial
from weylpoly.domain.root_system import (
    AlgebraId, RootSystem, Weight, build_root_system, dominant_weights_by_level
)
from weylpoly.domain.weyl import (
    all_reduced_words, coxeter_exponent, enumerate_group, lemma_expansion, verify_weyl_sum_lemma
)

logger = logging.getLogger(__name__)

# Test weights have labels in this range; only grids with more points than SAMPLE_SIZE are sampled.
TEST_LABELS = range(-2, 3)
SAMPLE_SIZE = 125
RANDOM_SUMS = 20

@dataclass(frozen=True)
class CaseResult:
    """Outcome of one verification case."""
    algebra: str
    case: str
    passed: bool
    detail: str = ""

    def to_json(self) -> Dict[str, Any]:
        return {"algebra": self.algebra, "case": self.case, "passed": self.passed, "detail": self.detail}

@dataclass
class SweepReport:
    """All cases of one sweep, in the order they were run."""
    sweep: Sweep
    cases: List[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(case.passed for case in self.cases)

    @property
    def failures(self) -> List[CaseResult]:
        return [case for case in self.cases if not case.passed]

    def to_json(self) -> Dict[str, Any]:
        return {
            "sweep": self.sweep.value,
            "passed": self.passed,
            "summary": {
                "total": len(self.cases),
                "passed": len(self.cases) - len(self.failures),
                "failed": len(self.failures),
            },
            "cases": [case.to_json() for case in self.cases],
        }

def format_weight(mu: Weight) -> str:
    return ",".join(str(x) for x in mu)

class VerificationService:
    """Runs the verification sweeps of a RunConfig.

    Sweeps over the A family run ranks 1..n, where n is the rank of --algebra when given and
    max_rank otherwise. Dominant weights are bounded by level (label sum) max_level.
    """

    def __init__(self, config: RunConfig, printed: bool = False):
        """Initialize verification service.

        Args:
            config: the validated run configuration
            printed: evaluate the rank-2 operators exactly as printed (G2 without its correction)
        """
        self.config = config
        self.printed = printed
        self._sweeps: Dict[Sweep, Callable[[], List[CaseResult]]] = {
            Sweep.THEOREM: self.theorem,
            Sweep.LEMMA: self.lemma,
            Sweep.RANK2: self.rank2,
            Sweep.BRAID: self.braid,
            Sweep.CHARACTER: self.character,
            Sweep.CONES: self.cones,
            Sweep.EXPANSION: self.expansion,
        }

    def run(self, sweep: Sweep) -> SweepReport:
        """Run one sweep.

        Raises:
            ValidationError: If the configured algebra does not fit the sweep
            RankLimitError: If the Weyl group of a swept algebra is too large to enumerate
        """
        logger.info("Starting %s sweep", sweep.value)
        start = time.perf_counter()
        with enumeration_cap(self.config.group_cap):
            report = SweepReport(sweep, self._sweeps[sweep]())
        logger.info(
            "Finished %s sweep: %d cases, %d failed in %.2fs",
            sweep.value, len(report.cases), len(report.failures), time.perf_counter() - start
        )
        return report

    def _top_rank(self) -> int:
        algebra = self.config.algebra
        return algebra.rank if algebra is not None else self.config.max_rank

    def _type_a_systems(self, sweep: Sweep) -> List[RootSystem]:
        algebra = self.config.algebra
        if algebra is not None and not algebra.is_type_a:
            raise ValidationError(f"The {sweep.value} sweep runs on A_n only, got {algebra}")
        return [build_root_system(AlgebraId(Family.A, n)) for n in range(1, self._top_rank() + 1)]

    def _any_systems(self) -> List[RootSystem]:
        algebra = self.config.algebra
        if algebra is not None and not algebra.is_type_a:
            return [build_root_system(algebra)]
        return [build_root_system(AlgebraId(Family.A, n)) for n in range(1, self._top_rank() + 1)]

    def _weights(self, rs: RootSystem) -> List[Weight]:
        return dominant_weights_by_level(rs.rank, self.config.max_level)

    def _case(self, rs: RootSystem, label: str, passed: bool, detail: str) -> CaseResult:
        result = CaseResult(str(rs.algebra), label, passed, detail)
        logger.info("%s %s %s: %s", "PASS" if passed else "FAIL", rs.algebra, label, detail)
        return result

    def theorem(self) -> List[CaseResult]:
        """D_{1,1} ... D_{1,n} e^lam against the dominance oracle."""
        cases = []
        for rs in self._type_a_systems(Sweep.THEOREM):
            for lam in self._weights(rs):
                got = brion_demazure_product(rs, lam)
                expected = brion_oracle(rs, lam)
                detail = f"{len(got)} terms"
                if got != expected:
                    detail += f", oracle has {len(expected)}"
                cases.append(self._case(rs, format_weight(lam), got == expected, detail))
        return cases

    def lemma(self) -> List[CaseResult]:
        """w_{1,1} ... w_{1,n} against the sum over W."""
        cases = []
        for rs in self._type_a_systems(Sweep.LEMMA):
            passed = verify_weyl_sum_lemma(rs)
            terms = len(lemma_expansion(rs))
            cases.append(self._case(rs, "w_{1,1}...w_{1,n}", passed, f"{terms} terms"))
        return cases

    def rank2(self) -> List[CaseResult]:
        """The C2 and G2 operators against the dominance oracle."""
        algebra = self.config.algebra
        if algebra is None:
            algebras = [AlgebraId(Family.C2, 2), AlgebraId(Family.G2, 2)]
        elif algebra.family in (Family.C2, Family.G2):
            algebras = [algebra]
        else:
            raise ValidationError(f"The rank2 sweep runs on C2 and G2, got {algebra}")
        cases = []
        for algebra in algebras:
            rs = build_root_system(algebra)
            for lam in self._weights(rs):
                got = brion_rank2(rs, lam, printed=self.printed)
                expected = brion_oracle(rs, lam)
                detail = f"{len(got)} terms"
                if got != expected:
                    detail += f", oracle has {len(expected)}"
                cases.append(self._case(rs, format_weight(lam), got == expected, detail))
        return cases

    def _test_weights(self, rs: RootSystem, rng: random.Random) -> List[Weight]:
        grid = list(product(TEST_LABELS, repeat=rs.rank))
        if len(grid) > SAMPLE_SIZE:
            grid = sorted(rng.sample(grid, SAMPLE_SIZE))
        return grid

    def _random_sums(self, rs: RootSystem, rng: random.Random) -> List[FormalSum]:
        sums = []
        for _ in range(RANDOM_SUMS):
            terms = {}
            for _ in range(rng.randint(1, 4)):
                mu = tuple(rng.choice(TEST_LABELS) for _ in range(rs.rank))
                terms[mu] = rng.randint(-3, 3)
            sums.append(FormalSum(terms, rs.rank))
        return sums

    def braid(self) -> List[CaseResult]:
        """Idempotence, braid relations and reduced-word independence of Demazure operators."""
        algebra = self.config.algebra or AlgebraId(Family.A, DEFAULT_BRAID_RANK)
        rs = build_root_system(algebra)
        rng = random.Random(self.config.seed)
        sums = self._random_sums(rs, rng)
        basis = [monomial(mu) for mu in self._test_weights(rs, rng)]
        cases = []

        for i in range(1, rs.rank + 1):
            bad = [f for f in sums if demazure_D(rs, i, demazure_D(rs, i, f)) != demazure_D(rs, i, f)]
            cases.append(self._case(rs, f"D{i} D{i} = D{i}", not bad, f"{len(sums)} sums, {len(bad)} mismatches"))
            bad = [f for f in sums if demazure_d(rs, i, demazure_d(rs, i, f)) != -demazure_d(rs, i, f)]
            cases.append(self._case(rs, f"d{i} d{i} = -d{i}", not bad, f"{len(sums)} sums, {len(bad)} mismatches"))

        for i in range(1, rs.rank + 1):
            for j in range(i + 1, rs.rank + 1):
                m = coxeter_exponent(rs, i, j)
                left = [i if k % 2 == 0 else j for k in range(m)]
                right = [j if k % 2 == 0 else i for k in range(m)]
                bad = [f for f in sums + basis if demazure_word(rs, left, f) != demazure_word(rs, right, f)]
                label = " ".join(f"D{k}" for k in left) + " = " + " ".join(f"D{k}" for k in right)
                cases.append(self._case(rs, label, not bad, f"{len(sums) + len(basis)} sums, {len(bad)} mismatches"))

        for w in enumerate_group(rs):
            words = all_reduced_words(w)
            if len(words) < 2:
                continue
            bad = 0
            for f in basis:
                results = {demazure_word(rs, word, f) for word in words}
                bad += len(results) > 1
            cases.append(self._case(rs, f"D_w, w={w}", bad == 0, f"{len(words)} words, {len(basis)} weights, {bad} mismatches"))
        return cases

    def character(self) -> List[CaseResult]:
        """Demazure character against exact Weyl division."""
        cases = []
        for rs in self._any_systems():
            for lam in self._weights(rs):
                demazure = character_demazure(rs, lam)
                weyl = character_weyl_division(rs, lam)
                cases.append(self._case(rs, format_weight(lam), demazure == weyl, f"dimension {demazure.total()}"))
        return cases

    def cones(self) -> List[CaseResult]:
        """Signed cone counts against the dominance oracle on the root box with a one-step margin."""
        cases = []
        for rs in self._any_systems():
            for lam in self._weights(rs):
                oracle = brion_oracle(rs, lam)
                box = root_box(rs, lam, margin=1)
                bad = [mu for mu in box if brion_coefficient(rs, lam, mu) != oracle.coefficient(mu)]
                detail = f"{len(box)} points"
                if bad:
                    detail += f", first mismatch at {format_weight(bad[0])}"
                cases.append(self._case(rs, format_weight(lam), not bad, detail))
        return cases

    def expansion(self) -> List[CaseResult]:
        """Reconstruction, unit leading coefficient and type-A nonnegativity of polytope expansions."""
        cases = []
        for rs in self._any_systems():
            for lam in self._weights(rs):
                character = character_demazure(rs, lam)
                result = polytope_expansion(rs, lam, character)
                problems = []
                if result.reconstruct(rs) != character:
                    problems.append("reconstruction differs")
                if result.coefficient(lam) != 1:
                    problems.append(f"A(lam,lam) = {result.coefficient(lam)}")
                if rs.algebra.is_type_a and result.negative:
                    problems.append("negative at " + " ".join(format_weight(mu) for mu in result.negative))
                detail = "; ".join(problems) or f"{len(result.coefficients)} coefficients"
                cases.append(self._case(rs, format_weight(lam), not problems, detail))
        return cases

