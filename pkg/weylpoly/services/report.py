"""Text and JSON rendering of computation results and sweep reports."""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from jinja2 import Environment, FileSystemLoader
from tabulate import tabulate

from weylpoly.domain.brion import PolytopeSumReport
from weylpoly.domain.config import OutputFormat
from weylpoly.domain.expansion import PolytopeExpansion
from weylpoly.domain.formal_sum import FormalSum
from weylpoly.domain.root_system import AlgebraId, Weight
from weylpoly.services.verification import SweepReport, format_weight

def _dumps(data: Dict[str, Any]) -> str:
    return json.dumps(data, sort_keys=True, indent=2)

def _sum_table(fs: FormalSum) -> str:
    if not fs:
        return "(empty sum)"
    return tabulate([[format_weight(mu), c] for mu, c in fs.items()], headers=["WEIGHT", "COEFF"])

class ReportService:
    """Renders reports in the configured output format."""

    def __init__(self, format: OutputFormat = OutputFormat.TEXT):
        self.format = format
        template_dir = Path(__file__).parent.parent / 'templates'
        self.jinja_env = Environment(
            loader=FileSystemLoader(str(template_dir)),
            trim_blocks=True,
            lstrip_blocks=True,
        )

    @property
    def is_json(self) -> bool:
        return self.format == OutputFormat.JSON

    def _render(self, template: str, **context) -> str:
        return self.jinja_env.get_template(template).render(**context).rstrip("\n")

    def _sum_report(self, title: str, algebra: AlgebraId, lam: Weight, fs: FormalSum,
                    fields: List[Tuple[str, Any]], verdict: Optional[str] = None) -> str:
        return self._render(
            "sum.txt.j2",
            title=title,
            algebra=algebra,
            weight=format_weight(lam),
            fields=fields,
            table=_sum_table(fs),
            verdict=verdict,
        )

    def character(self, algebra: AlgebraId, lam: Weight, method: str, ch: FormalSum) -> str:
        if self.is_json:
            data = ch.to_json()
            data.update({
                "algebra": str(algebra),
                "lambda": list(lam),
                "method": method,
                "dimension": ch.total(),
                "support": len(ch),
            })
            return _dumps(data)
        fields = [("method", method), ("dimension", ch.total()), ("support", len(ch))]
        return self._sum_report("Character", algebra, lam, ch, fields)

    def polytope_sum(self, algebra: AlgebraId, report: PolytopeSumReport, agrees: Optional[bool] = None) -> str:
        """B_lam with an AGREES/DIFFERS verdict against the dominance oracle when one was computed."""
        verdict = None if agrees is None else ("AGREES" if agrees else "DIFFERS")
        if self.is_json:
            data = report.sum.to_json()
            data.update({
                "algebra": str(algebra),
                "lambda": list(report.lam),
                "method": report.method.value,
                "term_count": report.term_count,
            })
            if verdict is not None:
                data["oracle"] = verdict
            return _dumps(data)
        fields = [("method", report.method.value), ("term_count", report.term_count)]
        return self._sum_report("Polytope sum", algebra, report.lam, report.sum, fields, verdict)

    def operator(self, algebra: AlgebraId, expr: str, lam: Weight, result: FormalSum) -> str:
        if self.is_json:
            data = result.to_json()
            data.update({"algebra": str(algebra), "expr": expr, "lambda": list(lam)})
            return _dumps(data)
        fields = [("expr", expr), ("terms", len(result))]
        return self._sum_report("Operator applied to e^lam", algebra, lam, result, fields)

    def expansion(self, algebra: AlgebraId, expansion: PolytopeExpansion) -> str:
        if self.is_json:
            data = expansion.to_json()
            data["algebra"] = str(algebra)
            return _dumps(data)
        table = tabulate(
            [[format_weight(mu), a] for mu, a in expansion.coefficients],
            headers=["MU", "A(LAM,MU)"]
        )
        return self._render(
            "expansion.txt.j2",
            algebra=algebra,
            weight=format_weight(expansion.lam),
            count=len(expansion.coefficients),
            table=table,
        )

    def sweep(self, report: SweepReport) -> str:
        if self.is_json:
            return _dumps(report.to_json())
        rows: Sequence[List[Any]] = [
            [case.algebra, case.case, "PASS" if case.passed else "FAIL", case.detail]
            for case in report.cases
        ]
        return self._render(
            "sweep.txt.j2",
            sweep=report.sweep.value,
            table=tabulate(rows, headers=["ALGEBRA", "CASE", "RESULT", "DETAIL"]),
            total=len(report.cases),
            passed=len(report.cases) - len(report.failures),
            failed=len(report.failures),
            ok=report.passed,
        )
