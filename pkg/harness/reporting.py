"""
Report rendering: JSON, CSV and plain text

JSON output is deterministic. Keys follow the order the payload was built in
and nothing time-dependent is included.
"""
import csv
import io
import json
import logging
import os
from dataclasses import fields
from typing import Any, Dict, Iterable, List, Optional, Sequence

from classgroup.table import ClassGroupTable
from classpoly.hilbert import IntPolynomial
from criterion.conditions import CriterionReport
from database.models import SweepRecord
from harness.sweep import SweepReport

logger = logging.getLogger(__name__)

RECORD_FIELDS = [f.name for f in fields(SweepRecord)]


def to_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2) + '\n'


def _cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (list, tuple)):
        return ';'.join(_cell(v) for v in value)
    return str(value)


def to_csv(rows: Iterable[Dict[str, Any]], fieldnames: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(fieldnames), lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({name: _cell(row.get(name)) for name in fieldnames})
    return buffer.getvalue()


def records_to_csv(records: Iterable[SweepRecord]) -> str:
    return to_csv((r.to_dict() for r in records), RECORD_FIELDS)


def class_group_rows(table: ClassGroupTable) -> List[Dict[str, Any]]:
    torsion = set(table.two_torsion)
    return [
        {'D': table.disc.value, 'a': f.a, 'b': f.b, 'c': f.c, 'two_torsion': f in torsion}
        for f in table.forms
    ]


def polynomial_rows(D: int, polynomial: IntPolynomial) -> List[Dict[str, Any]]:
    return [{'D': D, 'power': k, 'coefficient': c} for k, c in enumerate(polynomial.coeffs)]


def criterion_rows(report: CriterionReport) -> List[Dict[str, Any]]:
    base = {
        'D': report.D,
        'p': report.p,
        'inert': report.inert,
        'applicable': report.applicable,
        'predicted_nonempty': report.predicted_nonempty,
        'predicted_count': report.predicted_count,
    }
    if not report.per_ell:
        return [dict(base, reason=report.reason)]
    return [
        dict(base, ell=c.ell, condition_met=c.condition_met, which_subcase=c.which_subcase.value)
        for c in report.per_ell
    ]


CRITERION_FIELDS = (
    'D', 'p', 'inert', 'applicable', 'predicted_nonempty', 'predicted_count',
    'ell', 'condition_met', 'which_subcase', 'reason',
)


def format_class_group(table: ClassGroupTable) -> str:
    lines = [
        f"D = {table.disc.value}",
        f"h = {table.h}",
        "forms: " + ' '.join(str(f) for f in table.forms),
        "2-torsion: " + ' '.join(str(f) for f in table.two_torsion),
        f"mu = {table.mu}",
        f"|Pic[2]| = 2^(mu-1) = {2 ** (table.mu - 1)}",
    ]
    return '\n'.join(lines) + '\n'


def format_polynomial(D: int, polynomial: IntPolynomial) -> str:
    return f"H_{D}(x) = {polynomial}\n"


def format_criterion(report: CriterionReport) -> str:
    lines = [f"D = {report.D}, p = {report.p}", f"inert: {_cell(report.inert)}"]
    if not report.applicable:
        lines.append(f"not applicable: {report.reason}")
        return '\n'.join(lines) + '\n'
    for c in report.per_ell:
        lines.append(f"  ell={c.ell}: {'met' if c.condition_met else 'fails'} ({c.which_subcase.value})")
    lines.append(f"predicted nonempty: {_cell(report.predicted_nonempty)}")
    lines.append(f"predicted count: {report.predicted_count}")
    return '\n'.join(lines) + '\n'


def format_record(record: SweepRecord) -> str:
    lines = [
        f"D = {record.D}, p = {record.p}, h = {record.h}, mu = {record.mu}",
        f"observed count: {record.observed_count}",
    ]
    if record.observed_roots is not None:
        lines.append("roots: " + ' '.join(str(r) for r in record.observed_roots))
    lines.append(f"squarefree: {_cell(record.squarefree)}")
    if record.agreement is not None:
        lines.append(f"predicted count: {record.predicted_count}")
        lines.append(f"agreement: {_cell(record.agreement)}")
    return '\n'.join(lines) + '\n'


def summary_line(report: SweepReport) -> str:
    s = report.summary
    return (
        f"pairs={s['pairs']} nonempty={s['nonempty']} empty={s['empty']} "
        f"disagreements={s['disagreements']}"
    )


def format_sweep(report: SweepReport) -> str:
    lines = [
        f"{r.D:>6} {r.p:>8}  observed={r.observed_count} predicted={r.predicted_count}"
        + ('' if r.agreement else '  DISAGREEMENT')
        for r in report.records
    ]
    lines.append(summary_line(report))
    return '\n'.join(lines) + '\n'


def write_output(text: str, out_path: Optional[str] = None) -> None:
    """Write a rendered report to out_path, or to stdout when no path is given"""
    if out_path is None:
        print(text, end='')
        return
    os.makedirs(os.path.dirname(os.path.abspath(out_path)), exist_ok=True)
    with open(out_path, 'w', encoding='utf-8', newline='') as handle:
        handle.write(text)
    logger.info(f"Report written to {out_path}")
