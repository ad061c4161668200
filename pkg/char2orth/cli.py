"""
Command-line interface for char2orth

    char2orth normalize --field gf2 --form "[1,1]_|_[1,1]"
    char2orth classify  --field gf2 --form "[0,0]_|_[0,0]" --phi "null(1,2)"
    char2orth conjugate --field gf2 --form "[1,1]" --phi "tau(x1)" --psi "tau(y1)"
    char2orth fixgroup  --field gf2 --form "<0,0>" --phi "radswap(1,2)"
    char2orth census    --field gf2 --form "[0,0]_|_[0,0]"
    char2orth verify    --field gf2 --form "[1,1]_|_<0>"

Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget exceeded.
"""

import logging
from collections import defaultdict
from typing import List, NoReturn, Optional, Sequence

import typer

from .checks import VerificationJob, VerificationManager, tampered_matrix
from .config import get_settings, override_settings, reset_settings
from .errors import BudgetExceeded, Char2OrthError, VerificationFailed
from .fixedpoints import fixed_structure_report
from .involutions import are_conjugate, census, classify, find_conjugator
from .logging_setup import configure_logging
from .models import (
    CensusReport,
    CheckStatus,
    ConjugacyReport,
    DescriptorReport,
    FixedStructureReport,
    OutputFormat,
    Report,
    Verdict,
    VerifyReport,
    WittReport,
)
from .orthogroup import enumerate_group, matrix_codes
from .parsing import parse_field, parse_form, parse_isometry
from .quadspace import QuadForm, arf_invariant, is_nonsingular, witt_decompose

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="char2orth",
    help="Orthogonal groups, involutions and fixed-point groups of quadratic forms in characteristic 2.",
    no_args_is_help=True,
    add_completion=False,
)

FIELD_OPTION = typer.Option("gf2", "--field", help="gf2 | gf4 | gf8 | gf16[:modulus] | gf2^m | f2t")
FORM_OPTION = typer.Option(..., "--form", help='Signature such as "[0,0]_|_<1,t>"; "" is the empty form')
OUT_OPTION = typer.Option(OutputFormat.TABLE, "--out", case_sensitive=False)
BUDGET_OPTION = typer.Option(None, "--budget", min=1, help="Enumeration frontier n*log2|k|")
JOBS_OPTION = typer.Option(None, "--jobs", min=1, help="Worker processes for enumeration")


@app.callback()
def main(
    log_json: Optional[bool] = typer.Option(None, "--log-json/--no-log-json", help="JSON log lines"),
    log_level: Optional[str] = typer.Option(None, "--log-level"),
):
    reset_settings()
    settings = get_settings()
    configure_logging(log_level or settings.log_level, settings.log_json if log_json is None else log_json)


def _form(field: str, form: str) -> QuadForm:
    return parse_form(parse_field(field), form)


def _setup(budget: Optional[int], jobs: Optional[int]) -> None:
    override_settings(budget_bits=budget, jobs=jobs)


def _fail(error: Char2OrthError) -> NoReturn:
    typer.echo(f"error: {error}", err=True)
    witness = getattr(error, "witness", None)
    if witness is not None:
        typer.echo(f"witness: {list(witness)}", err=True)
    raise typer.Exit(code=error.exit_code)


def _table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(c) for c in header]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _pairs(items: Sequence) -> str:
    width = max(len(k) for k, _ in items)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in items)


def _descriptor_items(d: DescriptorReport) -> List[tuple]:
    items = [("kind", d.kind.value), ("residue", d.residue), ("length", d.length)]
    if d.dim_u is not None:
        items.append(("dim U", d.dim_u))
    if d.norm_signature:
        items.append(("norms", "<" + ",".join(d.norm_signature) + ">"))
    return items


def _matrix_lines(rows: Sequence[Sequence]) -> str:
    return "\n".join("  " + " ".join(str(c) for c in row) for row in rows)


def render(report: Report) -> str:
    if isinstance(report, WittReport):
        items = [("form", report.form), ("field", report.field), ("dim", report.dimension),
                 ("m", report.witt_index), ("d", report.defect), ("normal form", report.normal_form)]
        if report.aniso_pairs or report.aniso_diag:
            kernel = "_|_".join(f"[{a},{b}]" for a, b in report.aniso_pairs)
            if report.aniso_diag:
                kernel += ("_|_" if kernel else "") + "<" + ",".join(report.aniso_diag) + ">"
            items.append(("kernel", kernel))
        if report.arf is not None:
            items.append(("arf", report.arf))
        return _pairs(items) + "\nchange of basis (rows):\n" + _matrix_lines(report.change_of_basis)
    if isinstance(report, DescriptorReport):
        return _pairs(_descriptor_items(report))
    if isinstance(report, ConjugacyReport):
        text = f"verdict  {report.verdict.value}"
        if report.witness is not None:
            text += "\nconjugator (rows):\n" + _matrix_lines(report.witness)
        return text
    if isinstance(report, FixedStructureReport):
        items = [("form", report.form)] + _descriptor_items(report.descriptor)
        items += [(f"|{k}|", v) for k, v in report.factors.items()]
        items.append(("predicted order", report.predicted_order))
        items += [(f"|{k}| (reference)" if k.startswith("O(") else f"{k} (reference)", v)
                  for k, v in report.reference_orders.items()]
        if report.centralizer_order is not None:
            items.append(("centralizer order", report.centralizer_order))
            items.append(("matches", "yes" if report.matches else "NO"))
        return _pairs(items)
    if isinstance(report, CensusReport):
        rows = [(i, c.descriptor.kind.value, c.descriptor.residue, c.descriptor.length, c.size, c.centralizer_order)
                for i, c in enumerate(report.classes)]
        text = _pairs([("form", report.form), ("group order", report.group_order),
                       ("involutions", report.involution_count), ("classes", len(report.classes))])
        if rows:
            text += "\n\n" + _table(("#", "kind", "residue", "length", "size", "centralizer"), rows)
        text += f"\n\nclass equation {'ok' if report.class_equation_ok else 'BROKEN'}"
        if report.equal_centralizer_pairs:
            text += "\nequal centralizer orders: " + ", ".join(f"{i}~{j}" for i, j in report.equal_centralizer_pairs)
        return text
    if isinstance(report, VerifyReport):
        counts = defaultdict(lambda: {s: 0 for s in CheckStatus})
        for o in report.outcomes:
            counts[o.check.value][o.status] += 1
        rows = [(name, c[CheckStatus.PASS], c[CheckStatus.FAIL], c[CheckStatus.SKIP]) for name, c in counts.items()]
        text = _pairs([("form", report.form), ("group order", report.group_order),
                       ("involutions", report.involutions)])
        if rows:
            text += "\n\n" + _table(("check", "pass", "fail", "skip"), rows)
        for o in report.outcomes:
            if o.status is CheckStatus.FAIL:
                text += f"\nFAIL {o.check.value} on {o.subject}: {o.residual}"
        text += f"\n\n{'PASS' if report.ok else 'FAIL'}: {report.passed} passed, {report.failed} failed, " \
                f"{report.skipped} skipped"
        return text
    return report.to_json()


def _emit(report: Report, out: OutputFormat) -> None:
    typer.echo(report.to_json() if out is OutputFormat.JSON else render(report))


@app.command()
def normalize(field: str = FIELD_OPTION, form: str = FORM_OPTION, out: OutputFormat = OUT_OPTION):
    """Witt decomposition: m, d, anisotropic kernel and change of basis."""
    try:
        q = _form(field, form)
        f = q.field
        w = witt_decompose(q)
        arf = None
        if f.is_finite and q.dim and is_nonsingular(q):
            arf = f.format(arf_invariant(q))
        report = WittReport(
            field=f.name,
            form=q.format(),
            dimension=q.dim,
            witt_index=w.witt_index,
            defect=w.defect,
            aniso_pairs=[[f.format(a), f.format(b)] for a, b in w.aniso_pairs],
            aniso_diag=[f.format(c) for c in w.aniso_diag],
            arf=arf,
            normal_form=w.normal_form.format(f),
            change_of_basis=matrix_codes(f, w.change_of_basis),
        )
    except Char2OrthError as e:
        _fail(e)
    _emit(report, out)


@app.command(name="classify")
def classify_command(
    field: str = FIELD_OPTION,
    form: str = FORM_OPTION,
    phi: str = typer.Option(..., "--phi", help='Expression like "tau(x1)*null(1,2)" or rows "0,1;1,0"'),
    out: OutputFormat = OUT_OPTION,
):
    """Kind, residue, length and norm signature of an involution."""
    try:
        q = _form(field, form)
        report = classify(parse_isometry(q, phi)).to_report()
    except Char2OrthError as e:
        _fail(e)
    _emit(report, out)


@app.command()
def conjugate(
    field: str = FIELD_OPTION,
    form: str = FORM_OPTION,
    phi: str = typer.Option(..., "--phi"),
    psi: str = typer.Option(..., "--psi"),
    out: OutputFormat = OUT_OPTION,
    budget: Optional[int] = BUDGET_OPTION,
):
    """Decide whether two involutions are conjugate in O(q)."""
    try:
        _setup(budget, None)
        q = _form(field, form)
        first, second = classify(parse_isometry(q, phi)), classify(parse_isometry(q, psi))
        verdict = are_conjugate(first, second)
        witness = None
        if verdict is Verdict.TRUE:
            found, g = find_conjugator(first, second)
            if found is Verdict.TRUE:
                witness = matrix_codes(q.field, g.matrix)
        report = ConjugacyReport(field=q.field.name, first=first.to_report(), second=second.to_report(),
                                 verdict=verdict, witness=witness)
    except Char2OrthError as e:
        _fail(e)
    _emit(report, out)


@app.command()
def fixgroup(
    field: str = FIELD_OPTION,
    form: str = FORM_OPTION,
    phi: str = typer.Option(..., "--phi"),
    out: OutputFormat = OUT_OPTION,
    budget: Optional[int] = BUDGET_OPTION,
    jobs: Optional[int] = JOBS_OPTION,
    oracle: bool = typer.Option(True, "--oracle/--no-oracle", help="Compare with the enumerated centralizer"),
):
    """Predicted order and factors of the fixed-point group of an involution."""
    try:
        _setup(budget, jobs)
        q = _form(field, form)
        involution = parse_isometry(q, phi)
        table = None
        if oracle:
            try:
                table = enumerate_group(q)
            except BudgetExceeded as e:
                logger.info(f"No centralizer oracle: {e}")
        report = fixed_structure_report(involution, table)
    except Char2OrthError as e:
        _fail(e)
    _emit(report, out)
    if report.matches is False:
        _fail(VerificationFailed(f"predicted order {report.predicted_order} differs from the centralizer order "
                                 f"{report.centralizer_order}"))


@app.command(name="census")
def census_command(
    field: str = FIELD_OPTION,
    form: str = FORM_OPTION,
    out: OutputFormat = OUT_OPTION,
    budget: Optional[int] = BUDGET_OPTION,
    jobs: Optional[int] = JOBS_OPTION,
):
    """Involution conjugacy classes of an enumerated O(q) with centralizer orders."""
    try:
        _setup(budget, jobs)
        report = census(enumerate_group(_form(field, form)))
    except Char2OrthError as e:
        _fail(e)
    _emit(report, out)
    if not report.class_equation_ok:
        _fail(VerificationFailed("class sizes do not add up to the class equation"))


@app.command()
def verify(
    field: str = FIELD_OPTION,
    form: str = FORM_OPTION,
    out: OutputFormat = OUT_OPTION,
    budget: Optional[int] = BUDGET_OPTION,
    jobs: Optional[int] = JOBS_OPTION,
    seed: int = typer.Option(0, "--seed"),
    tamper: bool = typer.Option(False, "--tamper", hidden=True),
):
    """Run every structure check on every involution of O(q)."""
    try:
        _setup(budget, jobs)
        q = _form(field, form)
        job = VerificationJob(form=q, tamper=tampered_matrix(q) if tamper else None, seed=seed)
        report = VerificationManager().run(job).report
    except Char2OrthError as e:
        _fail(e)
    _emit(report, out)
    if not report.ok:
        _fail(VerificationFailed(f"{report.failed} of {len(report.outcomes)} checks failed"))


if __name__ == "__main__":
    app()
