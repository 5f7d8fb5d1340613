"""Command-line surface: exact tables for counts, identities, expectations,
deviations, series, free products, and the verification suite.

Rational cells are printed as 'num/den' (or a bare integer) so that every
value round-trips through Fraction(); runs with identical flags produce
byte-identical output.  Decimal columns are opt-in display annotations and
never feed back into any computation.
"""

from __future__ import annotations

import decimal
import functools
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

import click

from . import counting, freeproduct, radial, verify
from .algebra import AlgebraElement, mul, parse_element, w_n_explicit
from .words import CapExceededError, parse_word, word_count


def render_cell(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def json_cell(value: object):
    if isinstance(value, (bool, int, str)):
        return value
    return str(value)


def emit_table(columns: Sequence[str], rows: Sequence[Sequence[object]], fmt: str) -> None:
    if fmt == "json":
        records = [
            {name: json_cell(value) for name, value in zip(columns, row)} for row in rows
        ]
        click.echo(json.dumps(records, indent=2))
    else:
        click.echo(",".join(columns))
        for row in rows:
            click.echo(",".join(render_cell(v) for v in row))


def approx_decimal(value: Fraction | int, digits: int, sqrt: bool = False) -> str:
    """Fixed-precision decimal rendering (display only; optionally of the
    square root, which is how squared quantities are shown unsquared)."""
    ctx = decimal.Context(prec=max(digits, 1))
    d = ctx.divide(decimal.Decimal(int(Fraction(value).numerator)),
                   decimal.Decimal(int(Fraction(value).denominator)))
    if sqrt:
        d = ctx.sqrt(d)
    return str(d)


def core_errors(fn: Callable) -> Callable:
    """Map domain errors onto exit code 2 (bad input)."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BrokenPipeError:
            sys.exit(0)
        except (ValueError, CapExceededError, OSError, json.JSONDecodeError) as exc:
            raise click.UsageError(str(exc))

    return wrapper


format_option = click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
    show_default=True, help="Output format.",
)
decimals_option = click.option(
    "--decimals", type=click.IntRange(min=1), default=None,
    help="Append decimal approximation columns with this many digits.",
)
letters_option = click.option(
    "--letters", is_flag=True, help="Accept/print a, b, c, ... for g1, g2, g3, ..."
)
cap_option = click.option(
    "--cap", type=click.IntRange(min=1), default=None,
    help="Override the enumeration/product size cap.",
)


@click.group()
@click.version_option(package_name="freeradial", prog_name="freeradial")
def main() -> None:
    """Exact computations in the group algebra of a free group and the
    subalgebra spanned by the level sums w_n."""


@main.command()
@click.option("--k", type=click.IntRange(min=2), required=True, help="Free group rank.")
@click.option("--n-max", type=click.IntRange(min=2), required=True, help="Largest word length.")
@format_option
@decimals_option
@core_errors
def counts(k: int, n_max: int, fmt: str, decimals: int | None) -> None:
    """First/last-letter word counts alpha, beta, gamma per length."""
    table = counting.count_table(k, n_max)
    ck = counting.constant_C(k)
    columns = ["n", "alpha", "beta", "gamma", "total_check", "drift_alpha", "within_C"]
    if decimals:
        columns.append("drift_alpha_dec")
    rows = []
    for n in range(2, n_max + 1):
        a, b, g = table.triple(n)
        level = (2 * k - 1) ** (n - 1)
        drift = Fraction(a) - Fraction(level, 2 * k)
        within = all(abs(Fraction(v) - Fraction(level, 2 * k)) <= ck for v in (a, b, g))
        row: list[object] = [n, a, b, g, (2 * k - 2) * a + b + g == level, drift, within]
        if decimals:
            row.append(approx_decimal(drift, decimals))
        rows.append(row)
    emit_table(columns, rows, fmt)


@main.command()
@click.option("--k", type=click.IntRange(min=2), required=True)
@click.option("--n-max", type=click.IntRange(min=1), default=6, show_default=True)
@format_option
@cap_option
@core_errors
def identities(k: int, n_max: int, fmt: str, cap: int | None) -> None:
    """Degree-one product identities and norms of the level sums, checked
    by explicit convolution."""
    columns = ["n", "relation", "ok", "norm_sq", "norm_ok"]
    rows = []
    w1 = w_n_explicit(k, 1, cap=cap)
    for n in range(1, n_max + 1):
        wn = w_n_explicit(k, n, cap=cap)
        lhs = mul(w1, wn, cap=cap)
        if n == 1:
            relation = f"w1*w1 = w2 + {2 * k}*w0"
            rhs = w_n_explicit(k, 2, cap=cap) + w_n_explicit(k, 0).scalar_mul(2 * k)
        else:
            relation = f"w1*w{n} = w{n + 1} + {2 * k - 1}*w{n - 1}"
            rhs = w_n_explicit(k, n + 1, cap=cap) + w_n_explicit(k, n - 1, cap=cap).scalar_mul(
                2 * k - 1
            )
        norm = wn.l2_norm_sq()
        rows.append([n, relation, lhs == rhs, norm, norm == word_count(k, n)])
    emit_table(columns, rows, fmt)


@main.command()
@click.option("--k", type=click.IntRange(min=2), required=True)
@click.option("--x", "x_text", default=None, help="Single word (grammar: 'g1 g2^-1').")
@click.option(
    "--input", "input_path", default=None,
    help="Element file with '<rational> <word>' lines ('-' for stdin).",
)
@format_option
@decimals_option
@letters_option
@core_errors
def expect(
    k: int, x_text: str | None, input_path: str | None, fmt: str,
    decimals: int | None, letters: bool,
) -> None:
    """Expectation onto the radial subalgebra, as coefficients of w_n."""
    if x_text is not None and input_path is not None:
        raise click.UsageError("use either --x or --input, not both")
    if x_text is not None:
        element = AlgebraElement.from_word(parse_word(x_text, k, letters=letters))
    else:
        if input_path is None or input_path == "-":
            text = sys.stdin.read()
        else:
            with open(input_path, "r", encoding="utf-8") as fh:
                text = fh.read()
        element = parse_element(text, k, letters=letters)
    result = radial.expect(element)
    columns = ["n", "coeff"]
    if decimals:
        columns.append("coeff_dec")
    rows = []
    for n in range(result.degree + 1):
        row: list[object] = [n, result.coeff(n)]
        if decimals:
            row.append(approx_decimal(result.coeff(n), decimals))
        rows.append(row)
    emit_table(columns, rows, fmt)


@main.command()
@click.option("--k", type=click.IntRange(min=2), required=True)
@click.option("--x", "x_text", required=True, help="Left word.")
@click.option("--y", "y_text", required=True, help="Right word.")
@click.option("--n-max", type=click.IntRange(min=0), required=True)
@format_option
@decimals_option
@letters_option
@cap_option
@core_errors
def deviation(
    k: int, x_text: str, y_text: str, n_max: int, fmt: str,
    decimals: int | None, letters: bool, cap: int | None,
) -> None:
    """Squared deviation of the sandwich expectation per level, against the
    level-independent squared bound."""
    x = parse_word(x_text, k, letters=letters)
    y = parse_word(y_text, k, letters=letters)
    bound = radial.deviation_bound(len(x), len(y), k)
    columns = ["n", "delta_sq", "delta_sq_times_norm_sq", "bound_H_sq", "ok"]
    if decimals:
        columns.append("delta_dec")
    rows = []
    for n in range(n_max + 1):
        delta_sq = radial.deviation(x, y, n, cap=cap)
        scaled = delta_sq * word_count(k, n)
        row: list[object] = [n, Fraction(delta_sq), Fraction(scaled), bound, scaled <= bound]
        if decimals:
            row.append(approx_decimal(delta_sq, decimals, sqrt=True))
        rows.append(row)
    emit_table(columns, rows, fmt)


@main.command()
@click.option("--k", type=click.IntRange(min=2), required=True)
@click.option("--x", "x_text", required=True)
@click.option("--y", "y_text", required=True)
@click.option("--n-max", type=click.IntRange(min=0), required=True)
@format_option
@decimals_option
@letters_option
@cap_option
@core_errors
def series(
    k: int, x_text: str, y_text: str, n_max: int, fmt: str,
    decimals: int | None, letters: bool, cap: int | None,
) -> None:
    """Terms and partial sums of the normalized squared-deviation series."""
    x = parse_word(x_text, k, letters=letters)
    y = parse_word(y_text, k, letters=letters)
    sums = radial.partial_sum_criterion(x, y, n_max, cap=cap)
    columns = ["n", "term", "partial_sum"]
    if decimals:
        columns += ["term_dec", "partial_sum_dec"]
    rows = []
    previous = Fraction(0)
    for n, total in enumerate(sums):
        term = total - previous
        previous = total
        row: list[object] = [n, term, total]
        if decimals:
            row += [approx_decimal(term, decimals), approx_decimal(total, decimals)]
        rows.append(row)
    emit_table(columns, rows, fmt)


@main.group()
def freeproduct_group() -> None:
    """Free products of finitely generated abelian groups."""


# expose under the natural name while keeping the function name importable
main.add_command(freeproduct_group, name="freeproduct")


@freeproduct_group.command("chi")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--x", "x_text", required=True, help="JSON syllable list for x.")
@click.option("--y", "y_text", required=True, help="JSON syllable list for y.")
@click.option("--n-max", type=click.IntRange(min=0), required=True)
@format_option
@cap_option
@core_errors
def freeproduct_chi(
    config_path: str, x_text: str, y_text: str, n_max: int, fmt: str, cap: int | None
) -> None:
    """Middle-word counts chi_n, the quadratic bound, and the squared norm
    of the sandwich expectation."""
    cfg = freeproduct.load_config(config_path)
    x = freeproduct.parse_fp_word(x_text, cfg)
    y = freeproduct.parse_fp_word(y_text, cfg)
    columns = ["n", "chi_size", "bound", "ok", "norm_sq_num", "norm_sq_den"]
    rows = []
    for n in range(n_max + 1):
        element, size = freeproduct.expect_fp(x, y, n, cfg, cap=cap)
        norm_sq = Fraction(element.norm_sq())
        bound = (n + 1) * (2 * n + 1)
        ok = size <= bound and norm_sq <= size * size
        rows.append([n, size, bound, ok, norm_sq.numerator, norm_sq.denominator])
    emit_table(columns, rows, fmt)


@main.command("verify")
@click.option("--k", type=click.IntRange(min=2), default=2, show_default=True)
@click.option("--n-max", type=click.IntRange(min=2), default=8, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Emit reports as JSON.")
@click.option(
    "--checks", default=None,
    help="Comma-separated subset of checks (default: all).",
)
@core_errors
def verify_cmd(k: int, n_max: int, as_json: bool, checks: str | None) -> None:
    """Run the oracle cross-check suite; exit 1 if anything fails."""
    selected = None if checks is None else tuple(s for s in checks.split(",") if s)
    reports = verify.run_suite(k=k, n_max=n_max, checks=selected)
    failures = [r for r in reports if not r.passed]
    if as_json:
        click.echo(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        for report in reports:
            click.echo(str(report))
        click.echo(f"{len(reports) - len(failures)}/{len(reports)} checks passed")
    if failures:
        sys.exit(1)


if __name__ == "__main__":
    main()
