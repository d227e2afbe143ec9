"""Batch pipeline and command line interface.

Subcommands: convert (between Gauss and DT codes), widths (one diagram),
sweep (a table of links to CSV or JSON plus certificate files), verify
(replay certificate files).

Exit codes: 0 success, 1 usage, 2 input or verification error, 3 budget
exhausted under --strict.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path

from .codec import (
    CodecError,
    GaussCode,
    dt_to_gauss,
    gauss_to_dt,
    parse_dt,
    parse_gauss,
    serialize_dt,
    serialize_gauss,
)
from .coloring import (
    ColoringError,
    parse_certificate,
    serialize_certificate,
    verify_certificate,
    widths_of_sequence,
)
from .derive import (
    DeriveError,
    LinkMetadata,
    classify_trunk,
    derive_report,
)
from .diagram import DiagramError, build_diagram, detect_cut_split
from .search import (
    Objective,
    SearchBudget,
    SearchError,
    Status,
    WidthResult,
    exact_widths,
    staged_trunk6,
    wirtinger_upper,
)


class CliError(ValueError):
    """Bad table input or unusable pipeline request."""


_AUTO_EXACT_MAX_CROSSINGS = 12
_NAME_RE = re.compile(r"[A-Za-z0-9_.\-]+$")


@dataclass(frozen=True)
class TableEntry:
    name: str
    fmt: str
    code: str
    is_prime: bool | None = None
    bridge_lower: int | None = None


@dataclass
class ReportRow:
    name: str
    n_crossings: int | None = None
    n_components: int | None = None
    cut_split: bool | None = None
    wirt_upper: int | None = None
    trunk_value: int | None = None
    trunk_status: str = ""
    lex_multiset: str = ""
    sum_width: int | None = None
    height: int | None = None
    dbc_bound: str = ""
    tube_3x1: bool | None = None
    certificate_path: str = ""
    error: str = ""


def parse_table(text: str, source: str = "table") -> list[TableEntry]:
    """Parse the tab-separated link table format.

    Columns: name, format (gauss|dt), code, then optional is_prime (0/1)
    and bridge_lower columns.  '#' starts a comment line; blank lines are
    skipped; names must be unique filenames-safe tokens.
    """
    entries = []
    names = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 3 or len(parts) > 5:
            raise CliError(f"{source}:{lineno}: expected 3 to 5 tab-separated columns")
        name, fmt, code = parts[0].strip(), parts[1].strip(), parts[2].strip()
        if not _NAME_RE.match(name):
            raise CliError(f"{source}:{lineno}: bad link name {name!r}")
        if name in names:
            raise CliError(f"{source}:{lineno}: duplicate link name {name!r}")
        names.add(name)
        if fmt not in ("gauss", "dt"):
            raise CliError(f"{source}:{lineno}: unknown format {fmt!r}")
        is_prime: bool | None = None
        bridge_lower: int | None = None
        if len(parts) >= 4 and parts[3].strip():
            token = parts[3].strip().lower()
            if token not in ("0", "1", "true", "false"):
                raise CliError(f"{source}:{lineno}: bad is_prime {parts[3]!r}")
            is_prime = token in ("1", "true")
        if len(parts) == 5 and parts[4].strip():
            try:
                bridge_lower = int(parts[4])
            except ValueError as exc:
                raise CliError(
                    f"{source}:{lineno}: bad bridge_lower {parts[4]!r}"
                ) from exc
            if bridge_lower < 1:
                raise CliError(f"{source}:{lineno}: bridge_lower must be >= 1")
        entries.append(TableEntry(name, fmt, code, is_prime, bridge_lower))
    return entries


def load_code(fmt: str, code: str) -> GaussCode:
    if fmt == "gauss":
        return parse_gauss(code)
    if fmt == "dt":
        return dt_to_gauss(parse_dt(code))
    raise CliError(f"unknown code format {fmt!r}")


def detect_format(code: str) -> str:
    s = code.strip()
    if s.startswith("lengths:") or not re.search(r"[OUou]", s):
        return "dt"
    return "gauss"


def bundled_sample_path() -> Path:
    """Filesystem path of the bundled sample link table."""
    return Path(str(resources.files("linkwidth").joinpath("data/sample_links.tsv")))


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------


def _result_from_events(diagram, events, status, wirt, note=None) -> WidthResult:
    lex, total, peak = widths_of_sequence(events)
    return WidthResult(
        status=status,
        lex=lex,
        sum_width=total,
        trunk=peak,
        certificate=tuple(events),
        certificates={obj: tuple(events) for obj in Objective},
        wirtinger_upper=wirt[0],
        note=note,
    )


def _witness_upper(diagram, wirt) -> WidthResult:
    from .coloring import evaluate_seed_order

    state = evaluate_seed_order(diagram, sorted(wirt[1]), skip_colored=True)
    return _result_from_events(
        diagram, state.events, Status.UPPER_BOUND, wirt, note="seed-count witness"
    )


def _dispatch(diagram, wirt, budget, mode, objective) -> WidthResult:
    """Pick the search strategy.

    auto runs the exact search on small or two-seed diagrams, falls back to
    the staged search on large ones, and keeps whichever honest bound it can
    get otherwise.  Results are deterministic for a given budget; no wall
    clock is consulted unless the budget sets one.
    """
    if mode == "exact":
        return exact_widths(diagram, objective=objective, budget=budget)
    if mode == "staged":
        events = staged_trunk6(diagram)
        if events is not None:
            return _result_from_events(
                diagram, events, Status.UPPER_BOUND, wirt, note="staged"
            )
        return _witness_upper(diagram, wirt)
    if mode != "auto":
        raise CliError(f"unknown mode {mode!r}")
    if wirt[0] <= 2 or diagram.n_crossings <= _AUTO_EXACT_MAX_CROSSINGS:
        result = exact_widths(diagram, objective=objective, budget=budget)
        if result.status is Status.EXACT:
            return result
        events = staged_trunk6(diagram)
        if events is not None and widths_of_sequence(events)[2] < result.trunk:
            return _result_from_events(
                diagram, events, Status.UPPER_BOUND, wirt, note="staged after budget"
            )
        return result
    events = staged_trunk6(diagram)
    if events is not None:
        return _result_from_events(
            diagram, events, Status.UPPER_BOUND, wirt, note="staged"
        )
    return exact_widths(diagram, objective=objective, budget=budget)


def run_pipeline(
    entry: TableEntry,
    budget: SearchBudget | None = None,
    mode: str = "auto",
    objective: Objective = Objective.LEX,
) -> tuple[ReportRow, str | None, str]:
    """Process one table entry.

    Returns the report row, the certificate text (None on error), and the
    search status value for summary accounting.  Entry-level failures land
    in the row's error column instead of raising.
    """
    row = ReportRow(name=entry.name)
    try:
        code = load_code(entry.fmt, entry.code)
        diagram = build_diagram(code)
        row.n_crossings = diagram.n_crossings
        row.n_components = diagram.n_components
        if diagram.n_strands == 0:
            raise CliError("empty diagram")
        witnesses = detect_cut_split(diagram)
        row.cut_split = bool(witnesses)
        wirt = wirtinger_upper(diagram)
        assert wirt is not None
        row.wirt_upper = wirt[0]
        result = _dispatch(diagram, wirt, budget, mode, objective)
        meta = LinkMetadata(
            entry.name, entry.is_prime, entry.bridge_lower, provenance="table"
        )
        trunk_status = classify_trunk(result, meta, cut_split=row.cut_split)
        report = derive_report(result.certificate, result.trunk, trunk_status)
        row.trunk_value = result.trunk
        row.trunk_status = str(trunk_status)
        row.lex_multiset = str(result.lex)
        row.sum_width = result.sum_width
        row.height = report.height
        row.dbc_bound = "{" + ",".join(str(b) for b in report.dbc_bound) + "}"
        row.tube_3x1 = report.tube_3x1
        cert = serialize_certificate(
            result.certificate, name=entry.name, gauss=serialize_gauss(code)
        )
        return row, cert, result.status.value
    except (
        CodecError,
        ColoringError,
        DiagramError,
        SearchError,
        DeriveError,
        CliError,
    ) as exc:
        row.error = str(exc)
        return row, None, "error"


def _pipeline_worker(args):
    entry, budget, mode, objective = args
    return run_pipeline(entry, budget=budget, mode=mode, objective=objective)


def _resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        env = os.environ.get("LINKWIDTH_JOBS", "").strip()
        jobs = int(env) if env else 1
    if jobs < 1:
        raise CliError("jobs must be >= 1")
    return jobs


def sweep(
    entries: list[TableEntry],
    out_path: str | Path,
    fmt: str = "csv",
    jobs: int | None = None,
    budget: SearchBudget | None = None,
    mode: str = "auto",
    objective: Objective = Objective.LEX,
    strict: bool = False,
) -> tuple[list[ReportRow], str, int]:
    """Run the pipeline over a table and write the report plus certificates.

    Output rows follow the input order and are byte-identical for any jobs
    count.  Certificates are written next to the report, one file per link.
    Returns (rows, summary line, exit code).
    """
    if fmt not in ("csv", "json"):
        raise CliError(f"unknown report format {fmt!r}")
    jobs = _resolve_jobs(jobs)
    work = [(e, budget, mode, objective) for e in entries]
    if jobs == 1:
        outcomes = [_pipeline_worker(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_pipeline_worker, work))

    out_path = Path(out_path)
    if out_path.parent:
        out_path.parent.mkdir(parents=True, exist_ok=True)
    rows = []
    counts = {"exact": 0, "upper-bound": 0, "bounded": 0, "error": 0}
    for row, cert, status in outcomes:
        counts[status] += 1
        if cert is not None:
            cert_name = f"{row.name}.cert"
            (out_path.parent / cert_name).write_text(cert, encoding="utf-8")
            row.certificate_path = cert_name
        rows.append(row)

    out_path.write_text(_render_rows(rows, fmt), encoding="utf-8")
    summary = (
        f"rows={len(rows)} exact={counts['exact']} "
        f"upper-bound={counts['upper-bound']} bounded={counts['bounded']} "
        f"errors={counts['error']}"
    )
    code = 3 if strict and counts["bounded"] else 0
    return rows, summary, code


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _render_rows(rows: list[ReportRow], fmt: str) -> str:
    names = [f.name for f in fields(ReportRow)]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(names)
        for row in rows:
            writer.writerow([_cell(getattr(row, n)) for n in names])
        return buf.getvalue()
    payload = [{n: getattr(row, n) for n in names} for row in rows]
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Command line
# ---------------------------------------------------------------------------


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A003 - argparse hook
        raise _UsageError(message)


def _budget_from_args(args) -> SearchBudget:
    return SearchBudget(
        max_states=args.budget_states,
        time_limit=args.time_limit,
    )


def _add_search_flags(sub) -> None:
    sub.add_argument(
        "--objective",
        choices=[o.value for o in Objective],
        default="lex",
        help="which functional the primary certificate optimizes",
    )
    sub.add_argument(
        "--mode",
        choices=["exact", "staged", "auto"],
        default="auto",
        help="search strategy",
    )
    sub.add_argument(
        "--budget-states",
        type=int,
        default=200_000,
        metavar="N",
        help="exact search state limit",
    )
    sub.add_argument(
        "--time-limit",
        type=float,
        default=None,
        metavar="SECONDS",
        help="exact search wall clock limit (makes results machine dependent)",
    )
    sub.add_argument(
        "--strict",
        action="store_true",
        help="exit 3 when any result is budget-limited",
    )


def _build_parser() -> _Parser:
    parser = _Parser(prog="linkwidth", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("convert", help="convert between Gauss and DT codes")
    p.add_argument("code")
    p.add_argument("--input-format", choices=["gauss", "dt", "auto"], default="auto")
    p.add_argument("--to", choices=["gauss", "dt"], required=True)
    p.set_defaults(func=_cmd_convert)

    p = subs.add_parser("widths", help="widths of one diagram")
    p.add_argument("code")
    p.add_argument("--input-format", choices=["gauss", "dt", "auto"], default="auto")
    p.add_argument("--cert", metavar="PATH", help="write the certificate here")
    _add_search_flags(p)
    p.set_defaults(func=_cmd_widths)

    p = subs.add_parser("sweep", help="run a table of links")
    p.add_argument(
        "table",
        nargs="?",
        default=None,
        help="link table path (default: the bundled sample)",
    )
    p.add_argument("--out", required=True, metavar="PATH", help="report file")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument(
        "--jobs",
        type=int,
        default=None,
        metavar="N",
        help="parallel workers (default: LINKWIDTH_JOBS or 1)",
    )
    _add_search_flags(p)
    p.set_defaults(func=_cmd_sweep)

    p = subs.add_parser("verify", help="replay certificate files")
    p.add_argument("certs", nargs="+", metavar="CERT")
    p.set_defaults(func=_cmd_verify)

    return parser


def _cmd_convert(args) -> int:
    fmt = args.input_format if args.input_format != "auto" else detect_format(args.code)
    code = load_code(fmt, args.code)
    if args.to == "gauss":
        print(serialize_gauss(code))
    else:
        print(serialize_dt(gauss_to_dt(code)))
    return 0


def _cmd_widths(args) -> int:
    fmt = args.input_format if args.input_format != "auto" else detect_format(args.code)
    entry = TableEntry(name="input", fmt=fmt, code=args.code)
    code = load_code(fmt, args.code)
    diagram = build_diagram(code)
    if diagram.n_strands == 0:
        raise CliError("empty diagram")
    witnesses = detect_cut_split(diagram)
    wirt = wirtinger_upper(diagram)
    assert wirt is not None
    result = _dispatch(
        diagram, wirt, _budget_from_args(args), args.mode, Objective(args.objective)
    )
    trunk_status = classify_trunk(
        result, LinkMetadata(entry.name), cut_split=bool(witnesses)
    )
    report = derive_report(result.certificate, result.trunk, trunk_status)
    out = [
        ("crossings", diagram.n_crossings),
        ("components", diagram.n_components),
        ("cut_split", bool(witnesses)),
        ("wirtinger_upper", wirt[0]),
        ("status", result.status.value),
        ("lex", result.lex),
        ("sum", result.sum_width),
        ("trunk", result.trunk),
        ("trunk_status", trunk_status),
        ("thick", report.thick),
        ("thin", report.thin),
        ("height", report.height),
        ("dbc_bound", "{" + ",".join(str(b) for b in report.dbc_bound) + "}"),
        ("dbc_genera", "{" + ",".join(str(g) for g in report.dbc_genera) + "}"),
        ("tube_3x1", report.tube_3x1),
    ]
    for key, value in out:
        print(f"{key}\t{_cell(value) if not isinstance(value, (int, str)) else value}")
    if args.cert:
        text = serialize_certificate(
            result.certificate, name=None, gauss=serialize_gauss(code)
        )
        Path(args.cert).write_text(text, encoding="utf-8")
    if args.strict and result.status is Status.BOUNDED:
        return 3
    return 0


def _cmd_sweep(args) -> int:
    table_path = Path(args.table) if args.table else bundled_sample_path()
    entries = parse_table(
        table_path.read_text(encoding="utf-8"), source=str(table_path)
    )
    _, summary, code = sweep(
        entries,
        out_path=args.out,
        fmt=args.format,
        jobs=args.jobs,
        budget=_budget_from_args(args),
        mode=args.mode,
        objective=Objective(args.objective),
        strict=args.strict,
    )
    print(summary)
    return code


def _cmd_verify(args) -> int:
    failures = 0
    for path in args.certs:
        try:
            text = Path(path).read_text(encoding="utf-8")
            state = verify_certificate(parse_certificate(text))
            lex, total, peak = widths_of_sequence(state.events)
            print(f"{path}: ok lex={lex} sum={total} trunk={peak}")
        except (OSError, ColoringError, CodecError) as exc:
            print(f"{path}: FAILED: {exc}")
            failures += 1
    return 2 if failures else 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (
        CodecError,
        ColoringError,
        DiagramError,
        SearchError,
        DeriveError,
        CliError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
