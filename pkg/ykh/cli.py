"""Command line interface: ``ykh trace|invariant|compare|verify|esystem|catalog``.

Results go to stdout, one line per result (JSON lines with ``--out json``);
logs and errors go to stderr. Exit status is 0 on success, 1 on an input
error and 2 when a property check fails.
"""

import argparse
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import structlog

from . import __version__, create_engine
from .braid import parse_word
from .cache import ResultCache, canonical_key
from .catalog import FAMILIES, CatalogEntry, builtin_catalog, find, ingest, parse_params, word_kind
from .catalog import instantiate as instantiate_family
from .esystem import is_character_solution, list_solutions, normalize_subset, solve
from .exactcoeff.cyclotomic import format_rational
from .invariants import KINDS, compare_theta_homflypt, compute
from .logging_config import configure_logging
from .schemas import CatalogLine, CompareReport, ESolutionReport, InvariantReport, SuiteReport, TraceReport
from .suites import SUITES, SuiteContext, run_suites
from .trace import TraceEngine
from .utils.config import STRATEGIES, Settings
from .utils.error_handlers import EXIT_OK, handle_engine_error, handle_internal_error
from .utils.exceptions import CatalogError, InvalidParameterError, YKHError
from .utils.monitoring import exposition

logger = structlog.get_logger(__name__)

# word kind each invariant is parsed as
KIND_WORDS = {"phi": "framed", "theta": "classical", "homflypt": "classical", "psi": "singular", "m": "classical"}


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as input errors."""

    def error(self, message: str):
        raise InvalidParameterError(message)


# ------------------------------------------------------------------ helpers


def parse_subset(text: Optional[str], d: int) -> Optional[Tuple[int, ...]]:
    """``"0,2"`` to a validated subset of Z/d; None when absent."""
    if text is None:
        return None
    try:
        residues = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InvalidParameterError(f"--D expects a comma list of residues, got {text!r}") from None
    return normalize_subset(d, residues)


def subsets_for(args: argparse.Namespace) -> List[Tuple[int, ...]]:
    """The subsets a command runs over: --D, {0} for d = 1, otherwise all of them."""
    subset = parse_subset(args.D, args.d)
    if subset is not None:
        return [subset]
    if args.d == 1:
        return [(0,)]
    return [sol.D for sol in list_solutions(args.d)]


def format_subset(subset: Optional[Sequence[int]]) -> str:
    if subset is None:
        return "-"
    return "{" + ",".join(str(m) for m in subset) + "}"


def infer_word_kind(text: str) -> str:
    tokens = text.replace(";", " ").split()
    if any(token.startswith("tau") for token in tokens):
        return "singular"
    if any(token.startswith("t") for token in tokens):
        return "framed"
    return "classical"


def emit(lines: Iterable, output: str) -> None:
    for item in lines:
        print(item.model_dump_json() if output == "json" else item)


def _entries(args: argparse.Namespace, kind: str) -> List[CatalogEntry]:
    """Entries named on the command line, in the order they were given."""
    entries: List[CatalogEntry] = []
    for text in args.words:
        entries.append(CatalogEntry(text, parse_word(text, KIND_WORDS[kind]), "argument"))
    if args.file:
        entries.extend(ingest(args.file))
    if args.entry:
        builtin = builtin_catalog()
        entries.extend(find(builtin, name) for name in args.entry)
    if not entries:
        raise InvalidParameterError("no words given; pass braid text, --file or --entry")
    for entry in entries:
        if entry.word is None:
            raise CatalogError(f"entry {entry.name!r} has no braid word; supply one in a catalog file")
    return entries


# ----------------------------------------------------------------- commands


def _invariant_report(entry: CatalogEntry, kind: str, d: int, subset, variables: str, engine: TraceEngine) -> InvariantReport:
    value = compute(kind, entry.word, d, subset, engine)
    text = value.lambda_form().serialize() if variables == "qlambda" else value.serialize()
    return InvariantReport(
        name=entry.name,
        kind=kind,
        d=value.d,
        D=list(value.D) if value.D is not None else None,
        components=value.components,
        epsilon=value.epsilon,
        strands=value.strands,
        value=text,
        parity=value.parity,
    )


def _format_invariant(report: InvariantReport) -> str:
    return (
        f"{report.name}\t{report.kind} d={report.d} D={format_subset(report.D)}\t{report.value}\t"
        f"components={report.components} epsilon={report.epsilon} strands={report.strands} parity={report.parity}"
    )


def cmd_invariant(args: argparse.Namespace, settings: Settings, engine: TraceEngine) -> int:
    kind = args.kind
    entries = _entries(args, kind)
    if kind in ("m", "homflypt"):
        subsets = [None]
        d = 1 if kind == "homflypt" else args.d
    else:
        subsets = subsets_for(args)
        d = args.d
    cache = ResultCache(settings.cache_dir) if settings.cache_dir else None
    variables = args.vars

    def evaluate(job):
        entry, subset = job

        def run() -> InvariantReport:
            return _invariant_report(entry, kind, d, subset, variables, engine)

        if cache is None:
            return run()
        key = canonical_key(entry.word.serialize(), kind if variables == "qz" else f"{kind}@{variables}", d, subset)
        return cache.get_or_compute(key, run, name=entry.name)

    jobs = [(entry, subset) for entry in entries for subset in subsets]
    with ThreadPoolExecutor(max_workers=settings.workers) as executor:
        reports = list(executor.map(evaluate, jobs))
    emit(reports if settings.output == "json" else [_format_invariant(r) for r in reports], settings.output)
    return EXIT_OK


def _pairs(args: argparse.Namespace, kind: str) -> List[Tuple[CatalogEntry, CatalogEntry]]:
    items = list(args.items)
    if args.file:
        if items:
            raise InvalidParameterError("pass either words or --file, not both")
        entries = ingest(args.file)
    elif len(items) == 1 and Path(items[0]).is_file():
        entries = ingest(items[0])
    elif len(items) == 2:
        entries = [CatalogEntry(text, parse_word(text, KIND_WORDS[kind]), "argument") for text in items]
    else:
        raise InvalidParameterError("compare needs two words or a catalog file holding pairs")
    if len(entries) % 2:
        raise CatalogError(f"a pair file needs an even number of entries, found {len(entries)}")
    return [(entries[i], entries[i + 1]) for i in range(0, len(entries), 2)]


def cmd_compare(args: argparse.Namespace, settings: Settings, engine: TraceEngine) -> int:
    kind = args.kind
    reports: List[CompareReport] = []
    if args.homflypt:
        entries = [CatalogEntry(text, parse_word(text), "argument") for text in args.items]
        if args.file:
            entries.extend(ingest(args.file))
        d = args.d
        for entry in entries:
            for subset in subsets_for(args):
                outcome = compare_theta_homflypt(entry.word, d, subset, engine)
                reports.append(
                    CompareReport(
                        kind="theta",
                        d=d,
                        D=list(subset),
                        left=entry.name,
                        right="homflypt(z/E)",
                        status=outcome.status,
                        left_value=outcome.theta.serialize(),
                        right_value=outcome.rescaled_homflypt.serialize(),
                    )
                )
    else:
        subsets = [None] if kind in ("m", "homflypt") else subsets_for(args)
        d = 1 if kind == "homflypt" else args.d
        for left, right in _pairs(args, kind):
            for subset in subsets:
                a = compute(kind, left.word, d, subset, engine)
                b = compute(kind, right.word, d, subset, engine)
                reports.append(
                    CompareReport(
                        kind=kind,
                        d=d,
                        D=list(a.D) if a.D is not None else None,
                        left=left.name,
                        right=right.name,
                        status="EQUAL" if a.value == b.value else "DIFFER",
                        left_value=a.serialize(),
                        right_value=b.serialize(),
                    )
                )
    if settings.output == "json":
        emit(reports, "json")
    else:
        emit([f"{r.left} | {r.right}\t{r.kind} d={r.d} D={format_subset(r.D)}\t{r.status}" for r in reports], "text")
    return EXIT_OK


def cmd_trace(args: argparse.Namespace, settings: Settings, engine: TraceEngine) -> int:
    kind = args.word_kind or infer_word_kind(args.word)
    word = parse_word(args.word, kind)
    subset = None
    if not args.generic:
        subset = parse_subset(args.D, args.d)
        if subset is None and args.d == 1:
            subset = (0,)
    result, stats = engine.trace_with_strategy(args.d, word, subset=subset)
    if settings.output == "json":
        report = TraceReport(
            word=word.serialize(),
            d=args.d,
            D=list(result.D) if result.D is not None else None,
            strategy=stats.strategy,
            value=result.serialize(),
            statistics=stats.to_dict(),
        )
        emit([report], "json")
    else:
        print(result.serialize())
        peels = " ".join(f"{case}={count}" for case, count in stats.peels.items())
        print(
            f"# strategy={stats.strategy} quadratic_rewrites={stats.quadratic_rewrites} multiplications={stats.multiplications} "
            f"{peels} cache_hits={stats.cache_hits} wall_time={stats.wall_time:.6f}"
        )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, settings: Settings, engine: TraceEngine) -> int:
    ctx = SuiteContext(
        d=args.d,
        engine=engine,
        rng=random.Random(settings.random_seed),
        count=args.count,
        basis_guard=settings.basis_guard,
        series_order=settings.series_order,
    )
    if args.D is not None:
        ctx.subsets = [parse_subset(args.D, args.d)]
    results = run_suites(args.suite or ["all"], ctx)
    reports = [SuiteReport(suite=name, d=args.d, checks=checks, status="ok") for name, checks in results.items()]
    if settings.output == "json":
        emit(reports, "json")
    else:
        emit([f"{r.suite}: ok ({r.checks} checks, d={r.d})" for r in reports], "text")
    return EXIT_OK


def cmd_esystem(args: argparse.Namespace, settings: Settings, engine: TraceEngine) -> int:
    d = args.d
    for item in args.assignments:
        params = parse_params([item])
        if set(params) - {"d"}:
            raise InvalidParameterError(f"esystem accepts only d=<int>, got {item!r}")
        d = params.get("d", d)
    if args.action == "solve":
        subset = parse_subset(args.D, d)
        if subset is None:
            raise InvalidParameterError("esystem solve needs --D")
        solutions = [solve(d, subset)]
    else:
        solutions = list_solutions(d)
    if settings.output == "json":
        emit(
            [
                ESolutionReport(
                    d=sol.d,
                    D=list(sol.D),
                    E=format_rational(sol.e_d),
                    values=[v.serialize() for v in sol.values],
                    character=is_character_solution(sol),
                )
                for sol in solutions
            ],
            "json",
        )
    else:
        emit([sol.serialize() for sol in solutions], "text")
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace, settings: Settings, engine: TraceEngine) -> int:
    if args.families:
        emit([f"{f.name}\t{','.join(f.params)}\t{f.description}" for f in FAMILIES.values()], "text")
        return EXIT_OK
    if args.family:
        params = parse_params(args.param or [])
        entries = [instantiate_family(name, **params) for name in args.family]
    elif args.file:
        entries = ingest(args.file)
    else:
        entries = builtin_catalog()
    if settings.output == "json":
        emit(
            [
                CatalogLine(
                    name=e.name,
                    word=e.word.serialize() if e.word is not None else None,
                    kind=word_kind(e.word) if e.word is not None else "classical",
                    source=e.source,
                    expected_components=e.expected_components,
                    expected_self_linking=e.expected_self_linking,
                )
                for e in entries
            ],
            "json",
        )
    else:
        emit([e.to_line() for e in entries], "text")
    return EXIT_OK


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--d", type=int, default=1, help="modulus d of the framings (default 1)")
    common.add_argument("--D", default=None, help="comma list of residues forming the subset D of Z/d")
    common.add_argument("--strategy", choices=STRATEGIES, default=None, help="trace strategy")
    common.add_argument("--cache", dest="cache_dir", default=None, help="result cache directory")
    common.add_argument("--out", dest="output", choices=("text", "json"), default=None, help="output format")
    common.add_argument("--workers", type=int, default=None, help="worker threads for batch commands")
    common.add_argument("--metrics", action="store_true", help="print Prometheus metrics after the command")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    parser = _Parser(prog="ykh", description="Markov traces and link invariants from Yokonuma-Hecke algebras")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    trace = sub.add_parser("trace", parents=[common], help="trace of a word")
    trace.add_argument("word", help='braid text, e.g. "n=3; t1^2 ; s1 s2^-1"')
    trace.add_argument("--word-kind", choices=("classical", "framed", "singular"), default=None)
    trace.add_argument("--generic", action="store_true", help="keep x_1..x_{d-1} as variables")
    trace.set_defaults(handler=cmd_trace)

    invariant = sub.add_parser("invariant", parents=[common], help="invariant of closed braids")
    invariant.add_argument("words", nargs="*", help="braid texts")
    invariant.add_argument("--kind", choices=KINDS, default="theta")
    invariant.add_argument("--vars", choices=("qz", "qlambda"), default="qz")
    invariant.add_argument("--file", default=None, help="catalog file with name<TAB>word lines")
    invariant.add_argument("--entry", action="append", default=None, help="built-in catalog entry name")
    invariant.set_defaults(handler=cmd_invariant)

    compare = sub.add_parser("compare", parents=[common], help="compare invariants of word pairs")
    compare.add_argument("items", nargs="*", help="two braid texts, or one pair file")
    compare.add_argument("--kind", choices=KINDS, default="theta")
    compare.add_argument("--file", default=None, help="pair file: consecutive entries are compared")
    compare.add_argument("--homflypt", action="store_true", help="compare Θ with the rescaled Homflypt polynomial instead")
    compare.set_defaults(handler=cmd_compare)

    verify = sub.add_parser("verify", parents=[common], help="run property suites")
    verify.add_argument("--suite", action="append", choices=["all", *SUITES], default=None)
    verify.add_argument("--count", type=int, default=5, help="random words per suite")
    verify.set_defaults(handler=cmd_verify)

    esystem = sub.add_parser("esystem", parents=[common], help="E-system solutions")
    esystem.add_argument("action", choices=("list", "solve"))
    esystem.add_argument("assignments", nargs="*", help="d=<int>")
    esystem.set_defaults(handler=cmd_esystem)

    catalog = sub.add_parser("catalog", parents=[common], help="built-in catalog and families")
    catalog.add_argument("--list", action="store_true", help="list built-in entries (default)")
    catalog.add_argument("--families", action="store_true", help="list parameterized families")
    catalog.add_argument("--family", action="append", default=None, help="family to instantiate")
    catalog.add_argument("--param", action="append", default=None, help="family parameters, e.g. a=2,b=2,c=3")
    catalog.add_argument("--file", default=None, help="validate and list a catalog file")
    catalog.set_defaults(handler=cmd_catalog)
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    settings = Settings.from_env()
    overrides = {key: getattr(args, key) for key in ("strategy", "cache_dir", "output", "workers") if getattr(args, key, None) is not None}
    if args.verbose:
        overrides["log_level"] = "DEBUG"
    return replace(settings, **overrides) if overrides else settings


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return the exit status."""
    configure_logging("ykh")
    try:
        args = build_parser().parse_args(argv)
        if args.d < 1:
            raise InvalidParameterError(f"--d must be positive, got {args.d}")
        settings = _settings(args)
        engine = create_engine(settings)
        code = args.handler(args, settings, engine)
        if args.metrics:
            print(exposition(), end="")
        return code
    except YKHError as e:
        return handle_engine_error(e)
    except Exception as e:
        return handle_internal_error(e)


if __name__ == "__main__":
    sys.exit(main())
