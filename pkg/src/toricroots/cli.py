"""Command line interface.

Subcommands: analyze, roots, uniqueness, witness, oracle-check, fixtures.
Exit codes: 0 success, 1 no additive action (uniqueness and witness), 2
input error, 3 internal invariant violation.  Warnings always go to the
diagnostic stream.
"""

import argparse
import sys
from pathlib import Path

from .analyze import analyze
from .errors import (
    InputError,
    InternalInvariantError,
    NoAdditiveActionError,
    ToricError,
)
from .fanfile import parse_fan_file
from .fixtures import FIXTURES, write_fixtures
from .report import derivation_text, emit_report, report_dict, star_notation
from .roots import brute_force_roots

EXIT_OK = 0
EXIT_NO_ACTION = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricroots",
        description=(
            "Exact analysis of additive group actions on complete toric "
            "varieties from the rays of their fans."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, many=False):
        p.add_argument(
            "files",
            nargs="+" if many else 1,
            metavar="FILE",
            help="fan file (see the README for the grammar)",
        )
        p.add_argument(
            "--format",
            choices=("text", "structured"),
            default="text",
            help="report format (default text)",
        )
        p.add_argument("--seed", type=int, default=0, help="sampling seed")
        p.add_argument(
            "--cap", type=int, default=None, help="nilpotency certification cap"
        )
        p.add_argument(
            "-o",
            "--output",
            type=Path,
            default=None,
            help="write the report here instead of stdout",
        )

    p = sub.add_parser("analyze", help="full analysis report")
    add_common(p, many=True)
    p.add_argument(
        "--figures",
        type=Path,
        default=None,
        metavar="DIR",
        help="also render figures and a delimited summary into DIR",
    )

    p = sub.add_parser("roots", help="Demazure root catalog only")
    add_common(p)

    p = sub.add_parser("uniqueness", help="uniqueness verdict only")
    add_common(p)

    p = sub.add_parser("witness", help="witness tuples and certificate")
    add_common(p)

    p = sub.add_parser(
        "oracle-check",
        help="compare the enumerator against the brute-force box oracle",
    )
    p.add_argument("files", nargs=1, metavar="FILE")
    p.add_argument(
        "--box",
        type=int,
        default=None,
        help="box radius (default: max root coordinate + 2)",
    )

    p = sub.add_parser("fixtures", help="list or write the built-in fans")
    p.add_argument("--list", action="store_true", help="print fixture names")
    p.add_argument(
        "--write", type=Path, default=None, metavar="DIR", help="write .fan files"
    )
    return parser


def _load(path: str):
    text = Path(path).read_text(encoding="utf-8")
    return parse_fan_file(text, source=path)


def _emit(data: bytes, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(data.decode("utf-8"))
    else:
        output.write_bytes(data)


def _warn(messages) -> None:
    for msg in messages:
        print(f"warning: {msg}", file=sys.stderr)


def _cmd_analyze(args) -> int:
    analyses = []
    chunks = []
    for path in args.files:
        ff = _load(path)
        analysis = analyze(ff, seed=args.seed, cap=args.cap)
        _warn(analysis.warnings)
        _warn([f"{path}: completeness assumed, not verified"])
        analyses.append(analysis)
        chunks.append(emit_report(analysis, args.format))
    _emit(b"".join(chunks), args.output)
    if args.figures is not None:
        from . import plots

        written = []
        for analysis in analyses:
            written += plots.render_figures(analysis, args.figures)
        written.append(
            plots.write_summary_csv(analyses, args.figures / "summary.csv")
        )
        for p in written:
            print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK


def _cmd_roots(args) -> int:
    ff = _load(args.files[0])
    analysis = analyze(ff, seed=args.seed, cap=args.cap)
    _warn(analysis.warnings)
    if args.format == "structured":
        import json

        doc = json.dumps(
            report_dict(analysis)["roots"], sort_keys=True, indent=2
        )
        _emit((doc + "\n").encode(), args.output)
    else:
        lines = []
        for i in range(analysis.rays.m):
            if analysis.structure is not None:
                pretty = ", ".join(
                    sorted(
                        star_notation(analysis.structure, e)
                        for e in analysis.catalog.per_ray[i]
                    )
                )
            else:
                pretty = ", ".join(
                    str(tuple(e)) for e in analysis.catalog.per_ray[i]
                )
            lines.append(f"R_{i + 1} = {{{pretty}}}")
        lines.append(f"dim U = {analysis.catalog.unipotent_dim}")
        _emit(("\n".join(lines) + "\n").encode(), args.output)
    return EXIT_OK


def _cmd_uniqueness(args) -> int:
    ff = _load(args.files[0])
    analysis = analyze(ff, seed=args.seed, cap=args.cap)
    _warn(analysis.warnings)
    if not analysis.existence:
        print("no additive action exists", file=sys.stderr)
        return EXIT_NO_ACTION
    v = analysis.verdict
    assert v is not None
    if args.format == "structured":
        import json

        doc = json.dumps(
            report_dict(analysis)["uniqueness"], sort_keys=True, indent=2
        )
        _emit((doc + "\n").encode(), args.output)
    else:
        _emit(
            (f"additive action unique: {'yes' if v.unique else 'no'}\n").encode(),
            args.output,
        )
    return EXIT_OK


def _cmd_witness(args) -> int:
    ff = _load(args.files[0])
    analysis = analyze(ff, seed=args.seed, cap=args.cap)
    _warn(analysis.warnings)
    if not analysis.existence:
        print("no additive action exists", file=sys.stderr)
        return EXIT_NO_ACTION
    if analysis.witness is None:
        _emit(b"witness: none (uniqueness holds)\n", args.output)
        return EXIT_OK
    if args.format == "structured":
        import json

        doc = json.dumps(
            report_dict(analysis)["witness"], sort_keys=True, indent=2
        )
        _emit((doc + "\n").encode(), args.output)
    else:
        s = analysis.structure
        w = analysis.witness
        cert = analysis.certificate
        assert s is not None and cert is not None
        lines = [
            "normalized:    ("
            + ", ".join(derivation_text(s, d) for d in w.normalized.derivations)
            + ")",
            "nonnormalized: ("
            + ", ".join(
                derivation_text(s, d) for d in w.nonnormalized.derivations
            )
            + ")",
            f"certificate valid: {'yes' if cert.valid else 'no'}",
        ]
        _emit(("\n".join(lines) + "\n").encode(), args.output)
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    ff = _load(args.files[0])
    analysis = analyze(ff)
    cat = analysis.catalog
    radius = args.box
    if radius is None:
        top = max(
            (abs(c) for roots in cat.per_ray for e in roots for c in e),
            default=1,
        )
        radius = top + 2
    brute = brute_force_roots(analysis.rays, radius)
    ok = True
    for i in range(analysis.rays.m):
        match = list(cat.per_ray[i]) == [tuple(e) for e in brute[i]]
        ok = ok and match
        print(
            f"ray {i + 1}: enumerated {len(cat.per_ray[i])}, "
            f"brute {len(brute[i])}, {'agree' if match else 'MISMATCH'}"
        )
    if not ok:
        print("oracle mismatch", file=sys.stderr)
        return EXIT_INTERNAL
    print(f"all root sets agree at box radius {radius}")
    return EXIT_OK


def _cmd_fixtures(args) -> int:
    if args.write is not None:
        for path in write_fixtures(args.write):
            print(f"wrote {path}")
        return EXIT_OK
    for name, ff in FIXTURES.items():
        print(f"{name}: dim {ff.dim}, {len(ff.rays)} rays")
    return EXIT_OK


_COMMANDS = {
    "analyze": _cmd_analyze,
    "roots": _cmd_roots,
    "uniqueness": _cmd_uniqueness,
    "witness": _cmd_witness,
    "oracle-check": _cmd_oracle_check,
    "fixtures": _cmd_fixtures,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NoAdditiveActionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_ACTION
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ToricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
