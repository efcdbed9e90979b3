"""Command-line front end.

Subcommands: h1, mt-h1, identify, stabilize, reduce, embed, embed-s5,
validate, relations.  Exit codes: 0 success, 1 validation failure,
2 parse or usage error.  Read commands take --json for machine output
and --manifest to run over many inputs (newline-delimited JSON, in
manifest order).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import embedder
from .intlinalg import AbelianGroup
from .mcg import relation_report
from .openbook import (JoinBoundaries, OpenBookParseError, SameBoundary, closed_h1,
                       identify_known, mapping_torus_h1, read_openbook,
                       reduce_to_one_boundary, serialize_openbook,
                       stabilize_positive)
from .surface import Surface, lickorish_system

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _build_parser():
    parser = _ArgumentParser(prog="obembed",
                             description="open book invariants and embedding certificates")
    sub = parser.add_subparsers(dest="command", required=True)

    def reader(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", nargs="?", help="open-book file")
        p.add_argument("--json", action="store_true", dest="as_json")
        p.add_argument("--manifest", help="file listing one input path per line")
        return p

    reader("h1", "first homology of the closed manifold")
    reader("mt-h1", "first homology of the mapping torus")
    reader("identify", "catalog name of the manifold, if known")

    p = sub.add_parser("stabilize", help="positively stabilize an open book")
    p.add_argument("path")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--same", type=int, metavar="J",
                       help="attach both band feet to boundary component J")
    group.add_argument("--join", type=int, nargs=2, metavar=("J", "K"),
                       help="join distinct boundary components J and K")
    p.add_argument("--out", help="output open-book file (stdout if omitted)")

    p = sub.add_parser("reduce", help="stabilize down to one boundary component")
    p.add_argument("path")
    p.add_argument("--out", help="output open-book file (stdout if omitted)")

    p = sub.add_parser("embed", help="build an open-book embedding witness")
    p.add_argument("path")
    p.add_argument("--framing", type=int, required=True, metavar="M")
    p.add_argument("--out", required=True, help="certificate JSON file")

    p = sub.add_parser("embed-s5", help="build an embedding plan into S5")
    p.add_argument("path")
    p.add_argument("--out", required=True, help="plan JSON file")

    p = sub.add_parser("validate", help="re-check a certificate file")
    p.add_argument("path", nargs="?")
    p.add_argument("--json", action="store_true", dest="as_json")
    p.add_argument("--manifest", help="file listing one certificate path per line")

    p = sub.add_parser("relations", help="run the mapping-class relation checks")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--boundary", type=int, required=True)
    p.add_argument("--json", action="store_true", dest="as_json")

    return parser


def _h1_result(ob):
    return closed_h1(ob)


def _mt_h1_result(ob):
    return mapping_torus_h1(ob)


def _print_group(group, as_json, out):
    if as_json:
        print(json.dumps(group.as_dict(), sort_keys=True), file=out)
    else:
        print(f"H1 = {group.describe()}", file=out)


def _run_single_read(command, path, as_json, out):
    ob = read_openbook(path)
    if command == "h1":
        _print_group(_h1_result(ob), as_json, out)
    elif command == "mt-h1":
        _print_group(_mt_h1_result(ob), as_json, out)
    elif command == "identify":
        name = identify_known(ob)
        if as_json:
            print(json.dumps({"name": name}, sort_keys=True), file=out)
        else:
            print(name if name is not None else "unknown", file=out)
    return EXIT_OK


def _read_manifest(manifest_path):
    with open(manifest_path, "r", encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def _run_read(command, args, out, err):
    if args.manifest:
        worst = EXIT_OK
        for path in _read_manifest(args.manifest):
            record = {"input": path}
            try:
                ob = read_openbook(path)
                if command == "h1":
                    record["result"] = _h1_result(ob).as_dict()
                elif command == "mt-h1":
                    record["result"] = _mt_h1_result(ob).as_dict()
                else:
                    record["result"] = {"name": identify_known(ob)}
            except (OSError, OpenBookParseError) as exc:
                record["error"] = str(exc)
                worst = max(worst, EXIT_USAGE)
            print(json.dumps(record, sort_keys=True), file=out)
        return worst
    if not args.path:
        raise _UsageError(f"{command} requires an input file or --manifest")
    return _run_single_read(command, args.path, args.as_json, out)


def _run_validate(args, out, err):
    def validate_one(path):
        with open(path, "r", encoding="utf-8") as fh:
            return embedder.validate_certificate(fh.read())

    if args.manifest:
        worst = EXIT_OK
        for path in _read_manifest(args.manifest):
            record = {"input": path}
            try:
                violations = validate_one(path)
                record["violations"] = violations
                if violations:
                    worst = max(worst, EXIT_INVALID)
            except (OSError, ValueError, json.JSONDecodeError) as exc:
                record["error"] = str(exc)
                worst = max(worst, EXIT_USAGE)
            print(json.dumps(record, sort_keys=True), file=out)
        return worst
    if not args.path:
        raise _UsageError("validate requires a certificate file or --manifest")
    violations = validate_one(args.path)
    if args.as_json:
        print(json.dumps({"violations": violations}, sort_keys=True), file=out)
    else:
        if violations:
            for v in violations:
                print(f"VIOLATION: {v}", file=out)
        else:
            print("certificate valid", file=out)
    return EXIT_INVALID if violations else EXIT_OK


def _run_stabilize(args, out, err):
    ob = read_openbook(args.path)
    if args.same is not None:
        attachment = SameBoundary(args.same)
    else:
        attachment = JoinBoundaries(args.join[0], args.join[1])
    try:
        result = stabilize_positive(ob, attachment)
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    text = serialize_openbook(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _run_reduce(args, out, err):
    ob = read_openbook(args.path)
    result = reduce_to_one_boundary(ob)
    text = serialize_openbook(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _run_embed(args, out, err):
    ob = read_openbook(args.path)
    cert = embedder.build_openbook_embedding(ob, args.framing)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(embedder.certificate_to_json(cert))
    print(f"witness written to {args.out} (target {cert['scene']['target']})", file=out)
    return EXIT_OK


def _run_embed_s5(args, out, err):
    ob = read_openbook(args.path)
    plan = embedder.build_s5_plan(ob)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(embedder.certificate_to_json(plan))
    h1 = AbelianGroup.from_dict(plan["checks"]["h1_after"])
    print(f"plan written to {args.out} (H1 = {h1.describe()})", file=out)
    return EXIT_OK


def _run_relations(args, out, err):
    try:
        cfg, _ = lickorish_system(Surface(args.genus, args.boundary))
    except ValueError as exc:
        raise _UsageError(str(exc))
    report = relation_report(cfg)
    if args.as_json:
        payload = {"surface": {"genus": args.genus, "boundary": args.boundary},
                   "checks": [{"name": c.name, "kind": c.kind, "passed": c.passed}
                              for c in report.checks],
                   "all_pass": report.all_pass}
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        for c in report.checks:
            print(f"{'PASS' if c.passed else 'FAIL'} {c.name}", file=out)
        print(f"{len(report.checks)} relations checked on "
              f"Sigma_{{{args.genus},{args.boundary}}}", file=out)
    return EXIT_OK if report.all_pass else EXIT_INVALID


def run(argv, out=None, err=None):
    """Run the CLI on an argument list; returns the exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        command = args.command
        if command in ("h1", "mt-h1", "identify"):
            return _run_read(command, args, out, err)
        if command == "validate":
            return _run_validate(args, out, err)
        if command == "stabilize":
            return _run_stabilize(args, out, err)
        if command == "reduce":
            return _run_reduce(args, out, err)
        if command == "embed":
            return _run_embed(args, out, err)
        if command == "embed-s5":
            return _run_embed_s5(args, out, err)
        if command == "relations":
            return _run_relations(args, out, err)
        raise _UsageError(f"unknown command {command!r}")
    except _UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except OpenBookParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
