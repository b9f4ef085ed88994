"""Command-line front end.

    sumprodlab [--threads N] [--cap C] [--format json|csv] COMMAND ...

Commands: ``stats``, ``check``, ``scan``, ``search``, ``gen``.  Exit codes:
0 success, 1 certified inequality violated, 2 bad input, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from datetime import datetime, timezone

from . import __version__, _config, harness, statistics
from .errors import CertificationError, InputError, ResourceCapError
from .exact import NumSet, dump_set, load_set
from .families import FamilySpec, generate
from .search import SearchConfig, search_extremal

SCHEMA_VERSION = 1

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

logger = logging.getLogger("sumprodlab")


def _digest(obj) -> str:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def envelope(command: str, inputs, payload) -> dict:
    """Report wrapper; only ``timestamp`` varies between identical runs."""
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "sumprodlab",
        "tool_version": __version__,
        "command": command,
        "input_digest": _digest(inputs),
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "payload": payload,
    }


def _rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(args, command, inputs, payload, csv_text):
    if args.format == "csv":
        text = csv_text
    else:
        text = json.dumps(envelope(command, inputs, payload), indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_stats(items) -> list:
    names = []
    for item in items or []:
        names.extend(s.strip() for s in item.split(",") if s.strip())
    return [statistics.resolve(s).name for s in names]


def _parse_family(text: str) -> FamilySpec:
    if text.startswith("@"):
        text = text[1:]
    if os.path.isfile(text):
        with open(text) as fh:
            return FamilySpec.from_json(fh.read())
    return FamilySpec.parse(text)


def _parse_sizes(text: str) -> list:
    """``"64,128,256"`` or ``"64..512"`` (doubling from the first to the last)."""
    text = text.strip()
    if ".." in text:
        lo, hi = (int(x) for x in text.split("..", 1))
        if lo < 1:
            raise InputError("sizes must be positive")
        out = []
        n = lo
        while n <= hi:
            out.append(n)
            n *= 2
        return out
    return [int(x) for x in text.split(",") if x.strip()]


# -- commands -------------------------------------------------------------------


def cmd_stats(args):
    A = load_set(args.set_file)
    names = _parse_stats(args.stat) or ["size", "sumset", "product", "energy"]
    d = statistics.Derived(A)
    values = {name: statistics.compute(name, A, cache=d) for name in names}
    payload = {"set": A.to_json()["elements"], "statistics": values}
    if args.dump:
        dumped = {}
        for name in names:
            attr = statistics.resolve(name).set_attr
            if attr:
                dumped[name] = getattr(d, attr).to_json()["elements"]
        payload["sets"] = dumped
    inputs = {"set": A.to_json(), "statistics": names}
    _emit(args, "stats", inputs, payload,
          _rows_to_csv(["statistic", "value"], list(values.items())))
    return EXIT_OK


def cmd_check(args):
    A = load_set(args.set_file)
    if len(A) < 2:
        raise InputError("check needs a set with at least 2 elements")
    records = harness.evaluate_all(A, strict=False)
    for r in records:
        if r.skipped:
            print(f"notice: {r.id} skipped ({r.note})", file=sys.stderr)
    violated = [r.id for r in records if r.tier == harness.CERTIFIED and r.satisfied is False]
    payload = {
        "records": [r.to_json() for r in records],
        "certified_ok": not violated,
        "violated": violated,
    }
    _emit(args, "check", {"set": A.to_json()}, payload, harness.records_to_csv(records))
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_scan(args):
    spec = _parse_family(args.family)
    sizes = harness.validate_sizes(_parse_sizes(args.sizes))
    fit = harness.fit_exponent(spec, sizes, args.stat, seed=args.seed)
    rows = [[n, v, x, y] for (n, v), (x, y) in zip(zip(fit.sizes, fit.values), fit.plot_rows())]
    payload = {"fit": fit.to_json(),
               "table": [dict(zip(("n", "value", "log2_n", "log2_value"), r)) for r in rows]}
    inputs = {"family": spec.to_json(), "sizes": sizes, "statistic": fit.statistic, "seed": args.seed}
    if args.plot:
        with open(args.plot, "w") as fh:
            fh.write(_rows_to_csv(["log2_n", "log2_value"], [r[2:] for r in rows]))
    _emit(args, "scan", inputs, payload,
          _rows_to_csv(["n", "value", "log2_n", "log2_value"], rows))
    return EXIT_OK


def cmd_search(args):
    try:
        with open(args.config_file) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read config {args.config_file}: {exc}") from exc
    config = SearchConfig.from_json(text)
    result = search_extremal(config)
    out = args.best_out or os.path.splitext(args.config_file)[0] + ".best.json"
    dump_set(result.best_set, out)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(_rows_to_csv(["iteration", "best_score"], result.trace))
    payload = {"config": config.to_json(), "result": result.to_json(), "best_set_file": out}
    _emit(args, "search", config.to_json(), payload,
          _rows_to_csv(["iteration", "best_score"], result.trace))
    return EXIT_OK


def cmd_gen(args):
    spec = _parse_family(args.family)
    A = generate(spec, args.n, args.seed)
    if args.out:
        dump_set(A, args.out)
    else:
        sys.stdout.write(json.dumps(A.to_json()) + "\n")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def _global_flags(parser, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--threads", type=int, default=default,
                        help="worker threads (default: machine parallelism; never changes results)")
    parser.add_argument("--cap", type=int, default=default,
                        help="set cardinality cap (env SUMPRODLAB_CAP overrides)")
    parser.add_argument("--format", choices=("json", "csv"),
                        default=argparse.SUPPRESS if suppress else "json")
    parser.add_argument("-o", "--output", default=default, help="write the report here")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sumprodlab", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("stats", help="compute statistics of a set file")
    s.add_argument("set_file")
    s.add_argument("-s", "--stat", action="append",
                   help=f"statistic name or alias, repeatable or comma separated; "
                        f"one of {', '.join(statistics.names())}")
    s.add_argument("--dump", action="store_true", help="include elements of set-valued statistics")
    s.set_defaults(func=cmd_stats)

    c = sub.add_parser("check", help="run certified and asymptotic inequality records")
    c.add_argument("set_file")
    c.set_defaults(func=cmd_check)

    sc = sub.add_parser("scan", help="fit a growth exponent over a set family")
    sc.add_argument("--family", required=True,
                    help='inline spec ("ap", "gp:ratio=3", JSON) or a JSON file')
    sc.add_argument("--sizes", required=True, help='"64,128,256" or "64..512" (doubling)')
    sc.add_argument("--stat", required=True)
    sc.add_argument("--seed", type=int, default=0)
    sc.add_argument("--plot", help="also write (log2 n, log2 value) CSV here")
    sc.set_defaults(func=cmd_scan)

    se = sub.add_parser("search", help="run the annealing search from a JSON config")
    se.add_argument("config_file")
    se.add_argument("--best-out", help="best set file (default: <config>.best.json)")
    se.add_argument("--trace", help="write the trace as CSV here")
    se.set_defaults(func=cmd_search)

    g = sub.add_parser("gen", help="generate a family member as a set file")
    g.add_argument("family")
    g.add_argument("n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="output path (default: stdout)")
    g.set_defaults(func=cmd_gen)

    for sp in (s, c, sc, se, g):
        _global_flags(sp, suppress=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        with _config.options(threads=args.threads, cap=args.cap):
            return args.func(args)
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except CertificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
