"""Command-line front end: ``egrading {verify,report,catalog,pauli}``.

Every command prints one JSON document (sorted keys, schema_version field) to
stdout or to --output.  Progress goes to stderr.

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 arity or type mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import pauli, suite
from .abelian import AbelianGroupError, IllDefinedHomError
from .invariants import (
    SCHEMA_VERSION,
    ArityError,
    InvariantsError,
    ModuleSpec,
    brauer_report,
    catalog,
    find_entry,
    graded_simple_description,
    identity_nu,
    module_compatible,
    nu_from_factor_matrix,
)
from .roots_weights import WeightError, from_bourbaki, parse_weight, root_system, to_bourbaki

WORKERS_ENV = "EGRADING_WORKERS"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_MALFORMED = 2
EXIT_ARITY = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _dump(doc: dict, output: Optional[str]) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json_arg(value: str):
    """Inline JSON, or a path to a JSON file."""
    try:
        if os.path.exists(value):
            with open(value, encoding="utf-8") as fh:
                return json.load(fh)
        return json.loads(value)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read JSON from {value!r}: {exc}", EXIT_MALFORMED) from exc


def _workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise CliError(f"{WORKERS_ENV} must be an integer, got {raw!r}", EXIT_MALFORMED)


# ------------------------------------------------------------------ commands
def cmd_verify(args) -> int:
    ctx = suite.Context(seed=args.seed, workers=_workers())
    ok, results = suite.run_suite(args.suite, ctx)
    doc = {"schema_version": SCHEMA_VERSION, "suite": args.suite, "passed": ok, "claims": results}
    if not ok:
        first = next(r["claim"] for r in results if not r["passed"])
        doc["first_failure"] = first
        print(f"verification failed: {first}", file=sys.stderr)
    _dump(doc, args.output)
    return EXIT_OK if ok else EXIT_FAILED


def _weight(args, t: str, text: str) -> tuple[int, ...]:
    lam = parse_weight(text)
    rank = root_system(t).rank
    if len(lam) != rank:
        raise CliError(f"{t} weights have {rank} coefficients, got {len(lam)}", EXIT_ARITY)
    if args.bourbaki:
        lam = from_bourbaki(t, lam)
    return lam


def _nu(entry, text: str):
    if text == "id":
        return identity_nu(entry)
    data = _load_json_arg(text)
    if not isinstance(data, dict) or "target" not in data or "matrix" not in data:
        raise CliError('--nu expects "id" or {"target": <group>, "matrix": [[...]]}', EXIT_MALFORMED)
    return nu_from_factor_matrix(entry, data["target"], data["matrix"])


def cmd_report(args) -> int:
    entry = find_entry(args.type, args.entry)
    nu = _nu(entry, args.nu)
    lam = _weight(args, args.type, args.weight)
    rep = brauer_report(entry, nu, lam)
    doc = rep.to_json()
    doc["graded_simple"] = graded_simple_description(entry, nu, lam).to_json()
    if args.bourbaki:
        doc["weight_bourbaki"] = list(to_bourbaki(args.type, lam))
    if args.module:
        data = _load_json_arg(args.module)
        try:
            module = ModuleSpec.from_json(data)
        except (KeyError, TypeError, IndexError) as exc:
            raise CliError(f"malformed module description: {exc}", EXIT_MALFORMED) from exc
        if args.bourbaki:
            module = ModuleSpec([(from_bourbaki(args.type, w), k) for w, k in module.summands])
        doc["module_compatibility"] = module_compatible(entry, nu, module).to_json()
    _dump(doc, args.output)
    return EXIT_OK


def cmd_catalog(args) -> int:
    entries = [e.to_json() for e in catalog(args.type)]
    _dump({"schema_version": SCHEMA_VERSION, "type": args.type, "count": len(entries), "entries": entries},
          args.output)
    return EXIT_OK


def cmd_pauli(args) -> int:
    doc = pauli.grading_json(args.ell)
    doc["schema_version"] = SCHEMA_VERSION
    _dump(doc, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="egrading", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a structural verification suite")
    v.add_argument("suite", choices=sorted(suite.SUITES))
    v.add_argument("--seed", type=int, default=suite.DEFAULT_SEED, help="rank-sampling seed (for testing)")
    v.add_argument("--output")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="graded Brauer invariant of a weight for an induced grading")
    r.add_argument("--type", required=True, choices=["E6", "E7"])
    r.add_argument("--entry", required=True, help='universal group, e.g. "Z2^8" or "Z^2xZ2^3-outer"')
    r.add_argument("--nu", default="id", help='"id" or JSON {"target": ..., "matrix": ...} (inline or file)')
    r.add_argument("--lambda", dest="weight", required=True, help="comma-separated coefficients m1,...,mn")
    r.add_argument("--module", help="JSON module description (inline or file) to test for compatibility")
    r.add_argument("--bourbaki", action="store_true", help="read and echo weights in Bourbaki numbering")
    r.add_argument("--output")
    r.set_defaults(func=cmd_report)

    c = sub.add_parser("catalog", help="list the fine gradings of a type")
    c.add_argument("--type", required=True, choices=["E6", "E7"])
    c.add_argument("--output")
    c.set_defaults(func=cmd_catalog)

    q = sub.add_parser("pauli", help="Pauli grading on l x l matrices")
    q.add_argument("--ell", type=int, required=True, choices=list(pauli.SUPPORTED_SIZES))
    q.add_argument("--output")
    q.set_defaults(func=cmd_pauli)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ArityError, IllDefinedHomError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARITY
    except (InvariantsError, AbelianGroupError, WeightError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
