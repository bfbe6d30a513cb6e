"""Batch command-line frontend.

Every subcommand prints one machine-readable report to standard output and
exits 0 on success, 1 when the answer to the question asked is "no" (not
co-order, bound fails, certificate invalid, ...), 2 on usage errors, and 3
on runtime failures such as non-halting programs or inconsistent branches.
Output depends only on the arguments, so repeated invocations are
byte-identical.

Programs and listings are named either by corpus entry or by `@path/to/file
.asm`.  Fuel resolution: an explicit --fuel wins, then the ENUMLAB_FUEL
environment variable, then the corpus entry's own policy, then the machine
default.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import corpus
from .complexity import (
    certify_np_coorder,
    certify_p_coorder,
    check_bound,
    fit_poly_exponent,
    verify_certificate,
)
from .errors import EnumlabError, SearchExhaustedError, UnknownNameError
from .listing import (
    DETERMINISTIC,
    NONDETERMINISTIC,
    Listing,
    prefix,
    rows_to_csv,
    rows_to_json,
    time_profile,
)
from .machine import DEFAULT_BRANCH_CAP, DEFAULT_FUEL, Program, assemble, run_det, run_nondet
from .order import coorder_prefix, coorder_search, increasing_listing
from .rapidity import cumulative, more_rapid, strictly_more_rapid
from .reduction import (
    NP_EQUIV,
    NPU,
    PU,
    equivalence,
    turing_consistency,
    verify_reduction,
    violations_to_csv,
)

_USAGE_ERROR = 2
_RUNTIME_ERROR = 3


# --- argument plumbing ----------------------------------------------------------

def _at_least_one(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def _env_fuel() -> int | None:
    raw = os.environ.get("ENUMLAB_FUEL")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise UnknownNameError(f"ENUMLAB_FUEL is not an integer: {raw!r}")
    if value < 1:
        raise UnknownNameError(f"ENUMLAB_FUEL must be >= 1, got {value}")
    return value


def _resolve_program(name: str) -> tuple[str, Program, corpus.CorpusEntry | None]:
    """A corpus entry by name, or an assembled file via @path.asm."""
    if name.startswith("@"):
        path = Path(name[1:])
        program = assemble(path.read_text(), name=path.stem)
        return path.stem, program, None
    entry = corpus.get(name)
    return entry.name, entry.program, entry


def _resolve_fuel(flag: int | None, entry: corpus.CorpusEntry | None) -> int:
    if flag is not None:
        return flag
    env = _env_fuel()
    if env is not None:
        return env
    if entry is not None:
        return entry.fuel
    return DEFAULT_FUEL


def _resolve_listing(name: str, args) -> Listing:
    label, program, entry = _resolve_program(name)
    mode = entry.mode if entry is not None else DETERMINISTIC
    return Listing(
        label,
        program,
        mode,
        fuel=_resolve_fuel(args.fuel, entry),
        branch_cap=args.branch_cap,
    )


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _flat_csv(payload: dict) -> str:
    """Single-row CSV for flat reports; tuples/lists join with semicolons."""
    def cell(v):
        if isinstance(v, (tuple, list)):
            return ";".join(str(x) for x in v)
        return "" if v is None else str(v)

    keys = sorted(payload)
    return ",".join(keys) + "\n" + ",".join(cell(payload[k]) for k in keys) + "\n"


def _emit(args, text: str) -> None:
    sys.stdout.write(text)
    if getattr(args, "out", None):
        Path(args.out).write_text(text)


# --- subcommand handlers ----------------------------------------------------------

def _cmd_asm(args) -> int:
    path = Path(args.file)
    program = assemble(path.read_text(), name=path.stem)
    _emit(args, _json_text({
        "name": program.name,
        "instructions": len(program.instructions),
        "num_registers": program.num_registers,
    }))
    return 0


def _cmd_run(args) -> int:
    label, program, entry = _resolve_program(args.program)
    fuel = _resolve_fuel(args.fuel, entry)
    nondet = args.nondet or (entry is not None and entry.mode == NONDETERMINISTIC)
    if nondet:
        outcome = run_nondet(program, args.input, fuel=fuel, branch_cap=args.branch_cap)
    else:
        outcome = run_det(program, args.input, fuel=fuel)
    payload = {"program": label, "input": args.input}
    payload.update(outcome.to_dict())
    if args.format == "csv":
        _emit(args, _flat_csv(payload))
    else:
        _emit(args, _json_text(payload))
    return 0 if outcome.status == "halted" else _RUNTIME_ERROR


def _cmd_profile(args) -> int:
    ell = _resolve_listing(args.listing, args)
    p = prefix(ell, args.k)
    t = time_profile(ell, args.k)
    if args.format == "csv":
        _emit(args, rows_to_csv(p, t))
    else:
        _emit(args, _json_text({"listing": ell.name, "rows": rows_to_json(p, t)}))
    return 0


def _cmd_coorder(args) -> int:
    pa = prefix(_resolve_listing(args.a, args), args.k)
    pb = prefix(_resolve_listing(args.b, args), args.k)
    report = coorder_prefix(pa, pb)
    payload = report.to_dict()
    if args.format == "csv":
        _emit(args, _flat_csv(payload))
    else:
        _emit(args, _json_text(payload))
    return 0 if report.co_order else 1


def _cmd_coorder_search(args) -> int:
    family_a = [_resolve_listing(n, args) for n in args.a]
    family_b = [_resolve_listing(n, args) for n in args.b]
    pair = coorder_search(family_a, family_b, args.k)
    if pair is None:
        _emit(args, _json_text({"found": False}))
        return 1
    payload = {"found": True}
    payload.update(pair.to_dict())
    _emit(args, _json_text(payload))
    return 0


def _cmd_rapidity(args) -> int:
    la = _resolve_listing(args.a, args)
    lb = _resolve_listing(args.b, args)
    ta = time_profile(la, args.horizon)
    tb = time_profile(lb, args.horizon)
    strict = strictly_more_rapid(ta, tb)
    eventual = more_rapid(ta, tb)
    if args.format == "csv":
        header = "listing," + ",".join(str(n) for n in range(args.horizon))
        row_a = la.name + "," + ",".join(str(c) for c in cumulative(ta))
        row_b = lb.name + "," + ",".join(str(c) for c in cumulative(tb))
        _emit(args, header + "\n" + row_a + "\n" + row_b + "\n")
    else:
        _emit(args, _json_text({
            "a": la.name,
            "b": lb.name,
            "strict": strict.to_dict(),
            "eventual": eventual.to_dict(),
        }))
    return 0 if eventual.witness_m is not None else 1


def _cmd_fit(args) -> int:
    t = time_profile(_resolve_listing(args.listing, args), args.k)
    fit = fit_poly_exponent(t, n_lo=args.n_lo)
    payload = fit.to_dict()
    if args.format == "csv":
        _emit(args, _flat_csv(payload))
    else:
        _emit(args, _json_text(payload))
    return 0


def _cmd_bound(args) -> int:
    t = time_profile(_resolve_listing(args.listing, args), args.horizon)
    report = check_bound(t, args.exp, args.c, args.n0)
    payload = report.to_dict()
    if args.format == "csv":
        _emit(args, _flat_csv(payload))
    else:
        _emit(args, _json_text(payload))
    return 0 if report.holds else 1


def _subject_prefix(args):
    if args.set is not None:
        _, decider, entry = _resolve_program(args.set)
        fuel = _resolve_fuel(args.fuel, entry)
        return args.set, increasing_listing(decider, args.horizon, fuel=fuel)
    ell = _resolve_listing(args.subject_listing, args)
    return ell.name, prefix(ell, args.horizon)


def _cmd_certify(args) -> int:
    subject_name, subject = _subject_prefix(args)
    witness = _resolve_listing(args.witness, args)
    certify = certify_p_coorder if args.flavor == "p" else certify_np_coorder
    cert = certify(
        subject,
        witness,
        args.exp,
        args.c,
        args.n0,
        args.horizon,
        subject_name=subject_name,
    )
    _emit(args, cert.to_json() + "\n")
    return 0 if cert.valid else 1


def _cmd_verify(args) -> int:
    data = json.loads(Path(args.certificate).read_text())
    witness = None
    if args.witness is not None:
        witness = _resolve_listing(args.witness, args)
    verified, detail = verify_certificate(data, witness=witness)
    _emit(args, _json_text(detail))
    return 0 if verified else 1


def _cmd_reduce(args) -> int:
    _, f, _ = _resolve_program(args.f)
    _, a, ea = _resolve_program(args.a)
    _, b, _ = _resolve_program(args.b)
    fuel = _resolve_fuel(args.fuel, ea)
    mode = NONDETERMINISTIC if args.nondet else DETERMINISTIC
    report = verify_reduction(
        f, a, b, (args.lo, args.hi),
        fuel=fuel, mode=mode, branch_cap=args.branch_cap,
    )
    if args.format == "csv":
        _emit(args, violations_to_csv(report))
    else:
        _emit(args, _json_text(report.to_dict()))
    return 0 if report.verified else 1


_EQUIV_KINDS = {"np": NP_EQUIV, "pu": PU, "npu": NPU}


def _cmd_equiv(args) -> int:
    _, fab, _ = _resolve_program(args.fab)
    _, fba, _ = _resolve_program(args.fba)
    _, a, ea = _resolve_program(args.a)
    _, b, eb = _resolve_program(args.b)
    fuel = _resolve_fuel(args.fuel, ea)
    kind = _EQUIV_KINDS[args.flavor]
    coorder_input = None
    if kind in (PU, NPU):
        coorder_input = (
            increasing_listing(a, args.k, fuel=_resolve_fuel(args.fuel, ea)),
            increasing_listing(b, args.k, fuel=_resolve_fuel(args.fuel, eb)),
        )
    report = equivalence(
        fab, fba, a, b, (args.lo, args.hi),
        fuel=fuel, kind=kind, coorder_input=coorder_input,
        branch_cap=args.branch_cap,
    )
    _emit(args, _json_text(report.to_dict()))
    return 0 if report.valid else 1


def _cmd_consistency(args) -> int:
    _, f, _ = _resolve_program(args.f)
    _, a, ea = _resolve_program(args.a)
    _, b, _ = _resolve_program(args.b)
    fuel = _resolve_fuel(args.fuel, ea)
    report = turing_consistency(f, a, b, (args.lo, args.hi), fuel=fuel)
    _emit(args, _json_text(report.to_dict()))
    return 0 if report.consistent else 1


def _cmd_corpus(args) -> int:
    lines = [f"{name} {corpus.get(name).kind}" for name in corpus.names()]
    _emit(args, "\n".join(lines) + "\n")
    return 0


# --- parser -------------------------------------------------------------------------

def _add_common(sub, *, k=False, horizon=False, fmt=False):
    sub.add_argument("--fuel", type=_at_least_one, default=None,
                     help="step budget (default: corpus policy or 1000000)")
    sub.add_argument("--branch-cap", type=_at_least_one, default=DEFAULT_BRANCH_CAP,
                     help="nondeterministic exploration cap")
    if k:
        sub.add_argument("-k", "--prefix", dest="k", type=_at_least_one, default=100,
                         help="prefix length (default 100)")
    if horizon:
        sub.add_argument("--horizon", type=_at_least_one, default=100,
                         help="profile length (default 100)")
    if fmt:
        sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--out", default=None, help="also write the report to a file")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enumlab",
        description="step-counted listings, co-order checks, rapidity, growth "
                    "bounds, certificates, and reduction verification",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("asm", help="validate and assemble a program file")
    s.add_argument("file")
    s.add_argument("--out", default=None)
    s.set_defaults(func=_cmd_asm)

    s = subs.add_parser("run", help="run a program on one input")
    s.add_argument("program", help="corpus name or @file.asm")
    s.add_argument("input", type=_non_negative)
    s.add_argument("--nondet", action="store_true",
                   help="force breadth-first nondeterministic execution")
    _add_common(s, fmt=True)
    s.set_defaults(func=_cmd_run)

    s = subs.add_parser("profile", help="values and step counts of a listing prefix")
    s.add_argument("--listing", required=True)
    _add_common(s, k=True, fmt=True)
    s.set_defaults(func=_cmd_profile)

    s = subs.add_parser("coorder", help="compare rank patterns of two prefixes")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    _add_common(s, k=True, fmt=True)
    s.set_defaults(func=_cmd_coorder)

    s = subs.add_parser("coorder-search",
                        help="first co-order pair across two listing families")
    s.add_argument("--a", action="append", required=True,
                   help="listing in family A (repeatable)")
    s.add_argument("--b", action="append", required=True,
                   help="listing in family B (repeatable)")
    _add_common(s, k=True)
    s.set_defaults(func=_cmd_coorder_search)

    s = subs.add_parser("rapidity", help="strict and eventual speed comparison")
    s.add_argument("--a", required=True, help="candidate faster listing")
    s.add_argument("--b", required=True, help="listing it is compared against")
    _add_common(s, horizon=True, fmt=True)
    s.set_defaults(func=_cmd_rapidity)

    s = subs.add_parser("fit", help="fit a polynomial growth exponent to a profile")
    s.add_argument("--listing", required=True)
    s.add_argument("--n-lo", type=_non_negative, default=None,
                   help="first index of the fit window (default: upper half)")
    _add_common(s, k=True, fmt=True)
    s.set_defaults(func=_cmd_fit)

    s = subs.add_parser("bound", help="check steps[n] <= c*(n+1)^k beyond n0")
    s.add_argument("--listing", required=True)
    s.add_argument("--exp", type=_non_negative, required=True, help="exponent k")
    s.add_argument("--c", type=_positive_float, required=True, help="coefficient")
    s.add_argument("--n0", type=_non_negative, default=0, help="threshold")
    _add_common(s, horizon=True, fmt=True)
    s.set_defaults(func=_cmd_bound)

    s = subs.add_parser("certify",
                        help="build a polynomial co-order certificate")
    s.add_argument("flavor", choices=("p", "np"))
    group = s.add_mutually_exclusive_group(required=True)
    group.add_argument("--set", default=None,
                       help="decider whose increasing listing is the subject")
    group.add_argument("--subject-listing", default=None,
                       help="listing whose prefix is the subject")
    s.add_argument("--witness", required=True, help="witness listing")
    s.add_argument("--exp", type=_non_negative, required=True, help="exponent k")
    s.add_argument("--c", type=_positive_float, required=True, help="coefficient")
    s.add_argument("--n0", type=_non_negative, default=0, help="threshold")
    _add_common(s, horizon=True)
    s.set_defaults(func=_cmd_certify)

    s = subs.add_parser("verify", help="re-check a stored certificate")
    s.add_argument("certificate", help="path to a certificate JSON file")
    s.add_argument("--witness", default=None,
                   help="re-profile this witness listing as well")
    _add_common(s)
    s.set_defaults(func=_cmd_verify)

    s = subs.add_parser("reduce", help="verify a many-one reduction on a domain")
    s.add_argument("--f", required=True, help="the map")
    s.add_argument("--a", required=True, help="decider of the source set")
    s.add_argument("--b", required=True, help="decider of the target set")
    s.add_argument("--lo", type=_non_negative, default=0)
    s.add_argument("--hi", type=_non_negative, default=1000)
    s.add_argument("--nondet", action="store_true",
                   help="run the map breadth-first")
    _add_common(s, fmt=True)
    s.set_defaults(func=_cmd_reduce)

    s = subs.add_parser("equiv", help="two-way reduction equivalence")
    s.add_argument("flavor", choices=("np", "pu", "npu"))
    s.add_argument("--fab", required=True, help="map A -> B")
    s.add_argument("--fba", required=True, help="map B -> A")
    s.add_argument("--a", required=True, help="decider of A")
    s.add_argument("--b", required=True, help="decider of B")
    s.add_argument("--lo", type=_non_negative, default=0)
    s.add_argument("--hi", type=_non_negative, default=1000)
    _add_common(s, k=True)
    s.set_defaults(func=_cmd_equiv)

    s = subs.add_parser("consistency",
                        help="decide via b(f(x)) and compare against a(x)")
    s.add_argument("--f", required=True)
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--lo", type=_non_negative, default=0)
    s.add_argument("--hi", type=_non_negative, default=1000)
    _add_common(s)
    s.set_defaults(func=_cmd_consistency)

    s = subs.add_parser("corpus", help="inspect the program corpus")
    s.add_argument("action", choices=("list",))
    s.add_argument("--out", default=None)
    s.set_defaults(func=_cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else _USAGE_ERROR
    try:
        return args.func(args)
    except SearchExhaustedError as exc:
        print(f"enumlab: {exc}", file=sys.stderr)
        return 1
    except (UnknownNameError, OSError) as exc:
        print(f"enumlab: {exc}", file=sys.stderr)
        return _USAGE_ERROR
    except EnumlabError as exc:
        print(f"enumlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return _RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
