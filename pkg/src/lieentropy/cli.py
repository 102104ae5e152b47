"""Command-line front end.

Exit codes: 0 success, 1 failed verify property, 2 input or validation
error, 3 numeric failure, 4 budget exhausted.  Payloads go to stdout and are byte-stable; banners,
findings and timings go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import engine
from .config import DEFAULT
from .errors import BudgetExceeded, InputError, LieEntropyError, NumericError, ValidationFailed
from .jordan import invariant_residuals, multiplicative_jordan, recurrent_subspace
from .linalg import as_real_matrix, eigenvalues
from .oracle.adjoint import adjoint_matrix, conjugation_recurrent_membership
from .oracle.estimate import estimate_entropy
from .oracle.liyorke import CAVEAT, search_li_yorke
from .serialization import ParseError, load_descriptor, schema_json
from .verify import run_verify

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_BUDGET = 4


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _parse_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _matrix(args, flag: str = "matrix"):
    """Matrix from --matrix (inline JSON) or from the positional file.

    The file holds either a bare nested list or an object with a ``matrix`` key.
    """
    inline = getattr(args, flag, None)
    if inline is not None:
        return _parse_json(inline, f"--{flag}")
    if args.path is None:
        raise InputError(f"give a matrix file or --{flag}")
    try:
        with open(args.path, encoding="utf-8") as fh:
            doc = _parse_json(fh.read(), args.path)
    except OSError as exc:
        raise InputError(f"cannot read {args.path}: {exc.strerror}") from None
    if isinstance(doc, dict):
        if "matrix" not in doc:
            raise ParseError(f"{args.path}: object has no 'matrix' key")
        doc = doc["matrix"]
    return doc


def _tolerances(args):
    return DEFAULT.with_(rel=args.tolerance)


def cmd_compute(args) -> int:
    desc = load_descriptor(args.path)
    opts = desc.options
    log_base = args.log_base or opts.log_base
    exact = args.exact_cyclotomic or opts.exact_cyclotomic
    tol = DEFAULT.with_(rel=opts.tolerance if args.tolerance is None else args.tolerance)
    cert = engine.compute(desc.group, desc.endo, tol, exact_cyclotomic=exact, log_base=log_base)
    if cert.conjectural:
        sys.stderr.write(
            "*** CONJECTURAL ***  this value rests on a hypothesis that is not proven; "
            "see the trace for the unproven step\n"
        )
    _emit(cert.to_dict())
    return EXIT_OK


def cmd_jordan(args) -> int:
    m = as_real_matrix(_matrix(args))
    tol = _tolerances(args)
    mj = multiplicative_jordan(m, tol)
    out = mj.to_dict()
    out["spectrum"] = eigenvalues(m, tol).to_dict()
    out["residuals"] = invariant_residuals(mj, tol)
    _emit(out)
    return EXIT_OK


def cmd_recurrent(args) -> int:
    m = as_real_matrix(_matrix(args))
    tol = _tolerances(args)
    if not args.conjugation:
        if args.probe:
            raise InputError("--probe needs --conjugation")
        _emit({"mode": "linear", "recurrent_subspace": recurrent_subspace(m, tol).to_dict()})
        return EXIT_OK
    if not args.probe:
        raise InputError("--conjugation needs at least one --probe matrix")
    probes = []
    for text in args.probe:
        x = as_real_matrix(_parse_json(text, "--probe"), "probe")
        member = conjugation_recurrent_membership(m, x, args.commute_tol, tol)
        probes.append({"probe": x.tolist(), "member": member})
    _emit({"mode": "conjugation", "g": m.tolist(), "probes": probes})
    return EXIT_OK


def cmd_adjoint(args) -> int:
    g = as_real_matrix(_matrix(args), "g")
    tol = _tolerances(args)
    ad = adjoint_matrix(g, tol)
    spec = eigenvalues(ad, tol)
    _emit({"g": g.tolist(), "adjoint": ad.tolist(), "spectrum": spec.to_dict(), "spectral_radius": spec.spectral_radius()})
    return EXIT_OK


def cmd_estimate(args) -> int:
    est = estimate_entropy(
        _matrix(args),
        n_max=args.n_max,
        epsilon=args.epsilon,
        grid_resolution=args.grid,
        order_seed=args.seed,
        wall_budget=args.wall_budget,
    )
    sys.stdout.write(est.to_csv() if args.format == "csv" else est.to_json() + "\n")
    if est.wall_budget_exhausted:
        sys.stderr.write(f"wall budget of {args.wall_budget} s exhausted; partial result\n")
        return EXIT_BUDGET
    return EXIT_OK


def cmd_liyorke(args) -> int:
    result = search_li_yorke(_matrix(args), budget=args.budget, delta=args.delta)
    if not result.found:
        sys.stderr.write(f"no Li-Yorke pair found in {result.steps} steps; {CAVEAT}\n")
    _emit(result.to_dict())
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verify(args.level, seed=args.seed)
    for r in report.results:
        sys.stderr.write(f"{'PASS' if r.passed else 'FAIL'} {r.name}: residual {r.residual:.3g} <= {r.threshold:g}\n")
    _emit(report.to_dict())
    return EXIT_OK if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lieentropy",
        description="Topological entropy of Lie group endomorphisms, with brute-force oracles.",
    )
    parser.add_argument("--schema", action="store_true", help="print the descriptor JSON schema and exit")
    parser.add_argument("--timing", action="store_true", help="report wall time on stderr")
    sub = parser.add_subparsers(dest="command")

    def add(name, fn, help_text, path_help="JSON file holding a matrix (or {\"matrix\": ...})", matrix=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        if matrix:
            p.add_argument("path", nargs="?", help=path_help)
            p.add_argument("--matrix", help="inline JSON matrix, e.g. '[[2,1],[1,1]]'")
        p.add_argument("--tolerance", type=float, default=DEFAULT.rel, help="relative tolerance (default 1e-9)")
        return p

    p = sub.add_parser("compute", help="entropy certificate for a descriptor file")
    p.set_defaults(func=cmd_compute)
    p.add_argument("path", help="descriptor JSON file")
    p.add_argument("--log-base", choices=["e", "2"], default=None, help="entropy unit (default e)")
    p.add_argument("--exact-cyclotomic", action="store_true", help="exact modulus-1 test for lattice maps of dim <= 6")
    p.add_argument("--tolerance", type=float, default=None, help="relative tolerance (default: descriptor option, else 1e-9)")

    add("jordan", cmd_jordan, "multiplicative Jordan decomposition E H U")

    p = add("recurrent", cmd_recurrent, "recurrent set of a linear map, or conjugation membership tests")
    p.add_argument("--conjugation", action="store_true", help="treat the matrix as g and test probes against C_g")
    p.add_argument("--probe", action="append", help="inline JSON probe matrix (repeatable)")
    p.add_argument("--commute-tol", type=float, default=1e-8, help="relative commutator tolerance (default 1e-8)")

    add("adjoint", cmd_adjoint, "adjoint matrix Ad(g) on n x n matrices")

    p = add("estimate", cmd_estimate, "separated-set entropy estimate for an integer torus map")
    p.add_argument("--epsilon", type=float, default=0.05, help="separation scale (default 0.05)")
    p.add_argument("--n-max", type=int, default=14, help="longest orbit segment (default 14)")
    p.add_argument("--grid", type=int, default=200, help="grid points per axis (default 200)")
    p.add_argument("--seed", type=int, default=0, help="seed of the greedy visiting order (default 0)")
    p.add_argument("--wall-budget", type=float, default=None, help="seconds before stopping with exit 4")
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = add("liyorke", cmd_liyorke, "search for a Li-Yorke pair of an integer torus map")
    p.add_argument("--budget", type=int, default=10**6, help="total map applications (default 1e6)")
    p.add_argument("--delta", type=float, default=1e-3, help="proximity threshold (default 1e-3)")

    p = add("verify", cmd_verify, "run the built-in property suite", matrix=False)
    p.add_argument("--level", choices=["fast", "full"], default="fast")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _report_error(exc: LieEntropyError) -> None:
    sys.stderr.write(f"error: {exc}\n")
    if isinstance(exc, ValidationFailed):
        for f in exc.report.findings:
            sys.stderr.write(f"  {f.severity} {f.code}: {f.message} [{f.paper_ref}]\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.schema:
        sys.stdout.write(schema_json() + "\n")
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    start = time.perf_counter()
    try:
        code = args.func(args)
    except BudgetExceeded as exc:
        _report_error(exc)
        code = EXIT_BUDGET
    except InputError as exc:
        _report_error(exc)
        code = EXIT_INPUT
    except (NumericError, LieEntropyError) as exc:
        _report_error(exc)
        code = EXIT_NUMERIC
    if args.timing:
        sys.stderr.write(f"elapsed {time.perf_counter() - start:.3f} s\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
