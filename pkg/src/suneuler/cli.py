"""``suneuler`` command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
parse error.  Matrices travel as JSON matrix files (see
:mod:`suneuler.matrixio`); scan tables are CSV.  The default seed is 42 and
may be overridden by the ``SUNEULER_SEED`` environment variable; the seed in
use and where it came from are echoed in the output metadata.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys

import numpy as np

from suneuler._validation import InvalidStateError
from suneuler.algebra import generate_basis
from suneuler.bloch import bell_density, coherence_vector
from suneuler.entangle import ENTANGLED_TOL, partial_transpose, ppt_report
from suneuler.euler import conjugate, su4_euler, su6_euler
from suneuler.matrixio import MatrixFileError, dumps, format_float, matrix_to_obj, read_matrix
from suneuler.region import region_scan
from suneuler.volume import (
    CHARTS,
    EstimationFailedError,
    entangling_volume_exact,
    integrate_volume,
    symplex_bound,
    symplex_bound_check,
    symplex_factor,
)

DEFAULT_SEED = 42
SEED_ENV = "SUNEULER_SEED"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help=f"random seed (default {DEFAULT_SEED}, or ${SEED_ENV})")
    common.add_argument("--samples", type=int, default=None, help="sample count")
    common.add_argument("--tol", type=_positive_float, default=None, help="numerical tolerance")
    common.add_argument("--out", default=None, help="write output to FILE instead of stdout")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")

    p = argparse.ArgumentParser(prog="suneuler", description="SU(N) Euler angles, coherence vectors and entanglement checks.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    s = sub.add_parser("gellmann", parents=[common], help="generalized Gell-Mann basis")
    s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("decompose", parents=[common], help="coherence vector of a density matrix")
    s.add_argument("--rho", required=True)
    s.add_argument("--n", type=int, default=None, help="expected dimension")

    s = sub.add_parser("bell", parents=[common], help="Bell-state density matrix")
    s.add_argument("--k", type=int, required=True, choices=[1, 2, 3, 4])

    s = sub.add_parser("compose", parents=[common], help="unitary from Euler angles")
    s.add_argument("--group", choices=["su4", "su6"], required=True)
    s.add_argument("--angles", type=_float_list, required=True, help="comma-separated alpha_1,...")
    s.add_argument("--apply", default=None, metavar="RHO", help="return U rho U^dagger instead of U")

    s = sub.add_parser("ppt", parents=[common], help="partial-transpose entanglement test")
    s.add_argument("--rho", required=True)
    s.add_argument("--da", type=int, required=True)
    s.add_argument("--db", type=int, required=True)
    s.add_argument("--subsystem", choices=["A", "B"], default="B")

    s = sub.add_parser("region-scan", parents=[common], help="classify random eigenvalue angles")

    s = sub.add_parser("volume", parents=[common], help="Fubini-Study volumes")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--chart", choices=sorted(CHARTS))
    g.add_argument("--analytic", choices=["su4", "su6"])
    s.add_argument("--method", choices=["monte-carlo", "tensor-grid"], default="monte-carlo")
    s.add_argument("--workers", type=int, default=1)

    s = sub.add_parser("symplex", parents=[common], help="naive eigenvalue-simplex factor")
    s.add_argument("--group", choices=["su4", "su6"], required=True)
    s.add_argument("--s", type=float, required=True)
    s.add_argument("--alpha-s", type=float, required=True)
    s.add_argument("--ranges", type=_float_list, required=True, help="lo1,hi1,lo2,hi2,...")

    s = sub.add_parser("verify", parents=[common], help="run the reproduction checks")
    s.add_argument("--workers", type=int, default=1)
    return p


def _resolve_seed(args) -> tuple[int, str]:
    if args.seed is not None:
        return args.seed, "--seed"
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env), f"env {SEED_ENV}"
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_SEED, "default"


def _emit(text: str, args) -> None:
    if args.out:
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise MatrixFileError(f"cannot write {args.out}: {exc}") from None
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return dumps(obj, indent=2) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([format_float(x) if isinstance(x, (float, np.floating)) else ("" if x is None else x) for x in r])
    return buf.getvalue()


def cmd_gellmann(args) -> int:
    basis = generate_basis(args.n)
    if args.format == "csv":
        rows = []
        for k, m in enumerate(basis.matrices, start=1):
            for r in range(args.n):
                for c in range(args.n):
                    if m[r, c] != 0:
                        rows.append((k, r + 1, c + 1, float(m[r, c].real), float(m[r, c].imag)))
        _emit(_csv(["index", "row", "col", "re", "im"], rows), args)
    else:
        mats = [[[float(z.real), float(z.imag)] for z in m.reshape(-1)] for m in basis.matrices]
        _emit(_json({"n": args.n, "count": len(mats), "matrices": mats}), args)
    return EXIT_OK


def cmd_decompose(args) -> int:
    rho = read_matrix(args.rho)
    if args.n is not None and rho.dim != args.n:
        raise UsageError(f"--n {args.n} but the matrix is {rho.dim}x{rho.dim}")
    if args.tol is not None:
        rho.validate(tol=args.tol)
    n = coherence_vector(rho).n
    if args.format == "json":
        _emit(_json({"n": rho.dim, "coherence_vector": [float(x) for x in n]}), args)
    else:
        _emit(_csv(["index", "n_i"], [(i, float(v)) for i, v in enumerate(n, start=1)]), args)
    return EXIT_OK


def cmd_bell(args) -> int:
    _emit(_json(matrix_to_obj(bell_density(args.k))), args)
    return EXIT_OK


def cmd_compose(args) -> int:
    f = su4_euler(args.angles) if args.group == "su4" else su6_euler(args.angles)
    u = f.unitary()
    if args.apply:
        rho = read_matrix(args.apply)
        _emit(_json(matrix_to_obj(conjugate(u, rho))), args)
    else:
        _emit(_json(matrix_to_obj(u)), args)
    return EXIT_OK


def cmd_ppt(args) -> int:
    rho = read_matrix(args.rho).with_dims(args.da, args.db)
    tol = args.tol if args.tol is not None else ENTANGLED_TOL
    rho.validate(tol=max(tol, 1e-12))
    rep = ppt_report(rho, tol=tol)
    out = {
        "dims": [args.da, args.db],
        "subsystem": args.subsystem,
        "spectrum": [float(x) for x in np.linalg.eigvalsh(partial_transpose(rho, args.subsystem))],
        "negativity": rep.negativity,
        "char_constant": rep.char_constant,
        "entangled": rep.entangled,
        "tol": tol,
    }
    _emit(_json(out), args)
    return EXIT_OK


def cmd_region_scan(args) -> int:
    seed, source = _resolve_seed(args)
    samples = args.samples if args.samples is not None else 1000
    if samples < 1:
        raise UsageError("--samples must be positive")
    rows = region_scan(samples, seed)
    if args.format == "json":
        out = {
            "meta": {"seed": seed, "seed_source": source, "samples": samples},
            "rows": [{"theta": list(r[:3]), "branch": r[3], "purity": r[4]} for r in rows],
        }
        _emit(_json(out), args)
    else:
        print(f"seed={seed} ({source}) samples={samples}", file=sys.stderr)
        _emit(_csv(["theta1", "theta2", "theta3", "branch", "purity"], rows), args)
    return EXIT_OK


def cmd_volume(args) -> int:
    if args.analytic:
        exact = entangling_volume_exact(args.analytic)
        _emit(_json({"group": args.analytic, "value": float(exact), "exact": str(exact)}), args)
        return EXIT_OK
    seed, source = _resolve_seed(args)
    samples = args.samples if args.samples is not None else 100_000
    est = integrate_volume(args.chart, method=args.method, samples=samples, seed=seed,
                           workers=args.workers)
    out = {
        "chart": est.chart,
        "method": est.method,
        "value": est.value,
        "std_error": est.std_error,
        "samples": est.samples,
        "flagged": est.flagged,
        "meta": {"seed": seed, "seed_source": source},
    }
    _emit(_json(out), args)
    return EXIT_OK


def cmd_symplex(args) -> int:
    r = args.ranges
    if len(r) % 2:
        raise UsageError("--ranges needs an even number of values (lo, hi pairs)")
    pairs = [(r[i], r[i + 1]) for i in range(0, len(r), 2)]
    fac = symplex_factor(args.group, args.s, args.alpha_s, pairs)
    out = {
        "group": args.group,
        "s": args.s,
        "alpha_s": args.alpha_s,
        "omega": fac.omega,
        "volume": fac.volume,
        "product": fac.product,
        "bound": symplex_bound(args.group, args.s),
        "within_bound": symplex_bound_check(args.group, args.s, fac.product),
    }
    _emit(_json(out), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    from suneuler.verification import render_report, run_all

    seed, source = _resolve_seed(args)
    results = run_all(seed=seed, workers=args.workers, samples=args.samples)
    _emit(render_report(results, seed, source), args)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


COMMANDS = {
    "gellmann": cmd_gellmann,
    "decompose": cmd_decompose,
    "bell": cmd_bell,
    "compose": cmd_compose,
    "ppt": cmd_ppt,
    "region-scan": cmd_region_scan,
    "volume": cmd_volume,
    "symplex": cmd_symplex,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (MatrixFileError, InvalidStateError, OSError) as exc:
        print(f"suneuler: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, EstimationFailedError, ValueError, IndexError) as exc:
        print(f"suneuler: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
