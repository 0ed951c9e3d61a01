"""
torusmix command line.

Subcommands: classify | iterate | mix-verify | criterion | product-sim.

Map files are JSON: {"type": "circle_power", "n": 2},
{"type": "perm_power", "sigma_cycles": [[1, 3, 5, 2, 4]], "m": [2, 2, 2, 2, 2]}
or {"type": "matrix", "A": [[1, 2], [1, 2]]}. Cycle notation is 1-based on
input; arrays in output are 0-based. Rationals are "p/q" strings and big
integers may be given as decimal strings.

Exit codes: 0 report written, 2 invalid input, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .circle import parse_rational
from .criterion import criterion_check
from .empirical import analytic_cover_N, empirical_mixing
from .endo import CirclePower, PermPower, as_matrix, iterate, matrix_power
from .errors import RejectedInput
from .mixing import RootFamily, classify_map, prop1_witnesses, prop2_witnesses
from .product import assembled_witnesses, torus_extension
from .serialize import (
    arc_product_from_json,
    map_from_json,
    map_to_json,
    matrix_to_json,
    parse_int,
    point_from_json,
    point_to_json,
    rational_to_json,
    seq_from_json,
    seq_to_json,
)

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise RejectedInput(message)


def _load_json_arg(value: str, what: str):
    """Inline JSON, or a path to a JSON file ('-' for stdin)."""
    if value == "-":
        return json.load(sys.stdin)
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        pass
    if os.path.exists(value):
        with open(value) as fh:
            try:
                return json.load(fh)
            except json.JSONDecodeError as exc:
                raise RejectedInput(f"{what}: {value} is not valid JSON ({exc})") from exc
    raise RejectedInput(f"{what}: not valid JSON and no such file: {value!r}")


def _load_map(args):
    if args.map is None:
        raise RejectedInput("--map is required")
    return map_from_json(_load_json_arg(args.map, "--map"))


def _positive(value: int, flag: str) -> int:
    if value < 1:
        raise RejectedInput(f"{flag} must be positive, got {value}")
    return value


def _tolerance(args) -> Fraction:
    tol = parse_rational(args.tolerance)
    if tol <= 0:
        raise RejectedInput("--tolerance must be positive")
    return tol


def cmd_classify(args) -> dict:
    f = _load_map(args)
    return {"command": "classify", "map": map_to_json(f), "result": classify_map(f).to_json()}


def cmd_iterate(args) -> dict:
    f = _load_map(args)
    if args.point is None:
        raise RejectedInput("--point is required")
    z = point_from_json(_load_json_arg(args.point, "--point"))
    if args.r < 0:
        raise RejectedInput("--r must be >= 0")
    out = {
        "command": "iterate",
        "map": map_to_json(f),
        "point": point_to_json(z),
        "r": args.r,
        "result": point_to_json(iterate(f, z, args.r)),
    }
    if args.show_matrix:
        out["matrix_power"] = matrix_to_json(matrix_power(as_matrix(f), args.r))
    return out


def cmd_mix_verify(args) -> dict:
    f = _load_map(args)
    if args.u is None or args.v is None:
        raise RejectedInput("--u and --v are required")
    U = arc_product_from_json(_load_json_arg(args.u, "--u"))
    V = arc_product_from_json(_load_json_arg(args.v, "--v"))
    if U.dim != f.dim or V.dim != f.dim:
        raise RejectedInput(f"--u and --v must have dimension {f.dim}")
    report = empirical_mixing(
        f, U, V, _positive(args.n_max, "--n-max"), args.resolution, threads=args.threads
    )
    out = {"command": "mix-verify", "map": map_to_json(f), "report": report.to_json()}
    n = _circle_exponent(f)
    if n is not None and abs(n) >= 2:
        out["analytic_cover_N"] = analytic_cover_N(n, U.arcs[0])
    return out


def _circle_exponent(f):
    if isinstance(f, CirclePower):
        return f.n
    if f.dim == 1:
        return as_matrix(f)[0][0]
    return None


def cmd_criterion(args) -> dict:
    f = _load_map(args)
    horizon = _positive(args.horizon, "--horizon")
    tol = _tolerance(args)
    samples = _load_json_arg(args.samples, "--samples") if args.samples else None
    witness = args.witness
    system = f
    if witness == "prop1":
        n = _circle_exponent(f)
        if n is None:
            raise RejectedInput("witness family prop1 needs a one-dimensional map")
        if n == 0:
            raise RejectedInput("z -> z**0 has no right inverse; prop1 witnesses are undefined")
        base = args.base or (abs(n) if abs(n) >= 2 else 2)
        F, H, psi = prop1_witnesses(n, args.level, base=base)
        f = CirclePower(n)
        system = f
    elif witness == "prop2":
        if not isinstance(f, PermPower):
            raise RejectedInput("witness family prop2 needs a perm_power map")
        F, H, psi = prop2_witnesses(f, args.level, args.count, seed=args.seed)
    elif witness == "product-extension":
        ext = torus_extension(f)
        H_base = _base_dense_points(f, args.level)
        F, H, psi = assembled_witnesses(ext, H_base, args.support, args.count, seed=args.seed)
        system = ext
    else:
        raise RejectedInput(f"unknown witness family {witness!r}")
    exact = True
    if samples is not None:
        if witness == "product-extension":
            ext = system
            F = [seq_from_json(ext, s) for s in samples.get("F", [])]
            H = [seq_from_json(ext, s) for s in samples.get("H", [])]
        else:
            F = [point_from_json(p) for p in samples.get("F", [])]
            H = [point_from_json(p) for p in samples.get("H", [])]
        exact = False
    report = criterion_check(system, F, H, psi, horizon, tol, exact=exact)
    return {
        "command": "criterion",
        "map": map_to_json(f),
        "witness": witness,
        "samples": {"F": len(F), "H": len(H)},
        "report": report.to_json(),
    }


def _base_dense_points(f, level: int):
    from itertools import product

    from .circle import TorusPoint

    pts = RootFamily(2, level).points()
    return [TorusPoint(c) for c in product(pts, repeat=f.dim)]


def cmd_product_sim(args) -> dict:
    f = _load_map(args)
    ext = torus_extension(f)
    if args.sequence is None:
        raise RejectedInput("--sequence is required")
    g = seq_from_json(ext, _load_json_arg(args.sequence, "--sequence"))
    trace = []
    for op in [o.strip() for o in args.ops.split(",") if o.strip()]:
        trace.append(_run_subop(ext, g, op))
    return {
        "command": "product-sim",
        "base_map": map_to_json(f),
        "sequence": seq_to_json(ext, g),
        "trace": trace,
    }


def _run_subop(ext, g, op: str) -> dict:
    name, _, arg = op.partition("-")
    if name in ("iterate", "closed", "shrink", "c") and not arg:
        raise RejectedInput(f"subop {op!r} needs a numeric suffix")
    if op == "phi":
        return {"op": op, "result": seq_to_json(ext, ext.big_phi(g))}
    if op == "psi":
        return {"op": op, "result": seq_to_json(ext, ext.big_psi(g))}
    if op == "phi-psi":
        out = ext.big_phi(ext.big_psi(g))
        return {"op": op, "result": seq_to_json(ext, out), "equals_input": out == g}
    if op == "psi-phi":
        out = ext.big_psi(ext.big_phi(g))
        return {"op": op, "result": seq_to_json(ext, out), "equals_input": out == g}
    if op == "metric":
        return {"op": op, "result": rational_to_json(ext.metric(g, ext.identity))}
    prefix, _, k = op.rpartition("-")
    k = parse_int(k, f"subop {op!r} suffix")
    if k < 0:
        raise RejectedInput(f"subop {op!r} needs a nonnegative suffix")
    if prefix == "iterate":
        return {"op": op, "result": seq_to_json(ext, ext.iterate(g, k))}
    if prefix == "closed-form":
        return {"op": op, "result": seq_to_json(ext, ext.phi_iterate_closed_form(g, k))}
    if prefix == "shrink-bound":
        value, ok = ext.shrink_bound_check(g, k)
        return {"op": op, "value": rational_to_json(value), "bound": rational_to_json(Fraction(1, 2**k)),
                "within_bound": ok}
    if prefix == "c-tilde":
        c = ext.c_tilde_element(g, k)
        return {"op": op, "result": seq_to_json(ext, c),
                "annihilated": ext.iterate(c, k) == ext.identity,
                "distance_to_input": rational_to_json(ext.metric(c, g))}
    raise RejectedInput(f"unknown subop {op!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="torusmix", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"torusmix {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--map", help="map spec: JSON file, inline JSON, or '-' for stdin")
        sp.add_argument("--out", help="write the report here instead of stdout")

    sp = sub.add_parser("classify", help="mixing verdict for a map")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("iterate", help="exact r-th iterate of a point")
    common(sp)
    sp.add_argument("--point", help='JSON list of "p/q" strings')
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--show-matrix", action="store_true", help="also print the exponent matrix power")
    sp.set_defaults(func=cmd_iterate)

    sp = sub.add_parser("mix-verify", help="grid search for f^n(U) & V witnesses")
    common(sp)
    sp.add_argument("--u", help="arc product U (JSON file or inline)")
    sp.add_argument("--v", help="arc product V (JSON file or inline)")
    sp.add_argument("--n-max", type=int, default=64)
    sp.add_argument("--resolution", type=int, default=64, help="finest dyadic grid level per axis")
    sp.add_argument("--threads", type=int, default=None, help="worker threads (default: $TORUSMIX_THREADS or 1)")
    sp.set_defaults(func=cmd_mix_verify)

    sp = sub.add_parser("criterion", help="finite-horizon mixing criterion check")
    common(sp)
    sp.add_argument("--witness", default="prop1", help="prop1 | prop2 | product-extension")
    sp.add_argument("--horizon", type=int, default=20)
    sp.add_argument("--tolerance", default="1/100", help='rational "p/q"')
    sp.add_argument("--level", type=int, default=3, help="root-family level of the samples")
    sp.add_argument("--base", type=int, default=None, help="root-family base for prop1 (default |n|)")
    sp.add_argument("--count", type=int, default=16, help="number of samples (prop2, product-extension)")
    sp.add_argument("--support", type=int, default=3, help="support length (product-extension)")
    sp.add_argument("--seed", type=int, default=0, help="seed of the sample enumeration")
    sp.add_argument("--samples", help='user samples {"F": [...], "H": [...]}; judged with tolerance')
    sp.set_defaults(func=cmd_criterion)

    sp = sub.add_parser("product-sim", help="shift extension on finitely supported sequences")
    common(sp)
    sp.add_argument("--sequence", help="JSON list of base points")
    sp.add_argument(
        "--ops",
        default="phi,psi,phi-psi",
        help="comma list of phi, psi, phi-psi, psi-phi, metric, iterate-K, closed-form-K, shrink-bound-K, c-tilde-K",
    )
    sp.set_defaults(func=cmd_product_sim)
    return p


def _emit(obj, out_path):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    out_path = None
    try:
        args = parser.parse_args(argv)
        out_path = args.out
        _emit(args.func(args), out_path)
        return EXIT_OK
    except RejectedInput as exc:
        _emit({"error": str(exc), "kind": "invalid_input"}, None)
        return EXIT_INVALID
    except (OSError, json.JSONDecodeError) as exc:
        _emit({"error": str(exc), "kind": "invalid_input"}, None)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        _emit({"error": f"{type(exc).__name__}: {exc}", "kind": "internal_error"}, None)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
