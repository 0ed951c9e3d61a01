"""JSON formats. Every number that carries exact value crosses as a string."""

from __future__ import annotations

from fractions import Fraction

from .circle import Arc, ArcProduct, TorusPoint, format_rational, parse_angle, parse_rational
from .endo import CirclePower, EndoMap, ExponentMatrix, PermPower, Permutation
from .errors import RejectedInput
from .product import FiniteSupportSeq, ShiftExtension


def parse_int(value, what: str = "integer") -> int:
    """Accept a JSON integer or a decimal string (for arbitrary precision)."""
    if isinstance(value, bool):
        raise RejectedInput(f"{what} must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise RejectedInput(f"{what} must be an integer or decimal string, got {value!r}")


def point_from_json(data) -> TorusPoint:
    if not isinstance(data, list) or not data:
        raise RejectedInput(f"a point is a nonempty list of 'p/q' strings, got {data!r}")
    return TorusPoint(tuple(parse_angle(s) for s in data))


def point_to_json(z: TorusPoint | None):
    if z is None:
        return None
    return [str(a) for a in z.coords]


def arc_from_json(data) -> Arc:
    if not isinstance(data, dict) or set(data) != {"center", "halfwidth"}:
        raise RejectedInput(f"an arc is {{'center': 'p/q', 'halfwidth': 'r/s'}}, got {data!r}")
    return Arc(parse_angle(data["center"]), parse_rational(data["halfwidth"]))


def arc_to_json(arc: Arc) -> dict:
    return {"center": str(arc.center), "halfwidth": format_rational(arc.halfwidth)}


def arc_product_from_json(data) -> ArcProduct:
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list) or not data:
        raise RejectedInput("an arc product is a nonempty list of arcs")
    return ArcProduct(tuple(arc_from_json(a) for a in data))


def arc_product_to_json(box: ArcProduct) -> list:
    return [arc_to_json(a) for a in box.arcs]


def map_from_json(data) -> EndoMap:
    """Parse ``{"type": "circle_power" | "perm_power" | "matrix", ...}``.

    ``sigma_cycles`` uses 1-based cycle notation, e.g. ``[[1, 3, 5, 2, 4]]``;
    the dimension is ``len(m)``.
    """
    if not isinstance(data, dict) or "type" not in data:
        raise RejectedInput("a map spec is a JSON object with a 'type' field")
    kind = data["type"]
    if kind == "circle_power":
        _expect_keys(data, {"type", "n"})
        return CirclePower(parse_int(data["n"], "n"))
    if kind == "perm_power":
        _expect_keys(data, {"type", "sigma_cycles", "m"})
        m = data["m"]
        cycles = data["sigma_cycles"]
        if not isinstance(m, list) or not m:
            raise RejectedInput("'m' must be a nonempty list")
        if not isinstance(cycles, list) or not all(isinstance(c, list) for c in cycles):
            raise RejectedInput("'sigma_cycles' must be a list of lists")
        exps = tuple(parse_int(x, "exponent") for x in m)
        cyc = [[parse_int(c, "cycle entry") for c in cycle] for cycle in cycles]
        sigma = Permutation.from_cycles(cyc, len(exps), one_based=True)
        return PermPower(sigma, exps)
    if kind == "matrix":
        _expect_keys(data, {"type", "A"})
        A = data["A"]
        if not isinstance(A, list) or not all(isinstance(r, list) for r in A):
            raise RejectedInput("'A' must be a list of rows")
        return ExponentMatrix(tuple(tuple(parse_int(x, "matrix entry") for x in row) for row in A))
    raise RejectedInput(f"unknown map type {kind!r}")


def _expect_keys(data: dict, keys: set):
    if set(data) != keys:
        raise RejectedInput(f"map spec keys must be {sorted(keys)}, got {sorted(data)}")


def map_to_json(f: EndoMap) -> dict:
    from .endo import orbit_cycles

    if isinstance(f, CirclePower):
        return {"type": "circle_power", "n": str(f.n)}
    if isinstance(f, PermPower):
        cycles = [[i + 1 for i in c] for c in orbit_cycles(f.sigma) if len(c) > 1]
        return {"type": "perm_power", "sigma_cycles": cycles, "m": [str(x) for x in f.m]}
    return {"type": "matrix", "A": [[str(x) for x in row] for row in f.matrix()]}


def matrix_to_json(A) -> list:
    return [[str(x) for x in row] for row in A]


def seq_from_json(ext: ShiftExtension, data) -> FiniteSupportSeq:
    if not isinstance(data, list):
        raise RejectedInput("a sequence is a list of points")
    return ext.seq(point_from_json(p) for p in data)


def seq_to_json(ext: ShiftExtension, g: FiniteSupportSeq) -> list:
    """Entries as point lists; the identity sequence is written as one identity entry."""
    if not g.entries:
        return [point_to_json(ext.base.identity)]
    return [point_to_json(p) for p in g.entries]


def rational_to_json(x: Fraction) -> str:
    return format_rational(Fraction(x))
