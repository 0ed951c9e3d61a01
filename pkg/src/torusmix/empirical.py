"""
Empirical search for ``f**n (U) & V != {}`` over open arc products.

For each n the search first walks a deterministic dyadic grid of rational
points of U, coarse levels first, and records the first grid point (in
lexicographic order) whose n-th iterate lands in V. Grid points are rational,
so under an expanding map their orbits become periodic and a fixed grid misses
most targets for large n. When the forward pass finds nothing and ``A**n`` is
invertible, a second pass pulls V's grid back: for each grid point v of V it
solves ``A**n x = v + j`` with the integer shift j that puts x nearest U's
centre. Every witness from either pass is checked exactly.

A missing witness means "not found at this resolution"; it never certifies an
empty intersection.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .circle import Arc, ArcProduct, RationalAngle, TorusPoint, from_fraction
from .endo import EndoMap, apply_matrix, iterate, matrix_power
from .errors import RejectedInput

NOT_FOUND = "not found at this resolution"


def analytic_cover_N(n: int, U: Arc) -> int:
    """Least r such that ``z -> z**n`` iterated r times maps U onto all of T.

    An open arc of length ``2h`` is stretched to length ``|n|**r * 2h``; it
    covers the whole circle once that length exceeds 1 (equality leaves out
    one point).
    """
    if abs(n) < 2:
        raise RejectedInput(f"covering bound needs |n| >= 2, got {n}")
    if U.is_full:
        return 0
    length, r = 2 * U.halfwidth, 0
    while length <= 1:
        length *= abs(n)
        r += 1
    return r


def _contains(arc: Arc, a: RationalAngle) -> bool:
    # integer form of circle_dist(center, a) < halfwidth
    if arc.is_full:
        return True
    c, h = arc.center, arc.halfwidth
    D = a.den * c.den
    d = abs(a.num * c.den - c.num * a.den)
    d = min(d, D - d)
    return d * h.denominator < h.numerator * D


def _in_box(box: ArcProduct, z: TorusPoint) -> bool:
    return all(_contains(arc, a) for arc, a in zip(box.arcs, z.coords))


def axis_points(arc: Arc, level: int) -> list[RationalAngle]:
    """Interior points ``center + h*(2j - M)/M``, j = 1..M-1, of the level-M grid."""
    c, h = arc.center.as_fraction(), arc.halfwidth
    return [from_fraction(c + h * Fraction(2 * j - level, level)) for j in range(1, level)]


def grid_levels(resolution: int) -> list[int]:
    levels, M = [], 2
    while M <= resolution:
        levels.append(M)
        M *= 2
    return levels


def grid(U: ArcProduct, resolution: int):
    """Yield grid points of U, coarse to fine, each point once, lexicographic per level."""
    for M in grid_levels(resolution):
        axes = [axis_points(arc, M) for arc in U.arcs]
        for idx in itertools.product(range(1, M), repeat=U.dim):
            if M > 2 and all(j % 2 == 0 for j in idx):
                continue  # already visited at level M/2
            yield TorusPoint(tuple(axes[a][j - 1] for a, j in enumerate(idx)))


def _floor_half(x: Fraction) -> int:
    # round half up, exact
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def rational_inverse(M) -> list[list[Fraction]] | None:
    """Inverse of an integer matrix over Q by Gauss-Jordan, or None if singular."""
    k = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(M)]
    for col in range(k):
        piv = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


def pullback(An, An_inv, center: list[Fraction], v: TorusPoint) -> TorusPoint:
    """The solution x of ``An x = v + j`` with j = round(An c - v)."""
    vf = [a.as_fraction() for a in v.coords]
    Ac = [sum((a * c for a, c in zip(row, center)), Fraction(0)) for row in An]
    target = [vi + _floor_half(t - vi) for vi, t in zip(vf, Ac)]
    x = [sum((a * t for a, t in zip(row, target)), Fraction(0)) for row in An_inv]
    return TorusPoint(tuple(from_fraction(xi) for xi in x))


@dataclass(frozen=True)
class Hit:
    n: int
    witness: TorusPoint | None
    image: TorusPoint | None
    source: str | None = None  # "grid" or "pullback"


@dataclass(frozen=True)
class MixingReport:
    """Per-n witnesses of ``f**n (U) & V``.

    ``first_stable_N`` is the least n0 >= 1 with a witness for every n in
    ``[n0, n_max]``, or None when n_max itself has none.
    """

    f: EndoMap
    U: ArcProduct
    V: ArcProduct
    n_max: int
    resolution: int
    hits: tuple[Hit, ...]

    def __post_init__(self):
        for hit in self.hits:
            if hit.witness is None:
                continue
            if not (_in_box(self.U, hit.witness) and _in_box(self.V, hit.image)):
                raise ValueError(f"witness for n={hit.n} fails membership")
            if iterate(self.f, hit.witness, hit.n) != hit.image:
                raise ValueError(f"witness image for n={hit.n} is wrong")

    @property
    def witnessed(self) -> list[int]:
        return [h.n for h in self.hits if h.witness is not None]

    @property
    def first_stable_N(self) -> int | None:
        n0 = None
        for hit in reversed(self.hits):
            if hit.witness is None:
                break
            n0 = hit.n
        return n0

    def to_json(self) -> dict:
        from .serialize import arc_product_to_json, point_to_json

        return {
            "U": arc_product_to_json(self.U),
            "V": arc_product_to_json(self.V),
            "n_max": self.n_max,
            "resolution": self.resolution,
            "first_stable_N": self.first_stable_N,
            "hits": [
                {"n": h.n, "witness": point_to_json(h.witness), "image": point_to_json(h.image),
                 "source": h.source}
                if h.witness is not None
                else {"n": h.n, "witness": None, "status": NOT_FOUND}
                for h in self.hits
            ],
        }


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("TORUSMIX_THREADS", "1")))
    except ValueError:
        return 1


def empirical_mixing(
    f: EndoMap,
    U: ArcProduct,
    V: ArcProduct,
    n_max: int,
    samples_per_axis: int = 64,
    threads: int | None = None,
    observer: Callable[[int, TorusPoint, TorusPoint], None] | None = None,
) -> MixingReport:
    """Search for a witness z in U with ``f**n (z)`` in V for each n in 1..n_max.

    ``observer(n, z, image)`` is called on every evaluated grid point; with it
    set, the search scans the full grid instead of stopping at the first hit.
    """
    if n_max < 1:
        raise RejectedInput(f"n_max must be >= 1, got {n_max}")
    if samples_per_axis < 2:
        raise RejectedInput(f"samples_per_axis must be >= 2, got {samples_per_axis}")
    if U.dim != f.dim or V.dim != f.dim:
        raise RejectedInput(f"arc products must have dimension {f.dim}")
    points = list(grid(U, samples_per_axis))
    targets = list(grid(V, samples_per_axis))
    center = [arc.center.as_fraction() for arc in U.arcs]
    A = f.matrix()

    def search(n: int) -> Hit:
        An = matrix_power(A, n)
        found = None
        for z in points:
            w = apply_matrix(An, z)
            if observer is not None:
                observer(n, z, w)
            if found is None and _in_box(V, w):
                found = Hit(n, z, w, "grid")
                if observer is None:
                    break
        if found is not None:
            return found
        An_inv = rational_inverse(An)
        if An_inv is None:
            return Hit(n, None, None)
        for v in targets:
            x = pullback(An, An_inv, center, v)
            if _in_box(U, x):
                w = apply_matrix(An, x)
                if observer is not None:
                    observer(n, x, w)
                if _in_box(V, w):
                    return Hit(n, x, w, "pullback")
        return Hit(n, None, None)

    threads = default_threads() if threads is None else max(1, threads)
    ns = range(1, n_max + 1)
    if threads == 1 or observer is not None:
        hits = [search(n) for n in ns]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hits = list(pool.map(search, ns))
    return MixingReport(f, U, V, n_max, samples_per_axis, tuple(hits))
