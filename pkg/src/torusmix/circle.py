"""
Exact arithmetic on the circle group T and on finite tori T^k.

Points of the circle are stored in turns: the rational t in [0, 1) stands for
the unit complex number exp(2*pi*i*t). Multiplication of unit complex numbers
becomes addition mod 1, so every root of unity is an exact rational and all
group operations reduce to integer arithmetic.

The metric is arclength divided by 2*pi, so distances lie in [0, 1/2].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Iterable, Sequence

from .errors import RejectedInput

HALF = Fraction(1, 2)


@total_ordering
class RationalAngle:
    """A point of T as a reduced fraction ``num/den`` of a full turn.

    Invariants: ``0 <= num < den`` and ``gcd(num, den) == 1``; the identity is
    ``0/1``. Instances are immutable and hashable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise RejectedInput("zero denominator")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    @classmethod
    def _reduced(cls, num: int, den: int) -> "RationalAngle":
        # caller guarantees 0 <= num < den and gcd(num, den) == 1
        self = object.__new__(cls)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("RationalAngle is immutable")

    def __eq__(self, other):
        if not isinstance(other, RationalAngle):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __lt__(self, other):
        if not isinstance(other, RationalAngle):
            return NotImplemented
        return self.num * other.den < other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalAngle({self.num}, {self.den})"

    def __str__(self):
        return f"{self.num}/{self.den}"

    def __reduce__(self):
        return (RationalAngle, (self.num, self.den))

    @property
    def is_identity(self) -> bool:
        return self.num == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)


IDENTITY = RationalAngle._reduced(0, 1)


def _reduce(num: int, den: int) -> RationalAngle:
    num %= den
    g = gcd(num, den)
    return RationalAngle._reduced(num // g, den // g)


def make_angle(p: int, q: int = 1) -> RationalAngle:
    """Reduced representative of ``p/q`` mod 1."""
    if q == 0:
        raise RejectedInput("zero denominator")
    return RationalAngle(p, q)


def from_fraction(x: Fraction) -> RationalAngle:
    return _reduce(x.numerator, x.denominator)


def parse_angle(text: str) -> RationalAngle:
    """Parse ``"p/q"`` or ``"p"`` into a reduced angle."""
    if not isinstance(text, str):
        raise RejectedInput(f"angle must be a 'p/q' string, got {text!r}")
    parts = text.strip().split("/")
    try:
        if len(parts) == 1:
            return make_angle(int(parts[0]), 1)
        if len(parts) == 2:
            return make_angle(int(parts[0]), int(parts[1]))
    except ValueError as exc:
        raise RejectedInput(f"malformed angle {text!r}") from exc
    raise RejectedInput(f"malformed angle {text!r}")


def parse_rational(text: str) -> Fraction:
    """Parse a ``"p/q"`` string into a Fraction (not reduced mod 1)."""
    if not isinstance(text, str):
        raise RejectedInput(f"rational must be a 'p/q' string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise RejectedInput(f"malformed rational {text!r}") from exc


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def angle_mul(a: RationalAngle, b: RationalAngle) -> RationalAngle:
    """Group product of T: addition of turns mod 1."""
    if a.den == b.den:
        return _reduce(a.num + b.num, a.den)
    return _reduce(a.num * b.den + b.num * a.den, a.den * b.den)


def angle_inv(a: RationalAngle) -> RationalAngle:
    if a.num == 0:
        return a
    return RationalAngle._reduced(a.den - a.num, a.den)


def angle_pow(a: RationalAngle, n: int) -> RationalAngle:
    """``z -> z**n``: multiply the turn by ``n`` mod 1. ``n`` may be any integer."""
    return _reduce(n * a.num, a.den)


def angle_root(a: RationalAngle, n: int) -> RationalAngle:
    """The canonical n-th root ``a/n``, lying in ``[0, 1/n)``."""
    if n < 1:
        raise RejectedInput(f"root index must be positive, got {n}")
    g = gcd(a.num, n)
    return RationalAngle._reduced(a.num // g, a.den * (n // g))


def circle_dist(a: RationalAngle, b: RationalAngle) -> Fraction:
    """Normalized arclength distance, in ``[0, 1/2]``."""
    d = abs(a.as_fraction() - b.as_fraction())
    return min(d, 1 - d)


def dist_to_identity(a: RationalAngle) -> Fraction:
    d = Fraction(a.num, a.den)
    return min(d, 1 - d)


@dataclass(frozen=True)
class Arc:
    """Open arc ``{t : circle_dist(center, t) < halfwidth}``.

    A halfwidth of exactly 1/2 denotes the whole circle.
    """

    center: RationalAngle
    halfwidth: Fraction

    def __post_init__(self):
        hw = Fraction(self.halfwidth)
        if hw <= 0 or hw > HALF:
            raise RejectedInput(f"arc halfwidth must lie in (0, 1/2], got {hw}")
        object.__setattr__(self, "halfwidth", hw)

    @property
    def is_full(self) -> bool:
        return self.halfwidth == HALF

    def contains(self, a: RationalAngle) -> bool:
        return arc_contains(self, a)


def arc_contains(arc: Arc, a: RationalAngle) -> bool:
    if arc.is_full:
        return True
    return circle_dist(arc.center, a) < arc.halfwidth


@dataclass(frozen=True)
class TorusPoint:
    coords: tuple[RationalAngle, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords:
            raise RejectedInput("a torus point needs at least one coordinate")
        for c in coords:
            if not isinstance(c, RationalAngle):
                raise RejectedInput(f"coordinate {c!r} is not a RationalAngle")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def identity(cls, k: int) -> "TorusPoint":
        return cls((IDENTITY,) * k)

    @classmethod
    def of(cls, *values) -> "TorusPoint":
        """Build from ``"p/q"`` strings, Fractions, or (p, q) pairs."""
        coords = []
        for v in values:
            if isinstance(v, RationalAngle):
                coords.append(v)
            elif isinstance(v, str):
                coords.append(parse_angle(v))
            elif isinstance(v, tuple):
                coords.append(make_angle(*v))
            else:
                coords.append(from_fraction(Fraction(v)))
        return cls(tuple(coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def is_identity(self) -> bool:
        return all(c.num == 0 for c in self.coords)


def torus_mul(z: TorusPoint, w: TorusPoint) -> TorusPoint:
    if len(z) != len(w):
        raise RejectedInput(f"dimension mismatch: {len(z)} vs {len(w)}")
    return TorusPoint(tuple(angle_mul(a, b) for a, b in zip(z.coords, w.coords)))


def torus_inv(z: TorusPoint) -> TorusPoint:
    return TorusPoint(tuple(angle_inv(a) for a in z.coords))


def torus_dist(z: TorusPoint, w: TorusPoint) -> Fraction:
    """Max over coordinates of circle_dist; bounded by 1/2."""
    if len(z) != len(w):
        raise RejectedInput(f"dimension mismatch: {len(z)} vs {len(w)}")
    return max(circle_dist(a, b) for a, b in zip(z.coords, w.coords))


@dataclass(frozen=True)
class ArcProduct:
    """Open box ``arcs[0] x ... x arcs[k-1]`` in T^k."""

    arcs: tuple[Arc, ...]

    def __post_init__(self):
        arcs = tuple(self.arcs)
        if not arcs:
            raise RejectedInput("an arc product needs at least one arc")
        object.__setattr__(self, "arcs", arcs)

    @property
    def dim(self) -> int:
        return len(self.arcs)

    def contains(self, z: TorusPoint) -> bool:
        if len(z) != len(self.arcs):
            raise RejectedInput(f"dimension mismatch: {len(z)} vs {len(self.arcs)}")
        return all(arc_contains(arc, a) for arc, a in zip(self.arcs, z.coords))


def lcm_of(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def common_denominator(points: Sequence[RationalAngle]) -> int:
    return lcm_of(a.den for a in points)
