"""
Mixing witnesses and classification for circle powers and permutation-power maps.

The witnesses are the ones a semigroup mixing criterion asks for: a dense set
of points driven to the identity by forward iteration (roots of unity of
prime-power-like order), and a family of right inverses ``psi_n`` of ``f**n``
contracting to the identity (angle division).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Callable, ClassVar

from .circle import (
    IDENTITY,
    RationalAngle,
    TorusPoint,
    _reduce,
    angle_pow,
    make_angle,
)
from .endo import (
    CirclePower,
    EndoMap,
    ExponentMatrix,
    Matrix,
    PermPower,
    Permutation,
    as_matrix,
    matrix_power,
    orbit_cycles,
)
from .errors import RejectedInput


@dataclass(frozen=True)
class RootFamily:
    """``{z : z**(base**level) = 1}``, the base**level evenly spaced points."""

    base: int
    level: int

    def __post_init__(self):
        if self.base < 2:
            raise RejectedInput(f"root family base must be >= 2, got {self.base}")
        if self.level < 0:
            raise RejectedInput(f"root family level must be >= 0, got {self.level}")

    @property
    def order(self) -> int:
        return self.base**self.level

    def __contains__(self, z: RationalAngle) -> bool:
        return self.order % z.den == 0

    def points(self) -> list[RationalAngle]:
        q = self.order
        return [make_angle(j, q) for j in range(q)]


def root_family_points(base: int, level: int) -> list[RationalAngle]:
    if level < 1:
        raise RejectedInput(f"root family level must be >= 1, got {level}")
    return RootFamily(base, level).points()


def density_level(base: int, eps) -> int:
    """Least level whose point spacing ``base**-level`` is below ``eps``."""
    if base < 2 or eps <= 0:
        raise RejectedInput("need base >= 2 and eps > 0")
    k, q = 0, 1
    while not (1 / q < eps if isinstance(eps, float) else q * eps > 1):
        k += 1
        q *= base
    return k


def collapse_index(n: int, z: RationalAngle) -> int | None:
    """Least r with ``n**r * z = 0 mod 1``, or None if no such r exists."""
    r, den = 0, z.den
    while den != 1:
        g = gcd(den, n)
        if g == 1:
            return None
        den //= g
        r += 1
    return r


def forward_collapse_check(n: int, z: RationalAngle, level: int, horizon: int) -> bool:
    """True iff ``z**(n**r) == 1`` for every r in ``[level, horizon]``.

    ``z`` must lie in the root family of the given base and level. Iterates are
    computed one application at a time and each one is compared exactly.
    """
    if abs(n) < 2:
        raise RejectedInput(f"forward collapse needs |n| >= 2, got {n}")
    if horizon < level:
        raise RejectedInput(f"horizon {horizon} is below level {level}")
    if (abs(n) ** level) % z.den:
        raise RejectedInput(f"{z} is not in the level-{level} root family of base {abs(n)}")
    w = z
    for r in range(horizon + 1):
        if r >= level and w.num != 0:
            return False
        w = angle_pow(w, n)
    return True


def psi_circle(n: int, r: int) -> Callable[[RationalAngle], RationalAngle]:
    """Right inverse of ``z -> z**(n**r)``: divide the turn by ``n**r``."""
    if n == 0:
        raise RejectedInput("z -> z**0 has no right inverse")
    if r < 0:
        raise RejectedInput(f"r must be >= 0, got {r}")
    d = n**r

    def psi(t: RationalAngle) -> RationalAngle:
        return _reduce(t.num if d > 0 else -t.num, t.den * abs(d))

    return psi


def path_products(f: PermPower, n: int) -> list[int]:
    """Entry i is the exponent ``m_i * m_{s^-1(i)} * ... * m_{s^-(n-1)(i)}`` of f**n."""
    inv = f.sigma_inv.image
    out = []
    for i in range(f.dim):
        p, j = 1, i
        for _ in range(n):
            p *= f.m[j]
            j = inv[j]
        out.append(p)
    return out


def psi_perm_power(f: PermPower, n: int) -> Callable[[TorusPoint], TorusPoint]:
    """Canonical point w with ``f**n (w) = z``.

    Coordinate i of ``f**n (w)`` is ``P_i * w_{s^-n(i)}``, so w at index
    ``s^-n(i)`` is ``z_i / P_i`` with P_i the path product.
    """
    if any(mi == 0 for mi in f.m):
        raise RejectedInput("a zero exponent leaves f**n without a right inverse")
    if n < 0:
        raise RejectedInput(f"n must be >= 0, got {n}")
    prods = path_products(f, n)
    src = f.sigma.inverse().power(n).image
    k = f.dim

    def psi(z: TorusPoint) -> TorusPoint:
        if len(z) != k:
            raise RejectedInput(f"dimension mismatch: map has dimension {k}, point has {len(z)}")
        w = [IDENTITY] * k
        for i in range(k):
            a, p = z.coords[i], prods[i]
            w[src[i]] = _reduce(a.num if p > 0 else -a.num, a.den * abs(p))
        return TorusPoint(tuple(w))

    return psi


# -- verdicts -------------------------------------------------------------


@dataclass(frozen=True)
class MixingVerdict:
    tag: ClassVar[str] = "unknown"

    @property
    def is_mixing(self) -> bool:
        return self.tag.startswith("mixing")

    def to_json(self) -> dict:
        return {"verdict": self.tag}


@dataclass(frozen=True)
class MixingByProp1(MixingVerdict):
    """Circle power z -> z**n with |n| >= 2."""

    n: int
    tag: ClassVar[str] = "mixing_by_prop1"

    def to_json(self):
        return {"verdict": self.tag, "n": str(self.n)}


@dataclass(frozen=True)
class MixingByProp2(MixingVerdict):
    orbit_gcds: tuple[int, ...]
    tag: ClassVar[str] = "mixing_by_prop2"

    def __post_init__(self):
        if any(s <= 1 for s in self.orbit_gcds):
            raise RejectedInput("orbit gcds must all exceed 1")

    def to_json(self):
        return {"verdict": self.tag, "orbit_gcds": [str(s) for s in self.orbit_gcds]}


@dataclass(frozen=True)
class MixingByProduct(MixingVerdict):
    tag: ClassVar[str] = "mixing_by_product"


@dataclass(frozen=True)
class NonMixingDiagonal(MixingVerdict):
    tag: ClassVar[str] = "non_mixing_diagonal"


@dataclass(frozen=True)
class NonMixingIdentity(MixingVerdict):
    tag: ClassVar[str] = "non_mixing_identity"


@dataclass(frozen=True)
class Unknown(MixingVerdict):
    reason: str = ""
    tag: ClassVar[str] = "unknown"

    def to_json(self):
        return {"verdict": self.tag, "reason": self.reason}


def orbit_gcds(sigma: Permutation, m) -> list[int]:
    """``s_i = gcd{m_j : j in orbit of i}``, indexed by coordinate."""
    out = [0] * len(sigma)
    for cycle in orbit_cycles(sigma):
        g = 0
        for j in cycle:
            g = gcd(g, m[j])
        for j in cycle:
            out[j] = g
    return out


def classify_perm_power(sigma: Permutation, m) -> MixingVerdict:
    m = tuple(m)
    if len(m) != len(sigma):
        return Unknown(reason=f"exponent list length {len(m)} does not match permutation size {len(sigma)}")
    if any(mi < 2 for mi in m):
        return Unknown(reason="some exponent is below 2; the orbit-gcd test does not apply")
    if sigma.is_identity:
        return MixingByProduct()
    s = orbit_gcds(sigma, m)
    if all(x > 1 for x in s):
        return MixingByProp2(tuple(s))
    bad = sorted({tuple(c) for c in orbit_cycles(sigma) if s[c[0]] == 1})
    return Unknown(reason=f"orbit gcd is 1 on cycles {[list(c) for c in bad]}; the sufficient condition fails")


def detect_diagonal_degenerate(A: Matrix) -> MixingVerdict:
    """NonMixingDiagonal iff every row of A is the same (range inside the diagonal)."""
    A = as_matrix(A)
    if len(A) < 2:
        raise RejectedInput("the diagonal obstruction needs dimension >= 2")
    if all(row == A[0] for row in A):
        return NonMixingDiagonal()
    return Unknown(reason="rows differ; no diagonal obstruction")


def classify_map(f: EndoMap) -> MixingVerdict:
    """Dispatch to the appropriate classifier for any map representation."""
    if isinstance(f, CirclePower) or (isinstance(f, ExponentMatrix) and f.dim == 1):
        n = f.n if isinstance(f, CirclePower) else f.A[0][0]
        if n == 1:
            return NonMixingIdentity()
        if n == 0:
            return Unknown(reason="z -> z**0 is the constant map onto the identity")
        if n == -1:
            return Unknown(reason="z -> z**-1 is an involution; no mixing result applies")
        return MixingByProp1(n)
    if isinstance(f, PermPower):
        return classify_perm_power(f.sigma, f.m)
    return detect_diagonal_degenerate(as_matrix(f))


def check_orbit_divisibility(f: PermPower, n: int) -> bool:
    """Every nonzero entry of row i of ``A**n`` is divisible by ``s_{s^-n(i)}**n``."""
    s = orbit_gcds(f.sigma, f.m)
    src = f.sigma.inverse().power(n).image
    An = matrix_power(f.matrix(), n)
    for i, row in enumerate(An):
        d = s[src[i]] ** n
        for x in row:
            if x and x % d:
                return False
    return True


# -- witness sets ---------------------------------------------------------


def prop1_witnesses(n: int, level: int, base: int | None = None):
    """(F, H, psi) for ``z -> z**n``: roots of unity of order ``base**level``.

    ``base`` defaults to ``|n|``; any other base gives valid samples but
    generally no forward collapse.
    """
    base = abs(n) if base is None else base
    pts = [TorusPoint((a,)) for a in RootFamily(base, level).points()]

    def psi(r):
        inner = psi_circle(n, r)
        return lambda z: TorusPoint((inner(z.coords[0]),))

    return pts, pts, psi


def prop2_witnesses(f: PermPower, level: int, count: int, seed: int = 0):
    """(F, H, psi) for a permutation-power map satisfying the orbit-gcd test.

    Samples are points of the product of root families of order
    ``s_i**level``, drawn deterministically from ``seed``; the identity is
    always included.
    """
    s = orbit_gcds(f.sigma, f.m)
    if any(x < 2 for x in s):
        raise RejectedInput("prop2 witnesses need every orbit gcd >= 2")
    rng = random.Random(seed)
    pts = [TorusPoint.identity(f.dim)]
    for _ in range(max(0, count - 1)):
        pts.append(TorusPoint(tuple(make_angle(rng.randrange(si**level), si**level) for si in s)))

    def psi(n):
        return psi_perm_power(f, n)

    return pts, pts, psi


def random_orbit_gcd_map(rng: random.Random, k: int, max_factor: int = 6) -> PermPower:
    """Random permutation-power map whose orbit gcds are all >= 2."""
    image = list(range(k))
    rng.shuffle(image)
    sigma = Permutation(tuple(image))
    m = [0] * k
    for cycle in orbit_cycles(sigma):
        s = rng.randint(2, 5)
        for j in cycle:
            m[j] = s * rng.randint(1, max_factor)
    return PermPower(sigma, tuple(m))
