"""
Continuous endomorphisms of T^k.

Every such map is monomial, ``z -> (prod_j z_j**A[i][j])_i`` for an integer
matrix ``A``, so each representation here reduces to an exponent matrix.
In turn coordinates the map is the linear map ``v -> A v mod 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .circle import TorusPoint, _reduce, angle_pow, lcm_of
from .errors import RejectedInput

Matrix = tuple[tuple[int, ...], ...]

# Above this many steps iterate() switches to a modular matrix power.
STEP_LIMIT = 64


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{0, ..., k-1}`` stored as its forward image table."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(i) for i in self.image)
        if sorted(image) != list(range(len(image))):
            raise RejectedInput(f"{list(image)} is not a permutation of 0..{len(image) - 1}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(k)))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], k: int, one_based: bool = False) -> "Permutation":
        """Build from cycle notation; ``(a, b, c)`` sends a->b->c->a."""
        shift = 1 if one_based else 0
        image = list(range(k))
        seen = set()
        for cycle in cycles:
            idx = [int(c) - shift for c in cycle]
            for i in idx:
                if not 0 <= i < k:
                    raise RejectedInput(f"cycle entry {i + shift} out of range for k={k}")
                if i in seen:
                    raise RejectedInput(f"index {i + shift} appears in more than one cycle position")
                seen.add(i)
            for a, b in zip(idx, idx[1:] + idx[:1]):
                image[a] = b
        return cls(tuple(image))

    def __len__(self):
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(tuple(inv))

    def power(self, n: int) -> "Permutation":
        """sigma**n for any integer n."""
        base = self if n >= 0 else self.inverse()
        image = list(range(len(self.image)))
        for _ in range(abs(n) % max(1, _order(base))):
            image = [base.image[i] for i in image]
        return Permutation(tuple(image))

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))


def orbit_cycles(sigma: Permutation) -> list[list[int]]:
    """Cycles of sigma, sorted by least element, each starting at its least element."""
    seen = [False] * len(sigma)
    cycles = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i)
            i = sigma.image[i]
        cycles.append(cycle)
    return cycles


def _order(sigma: Permutation) -> int:
    return lcm_of(len(c) for c in orbit_cycles(sigma))


class EndoMap:
    """Base of the three map representations."""

    dim: int

    def matrix(self) -> Matrix:
        raise NotImplementedError


@dataclass(frozen=True)
class CirclePower(EndoMap):
    """``z -> z**n`` on T."""

    n: int

    @property
    def dim(self) -> int:
        return 1

    def matrix(self) -> Matrix:
        return ((self.n,),)


@dataclass(frozen=True)
class PermPower(EndoMap):
    """``z -> (z_{sigma^-1(i)} ** m_i)_i``."""

    sigma: Permutation
    m: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.m)
        if len(m) != len(self.sigma):
            raise RejectedInput(f"exponent list has length {len(m)}, permutation has {len(self.sigma)}")
        if not m:
            raise RejectedInput("empty permutation-power map")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "_sigma_inv", self.sigma.inverse())

    @property
    def dim(self) -> int:
        return len(self.m)

    @property
    def sigma_inv(self) -> Permutation:
        return self._sigma_inv

    def matrix(self) -> Matrix:
        k = self.dim
        rows = []
        for i in range(k):
            row = [0] * k
            row[self._sigma_inv.image[i]] = self.m[i]
            rows.append(tuple(row))
        return tuple(rows)


@dataclass(frozen=True)
class ExponentMatrix(EndoMap):
    A: Matrix

    def __post_init__(self):
        A = as_square(self.A)
        object.__setattr__(self, "A", A)

    @property
    def dim(self) -> int:
        return len(self.A)

    def matrix(self) -> Matrix:
        return self.A


def as_square(A) -> Matrix:
    rows = tuple(tuple(int(x) for x in row) for row in A)
    if not rows or any(len(r) != len(rows) for r in rows):
        raise RejectedInput("exponent matrix must be square and nonempty")
    return rows


def as_matrix(f: Union[EndoMap, Matrix]) -> Matrix:
    if isinstance(f, EndoMap):
        return f.matrix()
    return as_square(f)


def identity_matrix(k: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def mat_mul(A: Matrix, B: Matrix, modulus: int | None = None) -> Matrix:
    cols = list(zip(*B))
    if modulus is None:
        return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) % modulus for col in cols) for row in A)


def matrix_power(A: Matrix, r: int, modulus: int | None = None) -> Matrix:
    """``A**r`` by square-and-multiply, optionally reduced mod ``modulus``."""
    if r < 0:
        raise RejectedInput(f"matrix power needs r >= 0, got {r}")
    A = as_square(A)
    result = identity_matrix(len(A))
    if modulus is not None:
        A = tuple(tuple(x % modulus for x in row) for row in A)
        result = tuple(tuple(x % modulus for x in row) for row in result)
    base = A
    while r:
        if r & 1:
            result = mat_mul(result, base, modulus)
        r >>= 1
        if r:
            base = mat_mul(base, base, modulus)
    return result


def compose(f: EndoMap, g: EndoMap) -> ExponentMatrix:
    """The map ``f o g``."""
    return ExponentMatrix(mat_mul(as_matrix(f), as_matrix(g)))


def _check_dim(k: int, z: TorusPoint):
    if len(z) != k:
        raise RejectedInput(f"dimension mismatch: map has dimension {k}, point has {len(z)}")


def apply_matrix(A: Matrix, z: TorusPoint) -> TorusPoint:
    """Coordinate i is ``sum_j A[i][j] * z_j mod 1``."""
    _check_dim(len(A), z)
    coords = z.coords
    L = lcm_of(a.den for a in coords)
    scaled = [a.num * (L // a.den) for a in coords]
    out = []
    for row in A:
        s = 0
        for a, v in zip(row, scaled):
            if a and v:
                s += a * v
        out.append(_reduce(s, L))
    return TorusPoint(tuple(out))


def apply(f: EndoMap, z: TorusPoint) -> TorusPoint:
    _check_dim(f.dim, z)
    if isinstance(f, CirclePower):
        return TorusPoint((angle_pow(z.coords[0], f.n),))
    if isinstance(f, PermPower):
        src = f.sigma_inv.image
        return TorusPoint(tuple(angle_pow(z.coords[src[i]], mi) for i, mi in enumerate(f.m)))
    return apply_matrix(f.matrix(), z)


def iterate(f: EndoMap, z: TorusPoint, r: int, method: str = "auto") -> TorusPoint:
    """``f**r (z)``.

    ``"step"`` applies f r times; ``"matrix"`` applies ``A**r`` reduced mod the
    common denominator of z (exact, since only ``A mod L`` acts on points with
    denominators dividing L). ``"auto"`` steps for small r.
    """
    if r < 0:
        raise RejectedInput(f"iteration count must be >= 0, got {r}")
    _check_dim(f.dim, z)
    if method == "auto":
        method = "step" if r <= STEP_LIMIT else "matrix"
    if method == "step":
        for _ in range(r):
            z = apply(f, z)
        return z
    if method == "matrix":
        L = lcm_of(a.den for a in z.coords)
        return apply_matrix(matrix_power(f.matrix(), r, modulus=L), z)
    raise RejectedInput(f"unknown iteration method {method!r}")


def iterate_exact_matrix(f: EndoMap, z: TorusPoint, r: int) -> TorusPoint:
    """``apply(A**r, z)`` with the full, unreduced big-integer power."""
    return apply_matrix(matrix_power(as_matrix(f), r), z)

