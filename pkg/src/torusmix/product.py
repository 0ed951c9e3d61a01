"""
Shift extension of an endomorphism to the countable product G^N.

For a base endomorphism phi of an abelian group G,

    Phi(g) = (phi(g_0) g_1, g_2, g_3, ...)
    Psi(g) = (e, g_0, g_1, ...)

Phi is an endomorphism with right inverse Psi. Only finitely supported
sequences are represented; they are dense for the weighted metric
``rho(g, h) = sum_i d(g_i, h_i) / 2**i``.
"""

from __future__ import annotations

import itertools
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .circle import TorusPoint, torus_dist, torus_inv, torus_mul
from .endo import EndoMap, apply
from .errors import RejectedInput


class BaseGroup(ABC):
    """Abelian group with a metric bounded by 1 and an endomorphism phi."""

    abelian_group: bool = True

    @property
    @abstractmethod
    def identity(self) -> Any: ...

    @abstractmethod
    def mul(self, a, b): ...

    @abstractmethod
    def inv(self, a): ...

    @abstractmethod
    def dist(self, a, b) -> Fraction: ...

    @abstractmethod
    def phi(self, a): ...

    def is_identity(self, a) -> bool:
        return a == self.identity

    def check(self, a) -> None:
        pass


class TorusGroup(BaseGroup):
    """T^d with the max-coordinate metric (bounded by 1/2) and an EndoMap."""

    def __init__(self, f: EndoMap):
        self.f = f
        self.dim = f.dim
        self._identity = TorusPoint.identity(f.dim)

    @property
    def identity(self) -> TorusPoint:
        return self._identity

    def mul(self, a, b):
        return torus_mul(a, b)

    def inv(self, a):
        return torus_inv(a)

    def dist(self, a, b):
        return torus_dist(a, b)

    def phi(self, a):
        return apply(self.f, a)

    def is_identity(self, a):
        return a.is_identity

    def check(self, a):
        if not isinstance(a, TorusPoint) or len(a) != self.dim:
            raise RejectedInput(f"entry {a} is not a point of T^{self.dim}")


@dataclass(frozen=True)
class FiniteSupportSeq:
    """``(g_0, ..., g_k, e, e, ...)`` with trailing identities stripped."""

    entries: tuple

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


class ShiftExtension:
    """Phi and Psi on finitely supported sequences over ``base``."""

    def __init__(self, base: BaseGroup):
        if not getattr(base, "abelian_group", False):
            raise RejectedInput(
                "the shift extension needs an abelian group base: inverses build the "
                "annihilated set and commutativity makes Phi a homomorphism"
            )
        self.base = base
        self.identity = FiniteSupportSeq(())

    # -- construction ------------------------------------------------------

    def seq(self, entries: Iterable) -> FiniteSupportSeq:
        entries = list(entries)
        for a in entries:
            self.base.check(a)
        while entries and self.base.is_identity(entries[-1]):
            entries.pop()
        return FiniteSupportSeq(tuple(entries))

    def coord(self, g: FiniteSupportSeq, i: int):
        return g.entries[i] if i < len(g.entries) else self.base.identity

    # -- group structure ---------------------------------------------------

    def mul(self, g: FiniteSupportSeq, h: FiniteSupportSeq) -> FiniteSupportSeq:
        n = max(len(g), len(h))
        return self.seq(self.base.mul(self.coord(g, i), self.coord(h, i)) for i in range(n))

    def inv(self, g: FiniteSupportSeq) -> FiniteSupportSeq:
        return self.seq(self.base.inv(a) for a in g.entries)

    def metric(self, g: FiniteSupportSeq, h: FiniteSupportSeq) -> Fraction:
        """Exact ``sum_i d(g_i, h_i) / 2**i`` over the union of supports."""
        n = max(len(g), len(h))
        return sum((self.base.dist(self.coord(g, i), self.coord(h, i)) / 2**i for i in range(n)), Fraction(0))

    dist = metric

    # -- the two maps ------------------------------------------------------

    def big_phi(self, g: FiniteSupportSeq) -> FiniteSupportSeq:
        if not g.entries:
            return g
        head = self.base.mul(self.base.phi(g.entries[0]), self.coord(g, 1))
        return self.seq((head,) + g.entries[2:])

    def big_psi(self, g: FiniteSupportSeq) -> FiniteSupportSeq:
        if not g.entries:
            return g
        return FiniteSupportSeq((self.base.identity,) + g.entries)

    def iterate(self, g: FiniteSupportSeq, n: int) -> FiniteSupportSeq:
        for _ in range(n):
            g = self.big_phi(g)
        return g

    def psi_power(self, g: FiniteSupportSeq, n: int) -> FiniteSupportSeq:
        if not g.entries:
            return g
        return FiniteSupportSeq((self.base.identity,) * n + g.entries)

    def psi_family(self, n: int):
        return lambda g: self.psi_power(g, n)

    # -- constructions from the mixing argument ----------------------------

    def _phi_power(self, a, n: int):
        for _ in range(n):
            a = self.base.phi(a)
        return a

    def phi_iterate_closed_form(self, h: FiniteSupportSeq, k: int) -> FiniteSupportSeq:
        """``Phi**k (h) = (phi**k(h_0) phi**(k-1)(h_1) ... h_k)`` for support <= k+1."""
        if k < 0:
            raise RejectedInput(f"k must be >= 0, got {k}")
        if len(h) > k + 1:
            raise RejectedInput(f"support length {len(h)} exceeds k+1 = {k + 1}; closed form does not apply")
        if k == 0:
            return h
        acc = self.base.identity
        for i, a in enumerate(h.entries):
            acc = self.base.mul(acc, self._phi_power(a, k - i))
        return self.seq([acc])

    def shrink_bound_check(self, h: FiniteSupportSeq, k: int) -> tuple[Fraction, bool]:
        """``rho(Psi**k Phi**k h, e)`` and whether it is at most ``2**-k``."""
        collapsed = self.phi_iterate_closed_form(h, k)
        value = self.metric(self.psi_power(collapsed, k), self.identity)
        return value, value <= Fraction(1, 2**k)

    def c_tilde_element(self, g: FiniteSupportSeq, n: int) -> FiniteSupportSeq:
        """``g * (Psi**n Phi**n g)**-1``, annihilated by ``Phi**n``."""
        if len(g) > n + 1:
            raise RejectedInput(f"support length {len(g)} exceeds n+1 = {n + 1}")
        return self.mul(g, self.inv(self.psi_power(self.iterate(g, n), n)))

    def dense_sample_d_tilde(self, H: Sequence, support_len: int, count: int | None,
                             seed: int | None = None) -> list[FiniteSupportSeq]:
        """Sequences with entries from H and support at most ``support_len``.

        Without a seed: the first ``count`` tuples of ``H**support_len`` in
        lexicographic order. With a seed: ``count`` tuples drawn from
        ``random.Random(seed)``.
        """
        if support_len < 1:
            raise RejectedInput(f"support_len must be >= 1, got {support_len}")
        H = list(H)
        if seed is None:
            tuples = itertools.product(H, repeat=support_len)
            if count is not None:
                tuples = itertools.islice(tuples, count)
            return [self.seq(t) for t in tuples]
        if count is None:
            raise RejectedInput("a seeded sample needs a count")
        rng = random.Random(seed)
        return [self.seq(rng.choice(H) for _ in range(support_len)) for _ in range(count)]


def torus_extension(f: EndoMap) -> ShiftExtension:
    return ShiftExtension(TorusGroup(f))


def assembled_witnesses(ext: ShiftExtension, H: Sequence, support_len: int, count: int, seed: int = 0):
    """(F, H, psi) for Phi: samples of the annihilated set, with psi_n = Psi**n.

    Each sample is ``c_tilde_element(g, n0)`` for a seeded g and
    ``n0 = len(g)`` (at least 1), so ``Phi**n`` kills it for every n >= n0.
    """
    rng = random.Random(seed)
    gs = ext.dense_sample_d_tilde(H, support_len, count, seed=rng.randrange(2**32))
    cs = [ext.c_tilde_element(g, max(1, len(g))) for g in gs]
    return cs, cs, ext.psi_family
