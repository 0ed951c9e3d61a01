"""
Finite-horizon checker for the semigroup mixing criterion.

Given dense samples F and H, and maps ``psi_n`` on F, the criterion asks for

    (i)   f**n (h)          -> e   for h in H
    (ii)  psi_n (x)         -> e   for x in F
    (iii) f**n (psi_n (x))  -> x   for x in F

A finite run can only say a trace is consistent with convergence. A trace
passes if it is exactly zero from some index on, or (when tolerance is allowed)
if it stays strictly below the tolerance over the final quarter of the
horizon. With ``exact=True`` conditions (i) and (iii) must be met exactly,
and (iii) must vanish at every index: the built-in witness constructions are
exact sections, so any nonzero residual is a bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Protocol, Sequence

from .circle import TorusPoint, torus_dist
from .endo import EndoMap, iterate
from .errors import RejectedInput

Trace = tuple[tuple[int, Fraction], ...]


class System(Protocol):
    """What the checker needs from a map on a metric group."""

    identity: Any

    def iterate(self, x, n: int): ...

    def dist(self, x, y) -> Fraction: ...


class TorusSystem:
    """An EndoMap on T^k viewed as a System."""

    def __init__(self, f: EndoMap):
        self.f = f
        self.identity = TorusPoint.identity(f.dim)

    def iterate(self, x: TorusPoint, n: int) -> TorusPoint:
        return iterate(self.f, x, n)

    def dist(self, x: TorusPoint, y: TorusPoint) -> Fraction:
        return torus_dist(x, y)

    def check_point(self, x):
        if not isinstance(x, TorusPoint) or len(x) != self.f.dim:
            raise RejectedInput(f"sample {x} does not have dimension {self.f.dim}")


@dataclass(frozen=True)
class ConditionResult:
    name: str
    mode: str  # "exact" or "tolerance"
    traces: tuple[Trace, ...]
    passed: bool
    settled_at: int | None  # first index from which every trace is exactly 0
    monotone: bool  # every trace is nonincreasing in n

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "mode": self.mode,
            "passed": self.passed,
            "settled_at": self.settled_at,
            "monotone": self.monotone,
            "traces": [[[n, f"{d.numerator}/{d.denominator}"] for n, d in t] for t in self.traces],
        }


@dataclass(frozen=True)
class CriterionReport:
    horizon: int
    tolerance: Fraction
    cond_i: ConditionResult
    cond_ii: ConditionResult
    cond_iii: ConditionResult

    @property
    def passed(self) -> bool:
        return self.cond_i.passed and self.cond_ii.passed and self.cond_iii.passed

    @property
    def conditions(self) -> tuple[ConditionResult, ...]:
        return (self.cond_i, self.cond_ii, self.cond_iii)

    def to_json(self) -> dict:
        return {
            "horizon": self.horizon,
            "tolerance": f"{self.tolerance.numerator}/{self.tolerance.denominator}",
            "passed": self.passed,
            "status": "consistent with convergence" if self.passed else "not consistent with convergence",
            "conditions": {c.name: c.to_json() for c in self.conditions},
        }


def _zero_from(trace: Trace) -> int | None:
    """First index from which the trace is exactly 0 through the end."""
    start = None
    for n, d in trace:
        if d == 0:
            if start is None:
                start = n
        else:
            start = None
    return start


def _tail_below(trace: Trace, horizon: int, tolerance: Fraction) -> bool:
    # last max(1, horizon // 4) indices
    cut = horizon - max(1, horizon // 4)
    return all(d < tolerance for n, d in trace if n > cut)


def _judge(name: str, traces: list[Trace], horizon: int, tolerance: Fraction, mode: str,
           every_index: bool = False) -> ConditionResult:
    settled = [_zero_from(t) for t in traces]
    if every_index:
        passed = all(all(d == 0 for _, d in t) for t in traces)
    elif mode == "exact":
        passed = all(s is not None for s in settled)
    else:
        passed = all(s is not None or _tail_below(t, horizon, tolerance) for t, s in zip(traces, settled))
    settled_at = max(settled) if traces and all(s is not None for s in settled) else None
    monotone = all(all(a[1] >= b[1] for a, b in zip(t, t[1:])) for t in traces)
    return ConditionResult(name, mode, tuple(traces), passed, settled_at, monotone)


def criterion_check(
    f,
    F: Sequence,
    H: Sequence,
    psi_family: Callable[[int], Callable],
    horizon: int,
    tolerance: Fraction = Fraction(1, 100),
    exact: bool = True,
) -> CriterionReport:
    """Evaluate conditions (i)-(iii) at every n in ``1..horizon`` on each sample.

    ``f`` is an EndoMap or any object implementing ``System``.
    """
    if horizon < 1:
        raise RejectedInput(f"horizon must be >= 1, got {horizon}")
    tolerance = Fraction(tolerance)
    if tolerance <= 0:
        raise RejectedInput("tolerance must be positive")
    system = TorusSystem(f) if isinstance(f, EndoMap) else f
    check = getattr(system, "check_point", None)
    if check is not None:
        for x in list(F) + list(H):
            check(x)
    e = system.identity

    tr_i = []
    for h in H:
        trace, x = [], h
        for n in range(1, horizon + 1):
            x = system.iterate(x, 1)
            trace.append((n, system.dist(x, e)))
        tr_i.append(tuple(trace))

    tr_ii, tr_iii = [], []
    psis = [psi_family(n) for n in range(1, horizon + 1)]
    for x in F:
        t2, t3 = [], []
        for n, psi in enumerate(psis, start=1):
            y = psi(x)
            t2.append((n, system.dist(y, e)))
            t3.append((n, system.dist(system.iterate(y, n), x)))
        tr_ii.append(tuple(t2))
        tr_iii.append(tuple(t3))

    mode = "exact" if exact else "tolerance"
    return CriterionReport(
        horizon=horizon,
        tolerance=tolerance,
        cond_i=_judge("i", tr_i, horizon, tolerance, mode),
        cond_ii=_judge("ii", tr_ii, horizon, tolerance, "tolerance"),
        cond_iii=_judge("iii", tr_iii, horizon, tolerance, mode, every_index=exact),
    )
