"""Fidelity-based metrics d(rho, sigma) = f(F(rho, sigma)).

Any decreasing f: [0,1] -> [0, inf) with f(1) = 0 generates a distance of
this family. Three are built in:

    angle            f(x) = arccos(sqrt(x))
    bures            f(x) = sqrt(2 - 2 sqrt(x))
    root-infidelity  f(x) = sqrt(1 - x)

``f_of`` and the uncertainty checkers also accept an arbitrary callable in
place of a MetricKind, as an extension point for experimenting with other
members of the family; the caller is responsible for that callable being
decreasing with f(1) = 0. Closed-form feasibility boundaries exist only
for the three named kinds.
"""

from __future__ import annotations

import enum
import math
from typing import Callable, Union

import numpy as np

from .config import TOL
from .errors import DimensionMismatch, DomainError, ValidationError
from .fidelity import fidelity
from .states import DensityMatrix, PureState

__all__ = [
    "MetricKind",
    "MetricLike",
    "metric_kind",
    "f_of",
    "metric_distance",
    "wootters_distance",
]


class MetricKind(enum.Enum):
    ANGLE = "angle"
    BURES = "bures"
    ROOT_INFIDELITY = "root-infidelity"


MetricLike = Union[MetricKind, Callable[[float], float]]


def metric_kind(name: str) -> MetricKind:
    """Parse a CLI kind string; raises ValidationError on unknown names."""
    try:
        return MetricKind(name)
    except ValueError:
        valid = ", ".join(k.value for k in MetricKind)
        raise ValidationError(f"unknown metric {name!r} (valid: {valid})") from None


def _clamp_argument(x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x < -TOL.metric_domain_guard or x > 1.0 + TOL.metric_domain_guard:
        raise DomainError(f"argument {x!r} outside [0, 1] beyond the guard band")
    return min(max(x, 0.0), 1.0)


def f_of(kind: MetricLike, x: float) -> float:
    """Evaluate the generating function of ``kind`` at x in [0, 1]."""
    x = _clamp_argument(x)
    if kind is MetricKind.ANGLE:
        return float(np.arccos(min(math.sqrt(x), 1.0)))
    if kind is MetricKind.BURES:
        return math.sqrt(max(2.0 - 2.0 * math.sqrt(x), 0.0))
    if kind is MetricKind.ROOT_INFIDELITY:
        return math.sqrt(max(1.0 - x, 0.0))
    if callable(kind):
        return float(kind(x))
    raise ValidationError(f"not a metric kind or callable: {kind!r}")


def metric_distance(kind: MetricLike, rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """d(rho, sigma) = f(F(rho, sigma))."""
    return f_of(kind, fidelity(rho, sigma))


def wootters_distance(psi: PureState, phi: PureState) -> float:
    """arccos |<psi|phi>|, the pure-state specialization of the angle metric."""
    if psi.dim != phi.dim:
        raise DimensionMismatch(f"dimension mismatch: {psi.dim} vs {phi.dim}")
    overlap = abs(np.vdot(psi.amplitudes, phi.amplitudes))
    return float(np.arccos(min(overlap, 1.0)))
