"""Maximum-probability uncertainty measures and the uncertainty relation
they satisfy.

For an observable A with eigenbasis {|a_i>} and a state rho, the outcome
probabilities are p_i = <a_i|rho|a_i> and P = max_i p_i in [1/N, 1]. The
uncertainty measure is U(A; rho) = f(P) for a decreasing f with f(1) = 0,
and for any two observables with eigenbasis overlap
c = max_ij |<a_i|b_j>| the relation

    U(A; rho) + U(B; rho) >= f(c^2)

holds for every state. With the angle kind this is the Landau-Pollak
inequality extended to mixed states: arccos sqrt(P_A) + arccos sqrt(P_B)
>= arccos c. ``check_ur`` evaluates one instance and reports the slack;
a negative slack beyond tolerance is a finding to surface, never an
exception, since for valid inputs it can only mean a numerical or
implementation bug.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .config import TOL
from .errors import DimensionMismatch, DomainError
from .metrics import MetricLike, f_of
from .states import DensityMatrix, ProjectiveObservable

__all__ = [
    "URReport",
    "outcome_probabilities",
    "max_probability",
    "overlap",
    "uncertainty_measure",
    "report_from_probabilities",
    "check_ur",
]


@dataclass(frozen=True)
class URReport:
    """One evaluated instance of the uncertainty relation.

    slack = u_a + u_b - bound; the relation asserts slack >= 0 up to
    round-off. For the bures kind, ``scaled(1/sqrt(2))`` restates the
    report in the equivalent pairwise-root normalization
    sqrt(1 - sqrt(P_A)) + sqrt(1 - sqrt(P_B)) >= sqrt(1 - c).
    """

    p_max_a: float
    p_max_b: float
    u_a: float
    u_b: float
    overlap_c: float
    bound: float
    slack: float

    def as_dict(self) -> dict:
        return {
            "p_max_a": self.p_max_a,
            "p_max_b": self.p_max_b,
            "u_a": self.u_a,
            "u_b": self.u_b,
            "overlap_c": self.overlap_c,
            "bound": self.bound,
            "slack": self.slack,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    def scaled(self, factor: float) -> "URReport":
        """Rescale the uncertainty values and bound by a positive factor.

        Rescaling by a positive constant preserves the inequality; the
        probabilities and the overlap are reported unchanged.
        """
        if not factor > 0:
            raise DomainError("scale factor must be positive")
        return URReport(
            p_max_a=self.p_max_a,
            p_max_b=self.p_max_b,
            u_a=self.u_a * factor,
            u_b=self.u_b * factor,
            overlap_c=self.overlap_c,
            bound=self.bound * factor,
            slack=self.slack * factor,
        )


def _check_dims(a, b):
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension mismatch: {a.dim} vs {b.dim}")


def outcome_probabilities(obs: ProjectiveObservable, rho: DensityMatrix) -> np.ndarray:
    """p_i = <a_i|rho|a_i> for every outcome, clamped to [0, 1]."""
    _check_dims(obs, rho)
    e = obs.eigenbasis
    p = np.einsum("mi,mn,ni->i", e.conj(), rho.matrix, e)
    if float(np.abs(p.imag).max()) > TOL.probability_imag:
        raise DomainError(
            f"outcome probability has imaginary part {float(np.abs(p.imag).max()):.3e}"
        )
    p = p.real
    if abs(float(p.sum()) - 1.0) > TOL.probability_sum:
        raise DomainError(f"probabilities sum to {float(p.sum())!r}, not 1")
    return np.clip(p, 0.0, 1.0)


def max_probability(obs: ProjectiveObservable, rho: DensityMatrix) -> tuple[float, int]:
    """Largest outcome probability and its index (smallest index on ties)."""
    p = outcome_probabilities(obs, rho)
    i = int(np.argmax(p))
    return float(p[i]), i


def overlap(a: ProjectiveObservable, b: ProjectiveObservable) -> float:
    """c = max_ij |<a_i|b_j>|, in [1/sqrt(N), 1]."""
    _check_dims(a, b)
    c = float(np.abs(a.eigenbasis.conj().T @ b.eigenbasis).max())
    return min(c, 1.0)


def uncertainty_measure(kind: MetricLike, obs: ProjectiveObservable, rho: DensityMatrix) -> float:
    """U(A; rho) = f(max_i p_i)."""
    value, _ = max_probability(obs, rho)
    return f_of(kind, value)


def report_from_probabilities(
    kind: MetricLike, p_max_a: float, p_max_b: float, c: float
) -> URReport:
    """Assemble a URReport from already-measured quantities."""
    u_a = f_of(kind, p_max_a)
    u_b = f_of(kind, p_max_b)
    bound = f_of(kind, c * c)
    return URReport(
        p_max_a=float(p_max_a),
        p_max_b=float(p_max_b),
        u_a=u_a,
        u_b=u_b,
        overlap_c=float(c),
        bound=bound,
        slack=u_a + u_b - bound,
    )


def check_ur(
    kind: MetricLike,
    a: ProjectiveObservable,
    b: ProjectiveObservable,
    rho: DensityMatrix,
) -> URReport:
    """Evaluate U(A;rho) + U(B;rho) >= f(c^2) for one (kind, A, B, rho)."""
    _check_dims(a, b)
    p_a, _ = max_probability(a, rho)
    p_b, _ = max_probability(b, rho)
    c = overlap(a, b)
    return report_from_probabilities(kind, p_a, p_b, c)
