"""Quantum-state data model: density matrices, pure states, projective
observables, purification and partial trace, and seeded Haar samplers.

Conventions fixed here and relied on everywhere else:

* A bipartite amplitude for |n> (x) |k> with system dimension N and
  auxiliary dimension K sits at flat index n*K + k (system-major).
* Purification is the spectral one: for rho = sum_k lambda_k |v_k><v_k|
  (eigenvalues taken in descending order, rank cut at TOL.rank_cutoff)
  the purification is sum_k sqrt(lambda_k) |v_k> (x) |e_k>.
* Randomness comes from numpy's PCG64. ``derived_seed(seed, *stream)``
  is the documented splitting rule: the master seed and the stream
  indices feed one SeedSequence as its entropy tuple and are collapsed
  to a 128-bit integer. Two distinct index tuples give independent
  streams, so parallel and sequential sweeps see identical samples.

JSON payloads encode complex entries as [re, im] pairs, row-major.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .config import TOL
from .errors import DimensionMismatch, IndexOutOfRange, ValidationError

__all__ = [
    "DensityMatrix",
    "PureState",
    "ProjectiveObservable",
    "projector",
    "purify",
    "partial_trace_aux",
    "derived_seed",
    "sample_haar_unitary",
    "sample_pure",
    "sample_mixed",
    "sample_observable",
    "computational_observable",
    "fourier_observable",
    "matrix_to_pairs",
    "pairs_to_matrix",
    "state_from_payload",
    "observable_from_payload",
]


# ---------------------------------------------------------------------------
# containers


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = linalg.as_complex_matrix(self.matrix)
        if float(np.abs(m - m.conj().T).max()) > TOL.hermitian:
            raise ValidationError("density matrix must be Hermitian")
        w = np.linalg.eigvalsh((m + m.conj().T) / 2)
        if float(w[0]) < -TOL.psd_clamp:
            raise ValidationError(
                f"density matrix has negative eigenvalue {float(w[0]):.3e}"
            )
        if abs(float(np.trace(m).real) - 1.0) > TOL.trace_one or abs(
            float(np.trace(m).imag)
        ) > TOL.trace_one:
            raise ValidationError("density matrix must have unit trace")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def to_payload(self) -> dict:
        return {
            "type": "density-matrix",
            "dim": self.dim,
            "matrix": matrix_to_pairs(self.matrix),
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "DensityMatrix":
        _expect_type(payload, "density-matrix")
        return cls(pairs_to_matrix(payload["matrix"], payload.get("dim")))


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit-norm complex amplitude vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=np.complex128)
        if a.ndim != 1 or a.size == 0:
            raise ValidationError("pure state must be a nonempty vector")
        if not np.isfinite(a).all():
            raise ValidationError("pure-state amplitudes must be finite")
        if abs(float(np.linalg.norm(a)) - 1.0) > TOL.unit_norm:
            raise ValidationError("pure state must have unit norm")
        object.__setattr__(self, "amplitudes", a)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density(self) -> DensityMatrix:
        """The rank-one density matrix |psi><psi|."""
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))

    def to_payload(self) -> dict:
        return {
            "type": "pure-state",
            "dim": self.dim,
            "amplitudes": [[float(z.real), float(z.imag)] for z in self.amplitudes],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "PureState":
        _expect_type(payload, "pure-state")
        amps = payload["amplitudes"]
        try:
            a = np.array([complex(re, im) for re, im in amps], dtype=np.complex128)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"malformed amplitude list: {exc}") from exc
        dim = payload.get("dim")
        if dim is not None and int(dim) != a.size:
            raise ValidationError("declared dim does not match amplitude count")
        return cls(a)


@dataclass(frozen=True, eq=False)
class ProjectiveObservable:
    """Non-degenerate observable, stored as its orthonormal eigenbasis.

    The columns of ``eigenbasis`` are the eigenvectors |a_1>..|a_N>.
    Eigenvalue labels never enter any formula in scope and are not stored.
    """

    eigenbasis: np.ndarray

    def __post_init__(self):
        e = linalg.as_complex_matrix(self.eigenbasis)
        gram = e.conj().T @ e
        if float(np.abs(gram - np.eye(e.shape[0])).max()) > TOL.orthonormal:
            raise ValidationError("observable eigenbasis columns must be orthonormal")
        object.__setattr__(self, "eigenbasis", e)

    @property
    def dim(self) -> int:
        return self.eigenbasis.shape[0]

    def basis_state(self, i: int) -> PureState:
        if not 0 <= i < self.dim:
            raise IndexOutOfRange(f"index {i} outside [0, {self.dim})")
        return PureState(self.eigenbasis[:, i].copy())

    def to_payload(self) -> dict:
        return {
            "type": "observable",
            "dim": self.dim,
            "eigenbasis": matrix_to_pairs(self.eigenbasis),
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "ProjectiveObservable":
        _expect_type(payload, "observable")
        return cls(pairs_to_matrix(payload["eigenbasis"], payload.get("dim")))


def projector(obs: ProjectiveObservable, i: int) -> DensityMatrix:
    """Rank-one projector |a_i><a_i| onto the i-th outcome of ``obs``."""
    if not 0 <= i < obs.dim:
        raise IndexOutOfRange(f"index {i} outside [0, {obs.dim})")
    v = obs.eigenbasis[:, i]
    return DensityMatrix(np.outer(v, v.conj()))


# ---------------------------------------------------------------------------
# purification and partial trace


def purify(rho: DensityMatrix) -> PureState:
    """Spectral purification of ``rho``.

    Returns |Psi> = sum_k sqrt(lambda_k) |v_k> (x) |e_k> on dimension N*r,
    where r is the rank of rho at threshold ``TOL.rank_cutoff`` and the
    eigenvalues are taken in descending order. The result is renormalized
    so that dropping sub-threshold eigenvalues cannot break the unit-norm
    invariant; the round trip through partial_trace_aux reproduces rho
    within 1e-10.
    """
    w, v = linalg.hermitian_eig(rho.matrix)
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    kept = w > TOL.rank_cutoff
    if not kept.any():
        raise ValidationError("density matrix has numerical rank zero")
    w = w[kept]
    v = v[:, kept]
    # Psi_{n,k} = sqrt(lambda_k) * v[n, k]; row-major flattening realizes n*r + k.
    psi = (v * np.sqrt(w)).reshape(-1)
    psi = psi / np.linalg.norm(psi)
    return PureState(psi)


def partial_trace_aux(psi: PureState, sys_dim: int, aux_dim: int) -> DensityMatrix:
    """Trace out the auxiliary factor of a bipartite pure state.

    ``psi`` lives on dimension sys_dim*aux_dim with the flat index
    convention n*aux_dim + k; the result is rho_{mn} = sum_k Psi_{mk} Psi*_{nk}.
    """
    if sys_dim < 1 or aux_dim < 1:
        raise DimensionMismatch("dimensions must be positive")
    if psi.dim != sys_dim * aux_dim:
        raise DimensionMismatch(
            f"state dimension {psi.dim} is not {sys_dim}*{aux_dim}"
        )
    m = psi.amplitudes.reshape(sys_dim, aux_dim)
    rho = m @ m.conj().T
    return DensityMatrix((rho + rho.conj().T) / 2)


# ---------------------------------------------------------------------------
# seeded samplers


def derived_seed(seed: int, *stream: int) -> int:
    """Collapse a master seed plus stream indices into one integer seed.

    The tuple (seed, *stream) is the entropy of a SeedSequence, whose
    first 128 bits of output become the derived seed. Distinct tuples give
    statistically independent streams, and the rule is pure arithmetic,
    so any partitioning of trials across workers reproduces the
    sequential samples exactly.
    """
    if seed < 0 or any(s < 0 for s in stream):
        raise ValidationError("seeds and stream indices must be non-negative")
    words = np.random.SeedSequence((int(seed), *map(int, stream))).generate_state(4)
    return int.from_bytes(words.tobytes(), "little")


def _generator(seed: int) -> np.random.Generator:
    if seed < 0:
        raise ValidationError("seed must be non-negative")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def sample_haar_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-distributed unitary via a Ginibre matrix and QR.

    The QR phase ambiguity is fixed by making the triangular factor's
    diagonal real positive, which is what makes the distribution Haar
    rather than merely unitary.
    """
    if dim < 1:
        raise DimensionMismatch("dimension must be at least 1")
    rng = _generator(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
    z /= np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    ph = np.where(np.abs(d) > 0, d, 1.0)
    ph = ph / np.abs(ph)
    return q * ph


def sample_pure(dim: int, seed: int) -> PureState:
    """Haar-random pure state: the first column of a Haar unitary."""
    return PureState(sample_haar_unitary(dim, seed)[:, 0].copy())


def sample_mixed(dim: int, aux_dim: int, seed: int) -> DensityMatrix:
    """Random mixed state: partial trace of a Haar pure state on dim*aux_dim.

    aux_dim=1 yields pure states; aux_dim >= dim yields generic full-rank
    states.
    """
    psi = sample_pure(dim * aux_dim, seed)
    return partial_trace_aux(psi, dim, aux_dim)


def sample_observable(dim: int, seed: int) -> ProjectiveObservable:
    """Random projective observable: eigenbasis = Haar unitary columns."""
    return ProjectiveObservable(sample_haar_unitary(dim, seed))


def computational_observable(dim: int) -> ProjectiveObservable:
    """The computational basis as an observable."""
    return ProjectiveObservable(np.eye(dim, dtype=np.complex128))


def fourier_observable(dim: int) -> ProjectiveObservable:
    """The discrete-Fourier basis, complementary to the computational one."""
    j = np.arange(dim)
    e = np.exp(2j * np.pi * np.outer(j, j) / dim) / np.sqrt(dim)
    return ProjectiveObservable(e)


# ---------------------------------------------------------------------------
# JSON payload helpers


def matrix_to_pairs(m: np.ndarray) -> list:
    """Row-major nested lists with complex entries as [re, im] pairs."""
    return [
        [[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)
    ]


def pairs_to_matrix(rows, dim=None) -> np.ndarray:
    try:
        m = np.array(
            [[complex(re, im) for re, im in row] for row in rows],
            dtype=np.complex128,
        )
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"malformed matrix payload: {exc}") from exc
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"matrix payload must be square, got shape {m.shape}")
    if dim is not None and int(dim) != m.shape[0]:
        raise ValidationError("declared dim does not match matrix size")
    return m


def _expect_type(payload, expected: str):
    if not isinstance(payload, dict):
        raise ValidationError("payload must be a JSON object")
    got = payload.get("type")
    if got != expected:
        raise ValidationError(f"expected payload type {expected!r}, got {got!r}")


def state_from_payload(payload: dict) -> DensityMatrix:
    """Load a density matrix; pure-state payloads are promoted to projectors."""
    if not isinstance(payload, dict):
        raise ValidationError("payload must be a JSON object")
    kind = payload.get("type")
    if kind == "density-matrix":
        return DensityMatrix.from_payload(payload)
    if kind == "pure-state":
        return PureState.from_payload(payload).density()
    raise ValidationError(f"cannot read a state from payload type {kind!r}")


def observable_from_payload(payload: dict) -> ProjectiveObservable:
    return ProjectiveObservable.from_payload(payload)
