"""Seeded Monte Carlo verification sweeps over the uncertainty relation.

One trial of dimension d draws two Haar observables and, depending on
``mixedness``, a Haar pure state and/or a generic full-rank mixed state
(auxiliary dimension = d), then evaluates one URReport per requested
metric kind and state variant. Every random object is sampled from a
seed derived as derived_seed(seed, d, t, stream), so the set of reports
depends only on the configuration, not on execution order; results from
any partitioning of the trials merge into the same SweepResult
(violations and totals are sums, the minimum-slack witness is selected
by a total order).
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from .config import TOL
from .errors import ValidationError
from .metrics import MetricKind, metric_kind
from .states import (
    derived_seed,
    sample_mixed,
    sample_observable,
    sample_pure,
)
from .uncertainty import overlap, max_probability, report_from_probabilities

__all__ = ["SweepConfig", "SweepResult", "run_sweep"]

_MIXEDNESS = ("pure", "mixed", "both")

# per-trial sampler streams
_STREAM_A = 0
_STREAM_B = 1
_STREAM_PURE = 2
_STREAM_MIXED = 3


@dataclass(frozen=True)
class SweepConfig:
    dims: tuple[int, ...]
    trials_per_dim: int
    seed: int
    kinds: tuple[MetricKind, ...]
    mixedness: str
    tolerance: float = TOL.ur_slack

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise ValidationError("dims must be a nonempty list of integers >= 2")
        kinds = tuple(self.kinds)
        if not kinds:
            raise ValidationError("at least one metric kind is required")
        if self.trials_per_dim < 1:
            raise ValidationError("trials_per_dim must be at least 1")
        if int(self.seed) < 0:
            raise ValidationError("seed must be non-negative")
        if self.mixedness not in _MIXEDNESS:
            raise ValidationError(f"mixedness must be one of {_MIXEDNESS}")
        if not self.tolerance > 0:
            raise ValidationError("tolerance must be positive")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "trials_per_dim", int(self.trials_per_dim))
        object.__setattr__(self, "tolerance", float(self.tolerance))

    @property
    def variants(self) -> tuple[str, ...]:
        return ("pure", "mixed") if self.mixedness == "both" else (self.mixedness,)

    def to_payload(self) -> dict:
        return {
            "dims": list(self.dims),
            "trials_per_dim": self.trials_per_dim,
            "seed": self.seed,
            "kinds": [k.value for k in self.kinds],
            "mixedness": self.mixedness,
            "tolerance": self.tolerance,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "SweepConfig":
        if not isinstance(payload, dict):
            raise ValidationError("sweep config must be a JSON object")
        required = {"dims", "trials_per_dim", "seed", "kinds", "mixedness"}
        missing = required - payload.keys()
        if missing:
            raise ValidationError(f"sweep config missing keys: {sorted(missing)}")
        unknown = payload.keys() - (required | {"tolerance"})
        if unknown:
            raise ValidationError(f"sweep config has unknown keys: {sorted(unknown)}")
        return cls(
            dims=tuple(payload["dims"]),
            trials_per_dim=payload["trials_per_dim"],
            seed=payload["seed"],
            kinds=tuple(metric_kind(k) for k in payload["kinds"]),
            mixedness=payload["mixedness"],
            tolerance=payload.get("tolerance", TOL.ur_slack),
        )


@dataclass(frozen=True)
class SweepResult:
    """total_trials counts URReport evaluations (dims x trials x variants x kinds)."""

    total_trials: int
    violations: int
    min_slack: float
    min_slack_witness: dict

    def to_payload(self) -> dict:
        return {
            "total_trials": self.total_trials,
            "violations": self.violations,
            "min_slack": self.min_slack,
            "min_slack_witness": self.min_slack_witness,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), sort_keys=True)


def _trial_state(config: SweepConfig, dim: int, trial: int, variant: str):
    if variant == "pure":
        return sample_pure(dim, derived_seed(config.seed, dim, trial, _STREAM_PURE)).density()
    return sample_mixed(dim, dim, derived_seed(config.seed, dim, trial, _STREAM_MIXED))


def _run_chunk(config: SweepConfig, dim: int, t_start: int, t_stop: int):
    """Evaluate trials [t_start, t_stop) of one dimension.

    Returns (count, violations, best) with best either None or
    (sort_key, witness_fields); sort_key orders first by slack, then by
    trial coordinates, so the merged minimum is unique and order-free.
    """
    count = 0
    violations = 0
    best = None
    for trial in range(t_start, t_stop):
        a = sample_observable(dim, derived_seed(config.seed, dim, trial, _STREAM_A))
        b = sample_observable(dim, derived_seed(config.seed, dim, trial, _STREAM_B))
        c = overlap(a, b)
        for v_idx, variant in enumerate(config.variants):
            rho = _trial_state(config, dim, trial, variant)
            p_a, _ = max_probability(a, rho)
            p_b, _ = max_probability(b, rho)
            for k_idx, kind in enumerate(config.kinds):
                report = report_from_probabilities(kind, p_a, p_b, c)
                count += 1
                if report.slack < -config.tolerance:
                    violations += 1
                key = (report.slack, dim, trial, v_idx, k_idx)
                if best is None or key < best[0]:
                    best = (
                        key,
                        {
                            "dim": dim,
                            "trial": trial,
                            "mixedness": variant,
                            "kind": kind.value,
                            "slack": report.slack,
                            "rho": rho.to_payload(),
                            "a": a.to_payload(),
                            "b": b.to_payload(),
                        },
                    )
    return count, violations, best


def _chunk_worker(args):
    return _run_chunk(*args)


def run_sweep(
    config: SweepConfig,
    workers: int = 1,
    progress: Optional[Callable[[str], None]] = None,
) -> SweepResult:
    """Run the full sweep; identical output for any worker count."""
    if workers < 1:
        raise ValidationError("workers must be at least 1")

    chunks = []
    if workers == 1:
        chunks = [(config, d, 0, config.trials_per_dim) for d in config.dims]
    else:
        # Small fixed chunks keep all workers busy; any partition works
        # because aggregation is order-independent.
        step = max(1, -(-config.trials_per_dim // (workers * 4)))
        for d in config.dims:
            for t0 in range(0, config.trials_per_dim, step):
                chunks.append((config, d, t0, min(t0 + step, config.trials_per_dim)))

    total = 0
    violations = 0
    best = None
    done = 0
    if workers == 1:
        for chunk in chunks:
            count, bad, cand = _run_chunk(*chunk)
            total += count
            violations += bad
            if cand is not None and (best is None or cand[0] < best[0]):
                best = cand
            done += 1
            if progress is not None:
                progress(f"dim {chunk[1]}: {done}/{len(chunks)} chunks done")
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for count, bad, cand in pool.map(_chunk_worker, chunks):
                total += count
                violations += bad
                if cand is not None and (best is None or cand[0] < best[0]):
                    best = cand
                done += 1
                if progress is not None:
                    progress(f"{done}/{len(chunks)} chunks done")

    witness = best[1] if best is not None else {}
    witness = dict(witness)
    if witness:
        witness["seed"] = config.seed
    return SweepResult(
        total_trials=total,
        violations=violations,
        min_slack=best[0][0] if best is not None else float("nan"),
        min_slack_witness=witness,
    )
