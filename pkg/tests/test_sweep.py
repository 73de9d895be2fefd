import math

import pytest

from fidur.errors import ValidationError
from fidur.metrics import MetricKind, metric_kind
from fidur.states import observable_from_payload, state_from_payload
from fidur.sweep import SweepConfig, SweepResult, run_sweep
from fidur.uncertainty import check_ur

ALL_KINDS = (MetricKind.ANGLE, MetricKind.BURES, MetricKind.ROOT_INFIDELITY)


def small_config(**overrides):
    base = dict(
        dims=(2, 3),
        trials_per_dim=12,
        seed=424242,
        kinds=ALL_KINDS,
        mixedness="both",
    )
    base.update(overrides)
    return SweepConfig(**base)


class TestSweepConfig:
    def test_rejects_empty_dims(self):
        with pytest.raises(ValidationError):
            small_config(dims=())

    def test_rejects_dimension_one(self):
        with pytest.raises(ValidationError):
            small_config(dims=(1, 2))

    def test_rejects_zero_trials(self):
        with pytest.raises(ValidationError):
            small_config(trials_per_dim=0)

    def test_rejects_negative_seed(self):
        with pytest.raises(ValidationError):
            small_config(seed=-5)

    def test_rejects_unknown_mixedness(self):
        with pytest.raises(ValidationError):
            small_config(mixedness="thermal")

    def test_rejects_empty_kinds(self):
        with pytest.raises(ValidationError):
            small_config(kinds=())

    def test_rejects_nonpositive_tolerance(self):
        with pytest.raises(ValidationError):
            small_config(tolerance=0.0)

    def test_variants(self):
        assert small_config(mixedness="both").variants == ("pure", "mixed")
        assert small_config(mixedness="pure").variants == ("pure",)
        assert small_config(mixedness="mixed").variants == ("mixed",)

    def test_payload_round_trip(self):
        config = small_config()
        assert SweepConfig.from_payload(config.to_payload()) == config

    def test_from_payload_rejects_missing_keys(self):
        payload = small_config().to_payload()
        del payload["seed"]
        with pytest.raises(ValidationError):
            SweepConfig.from_payload(payload)

    def test_from_payload_rejects_unknown_keys(self):
        payload = small_config().to_payload()
        payload["threads"] = 4
        with pytest.raises(ValidationError):
            SweepConfig.from_payload(payload)

    def test_from_payload_defaults_tolerance(self):
        payload = small_config().to_payload()
        del payload["tolerance"]
        assert SweepConfig.from_payload(payload).tolerance == 1e-9


class TestRunSweep:
    def test_counts_every_report(self):
        result = run_sweep(small_config())
        assert result.total_trials == 2 * 12 * 2 * 3

    def test_no_violations_on_random_inputs(self):
        result = run_sweep(small_config(trials_per_dim=40))
        assert result.violations == 0
        assert result.min_slack >= -1e-9

    def test_sequential_repeat_is_bit_identical(self):
        a = run_sweep(small_config())
        b = run_sweep(small_config())
        assert a.to_json() == b.to_json()

    def test_parallel_matches_sequential(self):
        config = small_config(trials_per_dim=16)
        assert run_sweep(config, workers=2).to_json() == run_sweep(config, workers=1).to_json()

    def test_rejects_bad_worker_count(self):
        with pytest.raises(ValidationError):
            run_sweep(small_config(), workers=0)

    def test_witness_identifies_its_trial(self):
        result = run_sweep(small_config())
        witness = result.min_slack_witness
        assert witness["seed"] == 424242
        assert witness["dim"] in (2, 3)
        assert 0 <= witness["trial"] < 12
        assert witness["mixedness"] in ("pure", "mixed")
        assert witness["kind"] in [k.value for k in ALL_KINDS]
        assert witness["slack"] == result.min_slack

    def test_witness_payload_reproduces_the_slack(self):
        """A witness must be self-contained: rebuilding the trial from its
        serialized state and observables gives back the identical slack."""
        result = run_sweep(small_config())
        witness = result.min_slack_witness
        report = check_ur(
            metric_kind(witness["kind"]),
            observable_from_payload(witness["a"]),
            observable_from_payload(witness["b"]),
            state_from_payload(witness["rho"]),
        )
        assert report.slack == result.min_slack

    def test_pure_only_sweep_reports_pure_witness(self):
        result = run_sweep(small_config(mixedness="pure"))
        assert result.min_slack_witness["mixedness"] == "pure"
        assert result.total_trials == 2 * 12 * 1 * 3

    def test_single_kind_sweep(self):
        result = run_sweep(small_config(kinds=(MetricKind.BURES,)))
        assert result.min_slack_witness["kind"] == "bures"

    def test_progress_callback_fires(self):
        messages = []
        run_sweep(small_config(trials_per_dim=2), progress=messages.append)
        assert len(messages) == 2

    def test_result_json_shape(self):
        import json

        result = run_sweep(small_config(trials_per_dim=2))
        payload = json.loads(result.to_json())
        assert set(payload) == {
            "total_trials",
            "violations",
            "min_slack",
            "min_slack_witness",
        }
        assert isinstance(payload["min_slack_witness"], dict)
        assert math.isfinite(payload["min_slack"])
