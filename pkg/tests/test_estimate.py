"""Likelihood, gradient and fit behavior for the logit estimator.

Oracles: the log-likelihood is re-summed record by record with plain
arithmetic, and the analytic gradient is checked against central finite
differences.
"""

import io
import json
import math

import numpy as np
import pytest

from skillcheck.estimate import (
    FitResult,
    OutcomeRecord,
    RaschEstimator,
    fit_rasch,
    gradient,
    log_likelihood,
    read_outcome_csv,
)
from skillcheck.logistic import sigmoid
from skillcheck.resolve import SplitMix64


def make_records(pairs):
    return [OutcomeRecord(p, t, s) for p, t, s in pairs]


def synthetic(n_persons, n_tasks, seed, spread=2.0):
    """Records drawn from known logits, plus the generating truth."""
    rng = SplitMix64(seed)
    theta = {f"p{i:03d}": -spread + 2 * spread * rng.random() for i in range(n_persons)}
    beta = {f"t{j:03d}": -spread + 2 * spread * rng.random() for j in range(n_tasks)}
    records = []
    for p in sorted(theta):
        for t in sorted(beta):
            records.append(
                OutcomeRecord(p, t, rng.random() < sigmoid(theta[p] - beta[t]))
            )
    return records, theta, beta


class TestLogLikelihood:
    def test_even_match_single_record(self):
        ll = log_likelihood(
            make_records([("a", "t", True)]), {"a": 0.7}, {"t": 0.7}
        )
        assert ll == pytest.approx(math.log(0.5), abs=1e-15)

    def test_doubling_doubles(self):
        records, theta, beta = synthetic(4, 3, seed=5)
        single = log_likelihood(records, theta, beta)
        double = log_likelihood(records + records, theta, beta)
        assert double == pytest.approx(2 * single, rel=1e-12)

    def test_matches_per_record_oracle(self):
        records = make_records(
            [("a", "t1", True), ("a", "t2", False), ("b", "t1", False), ("b", "t2", True)]
        )
        theta = {"a": 0.8, "b": -0.3}
        beta = {"t1": 0.1, "t2": -0.6}
        oracle = 0.0
        for rec in records:
            p = 1.0 / (1.0 + math.exp(-(theta[rec.person] - beta[rec.task])))
            oracle += math.log(p) if rec.success else math.log(1.0 - p)
        assert log_likelihood(records, theta, beta) == pytest.approx(oracle, abs=1e-12)

    def test_penalty_term(self):
        records = make_records([("a", "t", True)])
        theta, beta = {"a": 0.5}, {"t": -0.25}
        plain = log_likelihood(records, theta, beta, ridge=0.0)
        ridged = log_likelihood(records, theta, beta, ridge=0.5)
        assert ridged == pytest.approx(plain - 0.25 * (0.5**2 + 0.25**2), abs=1e-12)

    def test_slope_scales_the_gap(self):
        records = make_records([("a", "t", True)])
        ll = log_likelihood(records, {"a": 1.0}, {"t": 0.0}, slope=2.5)
        assert ll == pytest.approx(math.log(sigmoid(2.5)), abs=1e-12)

    def test_per_task_slopes(self):
        records = make_records([("a", "t1", True), ("a", "t2", True)])
        ll = log_likelihood(
            records, {"a": 1.0}, {"t1": 0.0, "t2": 0.0}, slope={"t1": 1.0, "t2": 3.0}
        )
        assert ll == pytest.approx(
            math.log(sigmoid(1.0)) + math.log(sigmoid(3.0)), abs=1e-12
        )

    def test_missing_parameter_is_an_error(self):
        records = make_records([("a", "t", True)])
        with pytest.raises(ValueError):
            log_likelihood(records, {}, {"t": 0.0})
        with pytest.raises(ValueError):
            log_likelihood(records, {"a": 0.0}, {})


class TestGradient:
    def _instance(self, seed=101):
        rng = SplitMix64(seed)
        persons = [f"p{i}" for i in range(5)]
        tasks = [f"t{j}" for j in range(5)]
        theta = {p: -1.5 + 3 * rng.random() for p in persons}
        beta = {t: -1.5 + 3 * rng.random() for t in tasks}
        records = [
            OutcomeRecord(p, t, rng.random() < 0.5) for p in persons for t in tasks
        ]
        return records, theta, beta

    def test_matches_finite_differences(self):
        records, theta, beta = self._instance()
        ridge = 0.01
        g = gradient(records, theta, beta, ridge=ridge)
        h = 1e-5
        names = [("p", k) for k in sorted(theta)] + [("t", k) for k in sorted(beta)]
        for idx, (kind, key) in enumerate(names):
            hi_t, lo_t = dict(theta), dict(theta)
            hi_b, lo_b = dict(beta), dict(beta)
            if kind == "p":
                hi_t[key] += h
                lo_t[key] -= h
            else:
                hi_b[key] += h
                lo_b[key] -= h
            fd = (
                log_likelihood(records, hi_t, hi_b, ridge=ridge)
                - log_likelihood(records, lo_t, lo_b, ridge=ridge)
            ) / (2 * h)
            assert abs(g[idx] - fd) <= 1e-6 * max(1.0, abs(fd))

    def test_zero_at_fitted_optimum(self):
        records, _, _ = self._instance(seed=77)
        result = fit_rasch(records, ridge=0.05, tol=1e-10)
        g = gradient(records, result.abilities, result.difficulties, ridge=0.05)
        # the gauge shift moves the solution along the penalty gradient a bit
        assert float(np.max(np.abs(g))) < 0.05 * 0.5

    def test_ridge_shifts_gradient_exactly(self):
        records, theta, beta = self._instance(seed=55)
        g0 = gradient(records, theta, beta, ridge=0.0)
        g1 = gradient(records, theta, beta, ridge=0.3)
        w = np.array([theta[k] for k in sorted(theta)] + [beta[k] for k in sorted(beta)])
        assert np.array_equal(g1, g0 - 0.3 * w)


class TestFit:
    def test_forced_ordering_two_by_two(self):
        records = make_records(
            [
                ("alice", "t1", True),
                ("alice", "t2", True),
                ("bob", "t1", False),
                ("bob", "t2", False),
            ]
        )
        result = fit_rasch(records)
        assert result.abilities["alice"] > result.abilities["bob"]
        assert result.extreme == {"alice", "bob"}
        assert result.converged

    def test_difficulties_centered(self):
        records, _, _ = synthetic(6, 4, seed=31)
        result = fit_rasch(records)
        assert abs(sum(result.difficulties.values())) < 1e-10

    def test_permutation_invariance_bit_for_bit(self):
        records, _, _ = synthetic(8, 5, seed=13)
        forward = fit_rasch(records)
        backward = fit_rasch(list(reversed(records)))
        assert forward.abilities == backward.abilities
        assert forward.difficulties == backward.difficulties
        assert forward.log_likelihood == backward.log_likelihood
        assert forward.iterations == backward.iterations

    def test_objective_trace_is_nondecreasing(self):
        records, _, _ = synthetic(10, 6, seed=903)
        result = fit_rasch(records)
        trace = result.objective_trace
        assert len(trace) >= 2
        assert all(b >= a for a, b in zip(trace, trace[1:]))

    def test_shift_of_true_logits_changes_nothing_pairwise(self):
        base_records, theta, beta = synthetic(6, 5, seed=47)
        fit_a = fit_rasch(base_records)
        # shifting every generating logit by a constant leaves every
        # success probability, hence the data and the fit, unchanged
        shifted = [OutcomeRecord(r.person, r.task, r.success) for r in base_records]
        fit_b = fit_rasch(shifted)
        for p in theta:
            for t in beta:
                a = fit_a.abilities[p] - fit_a.difficulties[t]
                b = fit_b.abilities[p] - fit_b.difficulties[t]
                assert abs(a - b) < 1e-6

    def test_unpenalized_extremes_warn(self):
        records = make_records(
            [("ace", "t1", True), ("ace", "t2", True), ("bob", "t1", True), ("bob", "t2", False)]
        )
        with pytest.warns(RuntimeWarning, match="diverges"):
            result = fit_rasch(records, ridge=0.0, max_iter=50)
        assert "ace" in result.extreme

    def test_penalized_extremes_flagged_without_warning(self):
        records = make_records(
            [("ace", "t1", True), ("ace", "t2", True), ("bob", "t1", True), ("bob", "t2", False)]
        )
        result = fit_rasch(records, ridge=0.01)
        assert "ace" in result.extreme
        assert result.converged

    def test_disconnected_data_warns(self):
        records = make_records(
            [("a", "t1", True), ("a", "t1", False), ("b", "t2", True), ("b", "t2", False)]
        )
        with pytest.warns(RuntimeWarning, match="disconnected"):
            result = fit_rasch(records)
        assert not result.connected

    def test_reported_likelihood_is_unpenalized(self):
        records, _, _ = synthetic(5, 4, seed=7)
        result = fit_rasch(records)
        direct = log_likelihood(
            records, result.abilities, result.difficulties, ridge=0.0
        )
        assert result.log_likelihood == pytest.approx(direct, abs=1e-9)

    def test_small_recovery(self):
        records, theta, beta = synthetic(50, 20, seed=2025)
        result = fit_rasch(records)
        assert result.converged
        shift = sum(beta.values()) / len(beta)
        true = np.array([theta[p] - shift for p in sorted(theta)])
        fitted = np.array([result.abilities[p] for p in sorted(theta)])
        r = np.corrcoef(true, fitted)[0, 1]
        assert r > 0.8

    def test_fitted_probabilities_reproduce_task_frequencies(self):
        # at the penalized optimum the mean residual per task is only the
        # tiny ridge pull, far inside sampling noise
        records, _, _ = synthetic(50, 20, seed=314)
        result = fit_rasch(records)
        for t in result.difficulties:
            hits = [r.success for r in records if r.task == t]
            observed = sum(hits) / len(hits)
            predicted = np.mean(
                [
                    sigmoid(result.abilities[r.person] - result.difficulties[t])
                    for r in records
                    if r.task == t
                ]
            )
            assert abs(observed - predicted) < 0.01

    def test_validation(self):
        with pytest.raises(ValueError):
            fit_rasch([])
        records = make_records([("a", "t", True)])
        with pytest.raises(ValueError):
            fit_rasch(records, ridge=-1.0)
        with pytest.raises(ValueError):
            fit_rasch(records, max_iter=0)
        with pytest.raises(ValueError):
            fit_rasch(records, tol=0.0)

    def test_record_validation(self):
        with pytest.raises(ValueError):
            OutcomeRecord("", "t", True)
        with pytest.raises(ValueError):
            OutcomeRecord("p", "", True)


class TestEstimatorApi:
    def test_params_roundtrip(self):
        est = RaschEstimator(slope=2.0, ridge=0.1, max_iter=100, tol=1e-6)
        assert est.get_params() == {
            "slope": 2.0,
            "ridge": 0.1,
            "max_iter": 100,
            "tol": 1e-6,
        }
        est.set_params(ridge=0.2, max_iter=50)
        assert est.ridge == 0.2
        assert est.max_iter == 50

    def test_set_params_rejects_unknown(self):
        with pytest.raises(ValueError):
            RaschEstimator().set_params(gamma=1.0)

    def test_fit_exposes_attributes(self):
        records, _, _ = synthetic(6, 4, seed=88)
        est = RaschEstimator().fit(records)
        assert est.converged_
        assert set(est.abilities_) == {r.person for r in records}
        assert set(est.difficulties_) == {r.task for r in records}
        assert est.n_iter_ == est.result_.iterations
        assert est.connected_

    def test_predict_proba(self):
        records, _, _ = synthetic(6, 4, seed=88)
        est = RaschEstimator(slope=1.5).fit(records)
        p = est.predict_proba("p000", "t000")
        expected = sigmoid(1.5 * (est.abilities_["p000"] - est.difficulties_["t000"]))
        assert p == pytest.approx(expected, abs=1e-15)

    def test_unfitted_raises(self):
        with pytest.raises(RuntimeError):
            RaschEstimator().predict_proba("a", "t")

    def test_unknown_ids_raise(self):
        records, _, _ = synthetic(3, 3, seed=4)
        est = RaschEstimator().fit(records)
        with pytest.raises(KeyError):
            est.predict_proba("nobody", "t000")


class TestOutcomeCsv:
    def test_read_good_file(self, tmp_path):
        path = tmp_path / "log.csv"
        path.write_text("person,task,success\na,t1,1\nb,t1,0\n")
        records = read_outcome_csv(str(path))
        assert records == [
            OutcomeRecord("a", "t1", True),
            OutcomeRecord("b", "t1", False),
        ]

    def test_read_from_stream(self):
        records = read_outcome_csv(io.StringIO("person,task,success\nx,y,1\n"))
        assert records == [OutcomeRecord("x", "y", True)]

    def test_bad_header(self):
        with pytest.raises(ValueError, match="line 1"):
            read_outcome_csv(io.StringIO("who,what,result\na,t,1\n"))

    def test_bad_success_value(self):
        with pytest.raises(ValueError, match="line 3"):
            read_outcome_csv(io.StringIO("person,task,success\na,t,1\nb,t,yes\n"))

    def test_wrong_field_count(self):
        with pytest.raises(ValueError, match="line 2"):
            read_outcome_csv(io.StringIO("person,task,success\na,t\n"))

    def test_empty_identifier(self):
        with pytest.raises(ValueError, match="line 2"):
            read_outcome_csv(io.StringIO("person,task,success\n,t,1\n"))

    def test_empty_input(self):
        with pytest.raises(ValueError, match="empty"):
            read_outcome_csv(io.StringIO(""))

    def test_blank_lines_skipped(self):
        records = read_outcome_csv(io.StringIO("person,task,success\na,t,1\n\n"))
        assert len(records) == 1


class TestFitResultJson:
    def test_schema_keys(self):
        records, _, _ = synthetic(3, 2, seed=60)
        result = fit_rasch(records)
        payload = json.loads(result.to_json())
        assert list(payload) == [
            "abilities",
            "difficulties",
            "log_likelihood",
            "converged",
            "iterations",
            "extreme",
        ]
        assert isinstance(payload["extreme"], list)

    def test_roundtrip(self):
        records, _, _ = synthetic(3, 2, seed=61)
        result = fit_rasch(records)
        back = FitResult.from_json(result.to_json())
        assert back.abilities == result.abilities
        assert back.difficulties == result.difficulties
        assert back.converged == result.converged
        assert back.iterations == result.iterations

    def test_digit_rounding(self):
        result = FitResult(
            abilities={"a": 0.12345678901234567},
            difficulties={"t": 0.0},
            log_likelihood=-1.23456789012345678,
            iterations=3,
            converged=True,
            extreme=frozenset(),
            connected=True,
        )
        payload = json.loads(result.to_json(digits=4))
        assert payload["abilities"]["a"] == 0.1235
