import math

import numpy as np
import pytest

from core.exceptions import InvalidDurationError, UnknownGeneratorError
from core.linalg import expm_i, haar_unitary, opnorm, random_hermitian
from core.pauli import pauli_string
from core.tgate import T
from plugins.dynamics.evolve import (
    GateSequence,
    conjugated_generators,
    evaluate_sequence,
    positive_time_replacement,
    replace_negative_steps,
    replacement_error,
    sequence_unitary,
)

GOLDEN = (1 + math.sqrt(5)) / 2


class TestGateSequence:
    def test_rejects_non_positive_durations(self):
        with pytest.raises(InvalidDurationError):
            GateSequence((("H", 0.0),))
        with pytest.raises(InvalidDurationError):
            GateSequence((("H", -1.0),))

    def test_total_time(self):
        assert GateSequence((("A", 0.5), ("B", 1.25))).total_time == pytest.approx(1.75)

    def test_unknown_generator(self):
        with pytest.raises(UnknownGeneratorError):
            sequence_unitary(GateSequence((("missing", 1.0),)), {"H": np.eye(4)})

    def test_empty_sequence_is_identity(self):
        U = sequence_unitary(GateSequence(()), {"H": pauli_string("ZZ")})
        assert np.array_equal(U, np.eye(4))
        with pytest.raises(ValueError):
            sequence_unitary(GateSequence(()), {})

    def test_full_period_is_identity(self):
        U = sequence_unitary(GateSequence((("H", 1.0),)), {"H": np.diag([2 * np.pi, 0, 0, 0])})
        assert np.allclose(U, np.eye(4), atol=1e-12)

    def test_order_is_left_to_right(self, rng):
        gens = {"A": random_hermitian(4, rng), "B": random_hermitian(4, rng)}
        U = sequence_unitary(GateSequence((("A", 0.3), ("B", 0.7))), gens)
        assert np.allclose(U, expm_i(gens["A"], 0.3) @ expm_i(gens["B"], 0.7), atol=1e-12)

    def test_evaluate_records_error(self, rng):
        gens = {"A": random_hermitian(4, rng)}
        seq = GateSequence((("A", 0.4), ("A", 0.6)))
        evaluated = evaluate_sequence(seq, gens, expm_i(gens["A"], 1.0))
        assert evaluated.achieved_error == pytest.approx(0.0, abs=1e-12)
        assert seq.achieved_error is None

    def test_conjugated_generators_transfer_gates(self, rng):
        H = random_hermitian(4, rng)
        gens = {"H": H, "THT": T @ H @ T}
        seq = GateSequence((("H", 0.2), ("THT", 1.1), ("H", 0.5)))
        P = haar_unitary(4, rng)
        U = sequence_unitary(seq, gens)
        V = sequence_unitary(seq, conjugated_generators(gens, P))
        assert np.allclose(V, P @ U @ P.conj().T, atol=1e-11)


class TestPositiveTimeReplacement:
    def test_half_period(self):
        result = positive_time_replacement(np.diag([0.0, np.pi]), tau=-1.0, epsilon=1e-6)
        assert result.n == 2
        assert result.t == pytest.approx(1.0)

    def test_scalar_full_period(self):
        result = positive_time_replacement(2 * np.pi * np.eye(4), tau=-0.5, epsilon=1e-6)
        assert result.n == 1
        assert result.t == pytest.approx(0.5)

    def test_golden_ratio_gap(self):
        H = np.diag([0.0, 2 * np.pi * GOLDEN])
        result = positive_time_replacement(H, tau=-0.5, epsilon=1e-3)
        assert result is not None
        assert result.n == 4181
        assert result.error < 1e-3
        assert replacement_error(H, -0.5, result.t) < 1e-3 + 1e-9

    def test_single_gap_hamiltonians(self, rng):
        for _ in range(5):
            V = haar_unitary(4, rng)
            H = V @ np.diag([0.0, 0.0, 0.0, rng.uniform(1.0, 5.0)]) @ V.conj().T
            tau = -rng.uniform(0.1, 3.0)
            result = positive_time_replacement(H, tau, epsilon=1e-3)
            assert result is not None
            assert result.t > 0
            assert result.n > abs(tau)
            assert replacement_error(H, tau, result.t) < 1e-3 + 1e-9

    def test_error_matches_distance_from_identity(self):
        H = np.diag([0.0, 1.0, 2.0, 3.0]) * 2 * np.pi / 3
        result = positive_time_replacement(H, tau=-2.0, epsilon=1e-6)
        assert result.n == 3
        assert replacement_error(H, -2.0, result.t) == pytest.approx(opnorm(np.eye(4) - expm_i(H, 3)), abs=1e-9)

    def test_cap_returns_none(self, rng):
        H = random_hermitian(4, rng)
        assert positive_time_replacement(H, tau=-1.0, epsilon=1e-9, t_max=10.0) is None

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            positive_time_replacement(np.eye(2), tau=0.5, epsilon=1e-3)
        with pytest.raises(ValueError):
            positive_time_replacement(np.eye(2), tau=-0.5, epsilon=0.0)


class TestReplaceNegativeSteps:
    def test_negative_steps_become_positive(self):
        gens = {"Z": np.pi * (pauli_string("ZI") + np.eye(4)), "X": pauli_string("XI")}
        seq = replace_negative_steps([("X", 0.3), ("Z", -0.25)], gens, epsilon=1e-6)
        assert all(t > 0 for _, t in seq.steps)
        target = expm_i(gens["X"], 0.3) @ expm_i(gens["Z"], -0.25)
        assert opnorm(sequence_unitary(seq, gens) - target) < 1e-6

    def test_unknown_generator(self):
        with pytest.raises(UnknownGeneratorError):
            replace_negative_steps([("missing", -1.0)], {}, epsilon=1e-3)
