import numpy as np
import pytest

from memtrack import memory
from memtrack.errors import ParameterConstraintViolation


def _hash_with_bits(n_set):
    bits = np.zeros(64, dtype=np.uint8)
    bits[:n_set] = 1
    return bits.reshape(8, 8)


def _view(bits, idx=0):
    return memory.StoredView(np.zeros((4, 4, 2)), bits, idx)


def _queue(capacity=5):
    return memory.MemoryQueue(_view(_hash_with_bits(0)), capacity)


class TestGaussianLabel:
    def test_peak_cell_value(self):
        y = memory.gaussian_label(16, 16, 2.0, 0.8)
        assert y[0, 0] == 0.8
        assert y.max() == 0.8

    def test_value_at_sigma_distance(self):
        y = memory.gaussian_label(16, 16, 2.0, 1.0)
        assert abs(y[0, 2] - np.exp(-0.5)) < 1e-12
        assert abs(y[2, 0] - np.exp(-0.5)) < 1e-12

    def test_symmetric_under_index_negation(self):
        y = memory.gaussian_label(10, 12, 1.7, 1.0)
        for u in range(10):
            for v in range(12):
                assert y[u, v] == pytest.approx(y[-u % 10, -v % 12], abs=1e-15)

    def test_invalid_parameters_rejected(self):
        with pytest.raises(ParameterConstraintViolation):
            memory.gaussian_label(8, 8, 0.0, 1.0)
        with pytest.raises(ParameterConstraintViolation):
            memory.gaussian_label(8, 8, 1.0, -1.0)


class TestBuildLadder:
    def test_peak_recursion_values(self):
        ladder = memory.build_ladder(1.5, 1.0, 5, 0.95, 1.05, 0.7, 1.5, (16, 16))
        assert abs(ladder.slots[5].max() - 0.95) < 1e-12
        assert abs(ladder.slots[1].max() - 0.95 ** 5) < 1e-12
        assert abs(0.95 ** 5 - 0.7737809374999999) < 1e-12

    def test_parameter_constraints_enforced(self):
        with pytest.raises(ParameterConstraintViolation):
            memory.build_ladder(1.5, 1.0, 5, 1.0, 1.05, 0.7, 1.5, (8, 8))
        with pytest.raises(ParameterConstraintViolation):
            memory.build_ladder(1.5, 1.0, 5, 0.95, 1.0, 0.7, 1.5, (8, 8))
        with pytest.raises(ParameterConstraintViolation):
            memory.build_ladder(1.5, 1.0, 5, 0.95, 1.05, 1.0, 1.5, (8, 8))
        with pytest.raises(ParameterConstraintViolation):
            memory.build_ladder(1.5, 1.0, 5, 0.95, 1.05, 0.7, 1.0, (8, 8))

    def test_spread_ordering(self):
        ladder = memory.build_ladder(1.5, 1.0, 5, 0.95, 1.05, 0.7, 1.5, (16, 16))
        # oldest slot has the widest spread: sigma_1 > sigma_K > sigma_c
        assert ladder.slot_sigmas[1] > ladder.slot_sigmas[5] > ladder.sigma_c

    def test_adjacent_slot_ratios_exact(self):
        ladder = memory.build_ladder(2.0, 1.0, 5, 0.9, 1.1, 0.7, 1.5, (8, 8))
        for k in range(1, 5):
            assert abs(ladder.slot_peaks[k] - 0.9 * ladder.slot_peaks[k + 1]) < 1e-12
            assert abs(ladder.slot_sigmas[k] - 1.1 * ladder.slot_sigmas[k + 1]) < 1e-12

    def test_anchor_slot_uses_its_own_factors(self):
        ladder = memory.build_ladder(2.0, 1.0, 3, 0.95, 1.05, 0.7, 1.5, (8, 8))
        assert abs(ladder.slot_peaks[0] - 0.7) < 1e-12
        assert abs(ladder.slot_sigmas[0] - 3.0) < 1e-12

    def test_spectra_cached_for_every_slot(self):
        ladder = memory.build_ladder(1.0, 1.0, 4, 0.95, 1.05, 0.7, 1.5, (8, 8))
        assert len(ladder.slot_spectra) == 5
        assert np.allclose(ladder.label_spectrum(2),
                           np.fft.fft2(ladder.slots[2]))


class TestAdmission:
    def test_identical_hash_not_admitted(self):
        queue = _queue()
        result = memory.maybe_admit(queue, np.zeros((4, 4, 2)),
                                    _hash_with_bits(0), 0.5)
        assert not result.admitted and len(queue) == 0

    def test_above_threshold_admitted_without_eviction(self):
        queue = _queue()
        result = memory.maybe_admit(queue, np.zeros((4, 4, 2)),
                                    _hash_with_bits(39), 0.5)   # score 39/64
        assert result.admitted and result.evicted is None
        assert len(queue) == 1

    def test_full_queue_evicts_oldest_and_keeps_anchor(self):
        queue = _queue(capacity=5)
        anchor = queue.anchor
        # alternating far-apart hashes always admit at tau=0.5
        for i in range(1, 7):
            bits = _hash_with_bits(64 if i % 2 else 0)
            memory.maybe_admit(queue, np.zeros((4, 4, 2)), bits, 0.5, frame_index=i)
        assert len(queue) == 5
        assert queue.anchor is anchor
        assert [v.frame_index for v in queue.views] == [2, 3, 4, 5, 6]

    def test_exact_threshold_not_admitted(self):
        queue = _queue()
        result = memory.maybe_admit(queue, np.zeros((4, 4, 2)),
                                    _hash_with_bits(32), 0.5)   # score exactly 0.5
        assert not result.admitted

    def test_queue_never_exceeds_capacity(self, rng):
        queue = _queue(capacity=3)
        for i in range(50):
            bits = rng.integers(0, 2, size=(8, 8)).astype(np.uint8)
            memory.maybe_admit(queue, np.zeros((4, 4, 2)), bits, 0.3, frame_index=i)
            assert len(queue) <= 3

    def test_admission_monotone_in_threshold(self, rng):
        hashes = [rng.integers(0, 2, size=(8, 8)).astype(np.uint8) for _ in range(60)]
        counts = []
        for tau in np.linspace(0.1, 0.9, 9):
            queue = _queue(capacity=5)
            admitted = 0
            for i, bits in enumerate(hashes):
                admitted += memory.maybe_admit(
                    queue, np.zeros((4, 4, 2)), bits, tau, frame_index=i).admitted
            counts.append(admitted)
        assert all(a >= b for a, b in zip(counts, counts[1:]))


class TestTrainingViews:
    def _ladder(self, capacity=5):
        return memory.build_ladder(1.5, 1.0, capacity, 0.95, 1.05, 0.7, 1.5, (8, 8))

    def test_empty_queue_yields_anchor_only(self):
        pairs = memory.training_views(_queue(), self._ladder())
        assert len(pairs) == 1
        assert pairs[0][1] == 0

    def test_full_queue_assigns_all_slots(self):
        queue = _queue(capacity=5)
        for i in range(1, 6):
            queue.views.append(_view(_hash_with_bits(i), i))
        pairs = memory.training_views(queue, self._ladder())
        assert [slot for _, slot in pairs] == [0, 1, 2, 3, 4, 5]
        assert pairs[-1][0].frame_index == 5   # newest view gets the top slot

    def test_partial_queue_is_newest_anchored(self):
        queue = _queue(capacity=5)
        queue.views.append(_view(_hash_with_bits(1), 10))
        queue.views.append(_view(_hash_with_bits(2), 20))
        pairs = memory.training_views(queue, self._ladder())
        assert [slot for _, slot in pairs] == [0, 4, 5]
        assert pairs[1][0].frame_index == 10
        assert pairs[2][0].frame_index == 20
