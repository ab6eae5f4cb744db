from __future__ import annotations

import itertools

import numpy as np
import pytest
import scipy.linalg

from threshold_pst.errors import ConvergenceError, NumericError
from threshold_pst.oracle import (
    as_real_symmetric,
    eigh,
    entry_series,
    expm_hermitian,
    max_abs_diff,
    unitarity_residual,
)
from threshold_pst.threshold import (
    BlockForm,
    CreationSequence,
    block_form_to_graph,
    conjugate_spectrum,
    creation_sequence_to_graph,
    degree_sequence,
    laplacian,
)


def _random_symmetric(n: int, seed: int) -> np.ndarray:
    a = np.random.default_rng(seed).normal(size=(n, n))
    return a + a.T


class TestEigh:
    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_matches_lapack(self, n):
        a = _random_symmetric(n, seed=n)
        dec = eigh(a)
        np.testing.assert_allclose(dec.eigenvalues, np.linalg.eigvalsh(a), atol=1e-10)
        assert dec.reconstruction_residual(a) < 1e-10
        assert dec.orthogonality_residual() < 1e-10

    def test_eigenvalues_ascending(self):
        dec = eigh(_random_symmetric(7, seed=3))
        assert np.all(np.diff(dec.eigenvalues) >= 0)

    def test_diagonal_needs_no_sweeps(self):
        dec = eigh(np.diag([3.0, 1.0, 2.0]))
        assert dec.sweeps == 0
        np.testing.assert_array_equal(dec.eigenvalues, [1.0, 2.0, 3.0])

    def test_laplacian_snaps_to_integer_spectrum(self):
        g = block_form_to_graph(BlockForm((2, 6, 4, 4)))
        snapped = eigh(laplacian(g)).snap_integers()
        assert snapped == tuple(sorted(conjugate_spectrum(degree_sequence(g))))

    @pytest.mark.slow
    def test_snaps_to_conjugate_spectrum_for_every_small_graph(self):
        for n in range(1, 13):
            for rest in itertools.product((0, 1), repeat=n - 1):
                seq = CreationSequence((0, *rest))
                g = creation_sequence_to_graph(seq)
                snapped = eigh(laplacian(g)).snap_integers()
                assert snapped == tuple(sorted(conjugate_spectrum(degree_sequence(g)))), str(seq)

    def test_snap_refuses_non_integer_spectrum(self):
        dec = eigh(np.array([[0.0, 1.0], [1.0, 0.5]]))
        assert dec.snap_integers() is None

    def test_sweep_cap(self):
        with pytest.raises(ConvergenceError) as info:
            eigh(_random_symmetric(10, seed=1), max_sweeps=1)
        assert info.value.sweeps == 1
        assert info.value.residual > 0

    @pytest.mark.parametrize(
        "matrix",
        [
            np.zeros((2, 3)),
            np.zeros((0, 0)),
            np.array([[1.0, 2.0], [2.1, 1.0]]),
            np.array([[1.0, 1j], [-1j, 1.0]]),
        ],
    )
    def test_rejects_invalid_input(self, matrix):
        with pytest.raises(NumericError):
            as_real_symmetric(matrix)


class TestExponential:
    @pytest.mark.parametrize("t", [0.0, 0.3, np.pi / 2, 2.7])
    def test_matches_scipy_expm(self, t):
        lap = laplacian(block_form_to_graph(BlockForm((2, 2, 1, 2))))
        u = expm_hermitian(lap, t)
        assert max_abs_diff(u, scipy.linalg.expm(-1j * t * lap)) < 1e-10
        assert unitarity_residual(u) < 1e-10

    def test_entry_series_matches_full_exponential(self):
        lap = laplacian(block_form_to_graph(BlockForm((2, 6))))
        times = np.linspace(0, 2 * np.pi, 17)
        series = entry_series(lap, 1, 3, times)
        for t, value in zip(times, series):
            assert value == pytest.approx(expm_hermitian(lap, t)[0, 2], abs=1e-12)

    @pytest.mark.parametrize("canonical", [(2, 2, 1, 2), (2, 6, 4, 4), (3, 1, 2)])
    def test_group_law(self, canonical):
        lap = laplacian(block_form_to_graph(BlockForm.from_canonical(canonical)))
        dec = eigh(lap)
        for s, t in [(0.3, 1.1), (np.pi / 2, np.pi / 2), (2.0, -0.7), (5.0, 4.0)]:
            product = expm_hermitian(lap, s, dec) @ expm_hermitian(lap, t, dec)
            assert max_abs_diff(product, expm_hermitian(lap, s + t, dec)) <= 1e-9
        product = expm_hermitian(lap, 0.4) @ expm_hermitian(lap, 0.9)
        assert max_abs_diff(product, expm_hermitian(lap, 1.3)) <= 1e-9

    def test_reuses_decomposition(self):
        lap = laplacian(block_form_to_graph(BlockForm((2, 2))))
        dec = eigh(lap)
        np.testing.assert_allclose(expm_hermitian(lap, 1.0, dec), expm_hermitian(lap, 1.0), atol=1e-13)

    def test_shape_mismatch(self):
        with pytest.raises(NumericError):
            max_abs_diff(np.zeros((2, 2)), np.zeros((3, 3)))
