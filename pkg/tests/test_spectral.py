from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from threshold_pst.errors import BlockFormError, PreconditionError
from threshold_pst.oracle import eigh, expm_hermitian, max_abs_diff, unitarity_residual
from threshold_pst.services.spectral import (
    block_eigenvalue,
    build_spectral_system,
    eigenvector,
    fidelity,
    offdiag_entry,
    pairs_with_max_block,
    propagator,
    propagator_series,
    telescoping_holds,
    telescoping_sum,
)
from threshold_pst.threshold import (
    BlockForm,
    block_form_to_graph,
    conjugate_spectrum,
    creation_to_block_form,
    degree_sequence,
    enumerate_canonical_forms,
    laplacian,
    random_creation_sequence,
)


class TestSpectralSystem:
    def test_block_eigenvalues(self):
        form = BlockForm((2, 6, 4, 4))
        assert [block_eigenvalue(form, j) for j in range(1, 5)] == [10, 12, 4, 16]

    def test_components_are_orthogonal_idempotents(self):
        for form in enumerate_canonical_forms(8):
            residuals = build_spectral_system(form).residuals()
            assert max(residuals.values()) < 1e-10, (str(form), residuals)

    def test_multiset_is_conjugate_partition(self):
        for form in enumerate_canonical_forms(9):
            expected = conjugate_spectrum(degree_sequence(block_form_to_graph(form)))
            assert build_spectral_system(form).eigenvalue_multiset() == expected

    def test_multiplicities(self):
        # O_2 ∨ K_6
        system = build_spectral_system(BlockForm((2, 6)))
        assert system.multiplicities() == {6: 1, 8: 6, 0: 1}

    def test_seed_block_has_no_component(self):
        system = build_spectral_system(BlockForm((1, 2)))
        assert [c.block for c in system.components] == [2, 0]
        assert system.eigenvalue_multiset() == (3, 3, 0)

    def test_eigenvector_is_unit_and_eigen(self):
        form = BlockForm((2, 6, 4, 4))
        lap = laplacian(block_form_to_graph(form))
        for j in range(2, form.count + 1):
            v = eigenvector(form, j)
            assert np.linalg.norm(v) == pytest.approx(1.0)
            np.testing.assert_allclose(lap @ v, block_eigenvalue(form, j) * v, atol=1e-12)

    def test_eigenvector_needs_block_two_or_more(self):
        with pytest.raises(BlockFormError):
            eigenvector(BlockForm((2, 2)), 1)


class TestPropagator:
    def test_matches_oracle_on_random_forms(self):
        rng = np.random.default_rng(2024)
        for _ in range(50):
            n = int(rng.integers(2, 33))
            form = creation_to_block_form(random_creation_sequence(n, seed=rng))
            t = float(rng.uniform(0, 2 * math.pi))
            closed = propagator(build_spectral_system(form), t).matrix
            oracle = expm_hermitian(laplacian(block_form_to_graph(form)), t)
            assert max_abs_diff(closed, oracle) <= 1e-9, str(form)
            assert unitarity_residual(closed) <= 1e-10
            period = propagator(build_spectral_system(form), 2 * math.pi).matrix
            assert max_abs_diff(period, np.eye(form.n)) <= 1e-8

    @pytest.mark.slow
    def test_matches_oracle_on_every_small_form(self):
        rng = np.random.default_rng(12)
        for form in enumerate_canonical_forms(12):
            times = rng.uniform(0, 2 * math.pi, size=25)
            lap = laplacian(block_form_to_graph(form))
            dec = eigh(lap)
            closed = propagator_series(build_spectral_system(form), times)
            for t, u in zip(times, closed):
                assert max_abs_diff(u, expm_hermitian(lap, t, dec)) <= 1e-9, (form.blocks, t)

    def test_series_matches_single_times(self):
        system = build_spectral_system(BlockForm((2, 2, 1, 2)))
        times = [0.0, 0.4, math.pi / 2, 3.0]
        series = propagator_series(system, times)
        assert series.shape == (4, 7, 7)
        for t, u in zip(times, series):
            np.testing.assert_allclose(u, propagator(system, t).matrix, atol=1e-13)

    def test_identity_at_zero(self):
        u = propagator(build_spectral_system(BlockForm((2, 6))), 0.0)
        np.testing.assert_allclose(u.matrix, np.eye(8), atol=1e-13)

    @pytest.mark.parametrize("canonical", [(2, 2), (2, 6), (2, 6, 4, 4)])
    def test_perfect_transfer_at_half_pi(self, canonical):
        form = BlockForm.from_canonical(canonical)
        u = propagator(build_spectral_system(form), math.pi / 2)
        assert abs(u.amplitude(1, 2)) == pytest.approx(1.0, abs=1e-10)
        assert fidelity(u, 1, 2) == pytest.approx(1.0, abs=1e-10)
        for j0 in range(2, form.count + 1):
            bound = 2 / form.sigma(j0)
            for r, s in pairs_with_max_block(form, j0):
                assert abs(u.amplitude(r, s)) <= bound + 1e-12

    def test_column_and_json(self):
        u = propagator(build_spectral_system(BlockForm((2, 2))), math.pi / 2)
        column = u.column(1)
        assert abs(column[1]) == pytest.approx(1.0)
        payload = u.to_json()
        assert payload["n"] == 4
        assert len(payload["matrix"]) == 4
        assert len(payload["matrix"][0][0]) == 2

    def test_vertex_range(self):
        u = propagator(build_spectral_system(BlockForm((2, 2))), 1.0)
        with pytest.raises(PreconditionError):
            u.amplitude(0, 1)
        with pytest.raises(PreconditionError):
            u.column(5)


class TestOffDiagonalEntry:
    @pytest.mark.parametrize("canonical", [(2, 2), (2, 6, 4, 4), (3, 1, 2), (2, 1, 3, 2)])
    @pytest.mark.parametrize("t", [0.2, 1.0, math.pi / 2, 4.4])
    def test_every_pair_in_block_has_same_entry(self, canonical, t):
        form = BlockForm.from_canonical(canonical)
        u = propagator(build_spectral_system(form), t)
        for j0 in range(1, form.count + 1):
            if form.sigma(j0) < 2:
                continue
            z = offdiag_entry(form, j0, t)
            for r, s in pairs_with_max_block(form, j0):
                assert u.amplitude(r, s) == pytest.approx(z, abs=1e-12)

    @pytest.mark.slow
    def test_entry_modulus_bounded_for_every_small_form(self):
        times = np.linspace(0.0, 2 * math.pi, 97)
        for form in enumerate_canonical_forms(12):
            series = propagator_series(build_spectral_system(form), times)
            for j0 in range(1, form.count + 1):
                if form.sigma(j0) < 2:
                    continue
                bound = 2 / form.sigma(j0)
                pairs = pairs_with_max_block(form, j0)
                rows = [r - 1 for r, _ in pairs]
                cols = [s - 1 for _, s in pairs]
                assert np.max(np.abs(series[:, rows, cols])) <= bound + 1e-12, (form.blocks, j0)
                for t in times[::8]:
                    assert abs(offdiag_entry(form, j0, float(t))) <= bound + 1e-12, (form.blocks, j0, t)

    def test_pairs_with_max_block(self):
        form = BlockForm((2, 2))
        assert pairs_with_max_block(form, 1) == [(1, 2)]
        assert pairs_with_max_block(form, 2) == [(1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]

    def test_invalid_block(self):
        with pytest.raises(BlockFormError):
            offdiag_entry(BlockForm((1, 1)), 1, 0.0)
        with pytest.raises(BlockFormError):
            offdiag_entry(BlockForm((2, 2)), 3, 0.0)


class TestTelescoping:
    def test_holds_exactly_for_small_forms(self):
        for form in enumerate_canonical_forms(12):
            for j0 in range(1, form.count + 1):
                assert telescoping_holds(form, j0), (str(form), j0)

    def test_value(self):
        form = BlockForm((2, 6, 4, 4))
        assert telescoping_sum(form, 2) == Fraction(1, 8)
        assert telescoping_sum(form, 4) == Fraction(1, 16)
