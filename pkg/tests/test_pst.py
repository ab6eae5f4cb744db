from __future__ import annotations

import math

import pytest

from threshold_pst.errors import BlockFormError, PreconditionError
from threshold_pst.services.pst import (
    PST_TIMES,
    PstCertificate,
    UnitModulusHit,
    as_block_form,
    certificate_agrees,
    max_offdiag_modulus,
    offdiag_upper_bound,
    pst_certificate,
    scan_unit_modulus,
    time_grid,
    verify_certificate,
)
from threshold_pst.threshold import BlockForm, enumerate_canonical_forms


class TestCertificate:
    @pytest.mark.parametrize(
        "canonical",
        [(2,), (2, 2), (2, 6), (2, 10), (2, 6, 4, 4), (2, 2, 4), (2, 2, 4, 8)],
    )
    def test_pst_forms(self, canonical):
        certificate = pst_certificate(canonical)
        assert certificate.has_pst
        assert certificate.pair == (1, 2)
        assert certificate.times == PST_TIMES
        assert certificate.violated_conditions == ()

    @pytest.mark.parametrize(
        ("canonical", "violations"),
        [
            ((3,), ("m1≠2",)),
            ((2, 4), ("m2 mod 4 ≠ 2",)),
            ((2, 2, 2), ("m_j mod 4 ≠ 0 at j=3",)),
            ((4, 4, 6), ("m1≠2", "m2 mod 4 ≠ 2", "m_j mod 4 ≠ 0 at j=3")),
            ((2, 6, 4, 2), ("m_j mod 4 ≠ 0 at j=4",)),
        ],
    )
    def test_violations(self, canonical, violations):
        certificate = pst_certificate(canonical)
        assert not certificate.has_pst
        assert certificate.pair is None
        assert certificate.times == ()
        assert certificate.violated_conditions == violations

    def test_accepts_internal_form(self):
        assert pst_certificate(BlockForm((1, 1, 2, 4))).has_pst

    def test_rejects_non_canonical_sequence(self):
        with pytest.raises(BlockFormError):
            pst_certificate([1, 3])

    def test_json(self):
        payload = pst_certificate((2, 6)).to_json()
        assert payload["has_pst"] is True
        assert payload["pair"] == [1, 2]
        assert payload["times"] == pytest.approx([math.pi / 2, 3 * math.pi / 2])

    def test_as_block_form_passthrough(self):
        form = BlockForm((2, 2))
        assert as_block_form(form) is form


class TestScan:
    def test_time_grid(self):
        grid = time_grid(1e-3)
        assert grid[0] == 0.0
        assert grid[-1] <= 2 * math.pi
        assert 2 * math.pi - grid[-1] < 1e-3
        with pytest.raises(PreconditionError):
            time_grid(0.0)

    def test_hits_only_at_transfer_times(self):
        hits = scan_unit_modulus((2, 2))
        assert hits
        assert {(h.i, h.j) for h in hits} == {(1, 2)}
        for h in hits:
            assert min(abs(h.t - target) for target in PST_TIMES) < 2e-3
            assert h.modulus >= 1 - 1e-6

    def test_no_hits_without_transfer(self):
        assert scan_unit_modulus((2, 4)) == []

    def test_invalid_tolerance(self):
        with pytest.raises(PreconditionError):
            scan_unit_modulus((2, 2), tol=1.0)

    def test_agreement_rules(self):
        yes = pst_certificate((2, 2))
        no = pst_certificate((2, 4))
        good = [UnitModulusHit(t=math.pi / 2, i=1, j=2, modulus=1.0)]
        stray = [UnitModulusHit(t=math.pi / 2, i=1, j=3, modulus=1.0)]
        assert certificate_agrees(yes, good)
        assert not certificate_agrees(yes, [])
        assert not certificate_agrees(yes, stray)
        assert certificate_agrees(no, [])
        assert not certificate_agrees(no, good)

    @pytest.mark.slow
    def test_certificate_matches_scan_for_every_small_form(self):
        disagreements = [str(f) for f in enumerate_canonical_forms(12) if not verify_certificate(f)]
        assert disagreements == []


class TestModuli:
    def test_upper_bound(self):
        assert offdiag_upper_bound((2, 6, 4, 4), 3) == pytest.approx(2 / 12)
        with pytest.raises(BlockFormError):
            offdiag_upper_bound((2, 6), 3)

    def test_max_offdiag_modulus(self):
        assert max_offdiag_modulus((2, 2), math.pi / 2) == pytest.approx(1.0, abs=1e-10)
        assert max_offdiag_modulus((2, 4), math.pi / 2) == pytest.approx(2 / 3, abs=1e-10)

    def test_certificate_type(self):
        assert isinstance(pst_certificate((2, 2)), PstCertificate)
