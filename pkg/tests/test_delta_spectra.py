"""Reflection-differential spectra: closed forms for the first-derivative
kernel, the squared-operator cross-route, growth asymptotics, and the exact
algebra relating them. The clamped-free beam roots (cos b cosh b = -1) serve
as an independent oracle for the second-derivative kernel."""

import math

import numpy as np
import pytest
from scipy.optimize import brentq

from hankelscope.delta_spectra import (DeltaKernel, build_reflection_operator,
                                       chebyshev_lobatto, delta_spectrum,
                                       exact_delta_prime_eigs,
                                       h_squared_spectrum, weyl_prediction)
from hankelscope.errors import DomainError, NotApplicableError

BEAM_BETA_SQ = [3.5160152685001512, 22.034491564666770, 61.697214413549102,
                120.90191605230572, 199.85953011680345, 298.55553096773009]


def beam_roots(count):
    """Roots of cos(b) cosh(b) = -1, computed fresh as the oracle."""
    roots = []
    f = lambda b: math.cos(b) * math.cosh(b) + 1.0
    for m in range(1, count + 1):
        lo, hi = (m - 1) * math.pi + 1e-3, m * math.pi
        roots.append(brentq(f, lo, hi, xtol=1e-13))
    return roots


class TestNodesAndModel:
    def test_nodes_symmetric_about_midpoint(self):
        nodes, _ = chebyshev_lobatto(33, 2.0)
        np.testing.assert_allclose(nodes + nodes[::-1], 2.0, atol=1e-14)

    def test_differentiation_exact_on_polynomials(self):
        nodes, d = chebyshev_lobatto(16, 1.5)
        np.testing.assert_allclose(d @ nodes**3, 3.0 * nodes**2, atol=1e-10)

    def test_reflection_squares_to_identity(self):
        kernel = DeltaKernel([0.0, 1.0], 1.0)
        model, _ = build_reflection_operator(kernel, 32)
        np.testing.assert_array_equal(model.reflection @ model.reflection,
                                      np.eye(32))

    def test_bc_rows_full_rank(self):
        kernel = DeltaKernel([0.0, 0.0, 1.0], 1.0)
        model, _ = build_reflection_operator(kernel, 32)
        assert model.bc_rows.shape == (2, 32)
        assert np.linalg.matrix_rank(model.bc_rows) == 2

    def test_minimum_resolution_enforced(self):
        with pytest.raises(DomainError):
            build_reflection_operator(DeltaKernel([0.0, 0.0, 1.0], 1.0), 10)


class TestKernelType:
    def test_trailing_zeros_trimmed(self):
        k = DeltaKernel([1.0, 2.0, 0.0], 1.0)
        assert k.order == 1

    def test_zero_kernel_rejected(self):
        with pytest.raises(DomainError):
            DeltaKernel([0.0], 1.0)

    def test_negative_location_rejected(self):
        with pytest.raises(DomainError):
            DeltaKernel([1.0], -2.0)


class TestOrderZero:
    def test_exact_two_point_spectrum(self):
        # the operator is h0 times the reflection permutation
        h0 = 2.5
        rep = delta_spectrum(DeltaKernel([h0], 1.0), 32, 8)
        vals = np.unique(np.round(rep.eigenvalues, 10))
        np.testing.assert_array_equal(vals, [-h0, h0])
        assert rep.residuals.max() < 1e-12


class TestExactFirstDerivativeKernel:
    def test_formula_values(self):
        assert exact_delta_prime_eigs(1.0, 1) == (1.5 * math.pi, -0.5 * math.pi)
        lp, lm = exact_delta_prime_eigs(2.0, 1)
        assert abs(lp - 0.75 * math.pi) < 1e-15 and abs(lm + 0.25 * math.pi) < 1e-15
        lp, lm = exact_delta_prime_eigs(1.0, 10)
        assert abs(lp - 19.5 * math.pi) < 1e-12 and abs(lm + 18.5 * math.pi) < 1e-12

    def test_invalid_index(self):
        with pytest.raises(DomainError):
            exact_delta_prime_eigs(1.0, 0)

    def test_collocation_reproduces_closed_form(self):
        rep = delta_spectrum(DeltaKernel([0.0, 1.0], 1.0), 64, 10)
        lp, lm = rep.extras["lambda_plus"], rep.extras["lambda_minus"]
        for i in range(10):
            ep, em = exact_delta_prime_eigs(1.0, i + 1)
            assert abs(lp[i] - ep) < 1e-10
            assert abs(lm[i] - em) < 1e-10

    def test_smallest_magnitude_bounded_away_from_zero(self):
        rep = delta_spectrum(DeltaKernel([0.0, 1.0], 1.0), 64, 10)
        assert abs(np.abs(rep.eigenvalues).min() - math.pi / 2.0) < 1e-10

    def test_spectral_convergence_between_resolutions(self):
        for n in (48, 64):
            r1 = delta_spectrum(DeltaKernel([0.0, 1.0], 1.0), n, n // 8)
            r2 = delta_spectrum(DeltaKernel([0.0, 1.0], 1.0), 2 * n, n // 8)
            k = n // 8
            assert np.abs(r1.extras["lambda_plus"][:k]
                          - r2.extras["lambda_plus"][:k]).max() < 1e-10
            assert np.abs(r1.extras["lambda_minus"][:k]
                          - r2.extras["lambda_minus"][:k]).max() < 1e-10


class TestWeylPrediction:
    def test_first_order(self):
        lp, lm = weyl_prediction(DeltaKernel([0.0, 1.0], 1.0), 5)
        assert abs(lp - 10.0 * math.pi) < 1e-12 and lm == -lp

    def test_second_order(self):
        lp, _ = weyl_prediction(DeltaKernel([0.0, 0.0, 1.0], 1.0), 3)
        assert abs(lp - 36.0 * math.pi**2) < 1e-10

    def test_order_zero_not_applicable(self):
        with pytest.raises(NotApplicableError):
            weyl_prediction(DeltaKernel([1.0], 1.0), 1)

    def test_deviation_from_exact_is_quarter_over_n(self):
        # plus branch: |exact - weyl| / weyl = 1/(4n) exactly;
        # minus branch: 3/(4n) exactly
        kernel = DeltaKernel([0.0, 1.0], 1.0)
        for n in (1, 2, 5, 10, 50):
            wp, wm = weyl_prediction(kernel, n)
            ep, em = exact_delta_prime_eigs(1.0, n)
            assert abs(abs(ep - wp) / wp - 1.0 / (4 * n)) < 1e-12
            assert abs(abs(em - wm) / abs(wm) - 3.0 / (4 * n)) < 1e-12


class TestSecondDerivativeKernel:
    def test_magnitudes_match_beam_oracle(self):
        # |lambda| sorted are the squares of the clamped-free beam roots
        rep = delta_spectrum(DeltaKernel([0.0, 0.0, 1.0], 1.0), 96, 8)
        mags = np.sort(np.abs(rep.eigenvalues))
        betas = beam_roots(8)
        np.testing.assert_allclose(BEAM_BETA_SQ, [b * b for b in betas[:6]],
                                   rtol=1e-12)
        for i in range(8):
            assert abs(mags[i] - betas[i] ** 2) < 1e-6 * betas[i] ** 2

    def test_sign_alternation(self):
        # odd beam modes carry the positive branch, even modes the negative
        rep = delta_spectrum(DeltaKernel([0.0, 0.0, 1.0], 1.0), 96, 8)
        lp = rep.extras["lambda_plus"]
        lm = rep.extras["lambda_minus"]
        betas = beam_roots(6)
        assert abs(lp[0] - betas[0] ** 2) < 1e-6 * betas[0] ** 2
        assert abs(lm[0] + betas[1] ** 2) < 1e-6 * betas[1] ** 2

    def test_quarter_shift_asymptotics(self):
        # positive branch tracks (2 pi (n - 3/4)/t0)^2 exponentially closely
        rep = delta_spectrum(DeltaKernel([0.0, 0.0, 1.0], 1.0), 256, 20)
        lp = rep.extras["lambda_plus"]
        for n in (10, 15, 20):
            shifted = (2.0 * math.pi * (n - 0.75)) ** 2
            assert abs(lp[n - 1] - shifted) < 1e-8 * shifted

    def test_growth_ratio_deviation_constant(self):
        # |ratio - 1| <= C/n with C = 3/2 from the quarter shift; estimate and
        # bound the constant over the trusted tail
        kernel = DeltaKernel([0.0, 0.0, 1.0], 1.0)
        rep = delta_spectrum(kernel, 256, 20)
        lp = rep.extras["lambda_plus"]
        c_estimates = []
        for n in range(10, 21):
            wp, _ = weyl_prediction(kernel, n)
            c_estimates.append(n * abs(lp[n - 1] / wp - 1.0))
        c_est = max(c_estimates)
        assert c_est < 1.6, f"deviation constant estimate {c_est:.3f}"


class TestSquaredOperatorRoute:
    def test_first_order_route_agreement(self):
        kernel = DeltaKernel([0.0, 1.0], 1.0)
        rep = delta_spectrum(kernel, 64, 8)
        lam = np.sort(np.abs(rep.eigenvalues))
        mu = h_squared_spectrum(kernel, 64)
        k = min(10, lam.size, mu.size)
        rel = np.abs(np.sort(lam**2)[:k] - mu[:k]) / mu[:k]
        assert rel.max() < 1e-10

    def test_second_order_route_agreement(self):
        kernel = DeltaKernel([0.0, 0.0, 1.0], 1.0)
        rep = delta_spectrum(kernel, 48, 8)
        lam = np.sort(np.abs(rep.eigenvalues))
        mu = h_squared_spectrum(kernel, 48)
        k = min(8, lam.size, mu.size)
        rel = np.abs(np.sort(lam**2)[:k] - mu[:k]) / mu[:k]
        assert rel.max() < 1e-6

    def test_mixed_coefficients_route_agreement(self):
        kernel = DeltaKernel([0.5, 1.0], 1.0)
        rep = delta_spectrum(kernel, 64, 8)
        lam = np.sort(np.abs(rep.eigenvalues))
        mu = h_squared_spectrum(kernel, 64)
        k = min(8, lam.size, mu.size)
        rel = np.abs(np.sort(lam**2)[:k] - mu[:k]) / mu[:k]
        assert rel.max() < 1e-8

    def test_not_applicable_for_order_zero(self):
        with pytest.raises(NotApplicableError):
            h_squared_spectrum(DeltaKernel([1.0], 1.0), 32)


class TestReportContract:
    def test_scaling_linearity(self):
        r1 = delta_spectrum(DeltaKernel([0.0, 1.0], 1.0), 64, 8)
        r3 = delta_spectrum(DeltaKernel([0.0, 3.0], 1.0), 64, 8)
        np.testing.assert_allclose(r3.eigenvalues, 3.0 * r1.eigenvalues,
                                   rtol=0, atol=1e-11)

    def test_trust_region_enforced(self):
        with pytest.raises(DomainError):
            delta_spectrum(DeltaKernel([0.0, 1.0], 1.0), 64, 17)

    def test_residual_bound(self):
        rep = delta_spectrum(DeltaKernel([0.0, 0.0, 1.0], 1.0), 256, 20)
        assert rep.residuals.max() <= 1e-8 * np.abs(rep.eigenvalues).max()

    def test_multiplicity_clusters_reported(self):
        rep = delta_spectrum(DeltaKernel([0.0, 1.0], 1.0), 64, 10)
        assert rep.extras["multiplicity_bound_ok"]
        assert all(s == 1 for s in rep.extras["cluster_sizes"])

    def test_eigenvalues_sorted_with_aligned_residuals(self):
        rep = delta_spectrum(DeltaKernel([0.0, 0.0, 1.0], 1.0), 96, 8)
        assert np.all(np.diff(rep.eigenvalues) > 0)
        assert rep.eigenvalues.size == rep.residuals.size == 16
