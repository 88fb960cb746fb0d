"""Spectra of the reflection-differential operators generated by kernels
supported at a single interior point: (Hf)(t) = sum_k (-1)^k h_k f^(k)(t0 - t)
on (0, t0), with vanishing derivatives of order < K at the left endpoint.

Collocation uses Chebyshev-Gauss-Lobatto nodes, which are symmetric about
t0/2, so the argument reflection is an exact node permutation. Boundary
conditions are imposed by projecting onto the constraint null space (basis
recombination), keeping the reduced eigenproblem square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eig as dense_eig
from scipy.linalg import null_space

from .discretization import SpectrumReport
from .errors import (ConvergenceError, DiscretizationError, DomainError,
                     NotApplicableError)

RELATIVE_CLUSTER_TOL = 1e-6
RELATIVE_IMAG_TOL = 1e-6


@dataclass(frozen=True)
class DeltaKernel:
    """Kernel sum_k h_k delta^(k)(. - t0): real weights, h_K != 0, t0 > 0."""

    h_coeffs: np.ndarray
    t0: float

    def __post_init__(self):
        h = np.atleast_1d(np.asarray(self.h_coeffs, dtype=float))
        if h.ndim != 1 or not np.all(np.isfinite(h)):
            raise DomainError("h_coeffs must be a 1-d vector of finite reals")
        nz = np.nonzero(h)[0]
        if nz.size == 0:
            raise DomainError("kernel must have a nonzero top coefficient")
        object.__setattr__(self, "h_coeffs", h[: nz[-1] + 1].copy())
        if not self.t0 > 0.0:
            raise DomainError("singularity location t0 must be positive")

    @property
    def order(self) -> int:
        return self.h_coeffs.size - 1


def chebyshev_lobatto(n: int, t0: float) -> tuple[np.ndarray, np.ndarray]:
    """Ascending Chebyshev-Gauss-Lobatto nodes on [0, t0] and the spectral
    differentiation matrix acting on node values."""
    if n < 2:
        raise DomainError("need at least 2 collocation nodes")
    j = np.arange(n)
    xc = np.cos(math.pi * j / (n - 1))        # descending on [-1, 1]
    c = np.ones(n)
    c[0] = 2.0
    c[-1] = 2.0
    c = c * (-1.0) ** j
    xm = np.tile(xc, (n, 1)).T
    dx = xm - xm.T
    d = np.outer(c, 1.0 / c) / (dx + np.eye(n))
    d = d - np.diag(d.sum(axis=1))
    nodes = t0 * (1.0 - xc) / 2.0             # ascending on [0, t0]
    return nodes, d * (-2.0 / t0)


@dataclass(frozen=True)
class CollocationModel:
    """Collocation data: nodes, derivative powers, exact reflection, and the
    boundary-condition rows with their orthonormal null-space basis."""

    nodes: np.ndarray
    diff_matrices: list                      # [I, D, D^2, ..., D^K]
    reflection: np.ndarray                   # node-reversal permutation matrix
    bc_rows: np.ndarray                      # (K, N) rows f^(k)(0) = 0
    basis: np.ndarray                        # (N, N-K) null-space basis
    meta: dict = field(default_factory=dict)


def _derivative_powers(d: np.ndarray, order: int) -> list:
    """[I, D, D^2, ...] with the negative-sum trick reapplied to every power
    (each derivative annihilates constants exactly), which suppresses the
    rounding growth of repeated matrix products."""
    powers = [np.eye(d.shape[0])]
    for _ in range(order):
        nxt = d @ powers[-1]
        np.fill_diagonal(nxt, 0.0)
        np.fill_diagonal(nxt, -nxt.sum(axis=1))
        powers.append(nxt)
    return powers


def _row_normalized(rows: np.ndarray) -> np.ndarray:
    """Scale each constraint row to unit norm (row scaling preserves the row
    space but makes rank detection and null-space extraction well posed when
    derivative orders mix)."""
    norms = np.linalg.norm(rows, axis=1, keepdims=True)
    return rows / np.where(norms > 0.0, norms, 1.0)


def build_reflection_operator(kernel: DeltaKernel, n: int
                              ) -> tuple[CollocationModel, np.ndarray]:
    """Collocation matrix of sum_k (-1)^k h_k R D^k with the K left-endpoint
    conditions imposed by null-space projection; returns the reduced matrix.

    R D^k evaluates the k-th derivative at the reflected nodes; the node set
    is symmetric about t0/2, so R is the exact flip permutation.
    """
    k_ord = kernel.order
    if n < 4 * k_ord + 8:
        raise DomainError(f"N={n} too small: need N >= 4K+8 = {4 * k_ord + 8}")
    nodes, d = chebyshev_lobatto(n, kernel.t0)
    powers = _derivative_powers(d, k_ord)
    refl = np.eye(n)[::-1]
    m = np.zeros((n, n))
    for k, hk in enumerate(kernel.h_coeffs):
        if hk != 0.0:
            m += (-1.0) ** k * hk * (refl @ powers[k])
    bc_rows = np.array([powers[k][0, :] for k in range(k_ord)]) \
        if k_ord > 0 else np.empty((0, n))
    if k_ord > 0:
        scaled = _row_normalized(bc_rows)
        if np.linalg.matrix_rank(scaled) < k_ord:
            raise DiscretizationError("boundary-condition rows are rank deficient")
        basis = null_space(scaled)
    else:
        basis = np.eye(n)
    model = CollocationModel(nodes=nodes, diff_matrices=powers, reflection=refl,
                             bc_rows=bc_rows, basis=basis,
                             meta={"t0": kernel.t0, "N": n, "K": k_ord})
    reduced = basis.T @ m @ basis
    return model, reduced


def exact_delta_prime_eigs(t0: float, n: int) -> tuple[float, float]:
    """Closed-form n-th eigenvalue pair for the unit first-derivative kernel:
    lambda_n^+ = 2 pi (n - 1/4)/t0, lambda_n^- = -2 pi (n - 3/4)/t0."""
    if n < 1:
        raise DomainError("mode index n must be >= 1")
    if not t0 > 0.0:
        raise DomainError("t0 must be positive")
    return 2.0 * math.pi / t0 * (n - 0.25), -2.0 * math.pi / t0 * (n - 0.75)


def weyl_prediction(kernel: DeltaKernel, n: int) -> tuple[float, float]:
    """Leading eigenvalue growth +-|h_K| (2 pi n / t0)^K for K >= 1."""
    if kernel.order == 0:
        raise NotApplicableError(
            "order-0 kernels have the two-point spectrum {+h0, -h0}")
    if n < 1:
        raise DomainError("mode index n must be >= 1")
    lam = abs(kernel.h_coeffs[-1]) * (2.0 * math.pi * n / kernel.t0) ** kernel.order
    return lam, -lam


def _cluster_sizes(values: np.ndarray, rel_tol: float) -> list[int]:
    sizes: list[int] = []
    last = None
    for v in values:
        if last is not None and abs(v - last) <= rel_tol * max(abs(v), abs(last)):
            sizes[-1] += 1
        else:
            sizes.append(1)
        last = v
    return sizes


def delta_spectrum(kernel: DeltaKernel, n: int, n_max: int) -> SpectrumReport:
    """Collocation spectrum of the reflection operator, restricted to the
    trusted modes (the first n_max of each sign, n_max <= N/4).

    The reduced matrix is non-normal even though the operator is self-adjoint;
    trusted eigenvalues must be real to relative 1e-6 or the solve is reported
    as a convergence failure. Near-coincident trusted eigenvalues are grouped
    into multiplicity clusters and checked against the order bound.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    if n_max > n // 4:
        raise DomainError(f"n_max={n_max} outside the trust region N/4 = {n // 4}")
    model, reduced = build_reflection_operator(kernel, n)
    w, vecs = dense_eig(reduced)

    order_pos = np.argsort(np.where(w.real > 0.0, w.real, np.inf))[:n_max]
    order_neg = np.argsort(np.where(w.real < 0.0, -w.real, np.inf))[:n_max]
    trusted = np.concatenate([order_neg[::-1], order_pos])
    lam = w[trusted]
    bad = np.abs(lam.imag) > RELATIVE_IMAG_TOL * np.maximum(np.abs(lam), 1e-300)
    if np.any(bad):
        worst = lam[np.argmax(np.abs(lam.imag))]
        raise ConvergenceError(
            f"trusted mode has complex part beyond tolerance: {worst}")

    cols = vecs[:, trusted]
    cols = cols / np.linalg.norm(cols, axis=0)
    residuals = np.linalg.norm(reduced @ cols - cols * lam[None, :], axis=0).real

    lam_real = lam.real
    sort = np.argsort(lam_real)
    lam_sorted = lam_real[sort]
    res_sorted = residuals[sort]

    pos = lam_real[lam_real > 0.0]
    neg = lam_real[lam_real < 0.0]
    extras = {
        "lambda_plus": np.sort(pos),
        "lambda_minus": -np.sort(-neg),  # descending toward -infinity
        "n_max": n_max,
    }
    if kernel.order >= 1:
        sizes = _cluster_sizes(np.sort(pos), RELATIVE_CLUSTER_TOL) \
            + _cluster_sizes(np.sort(np.abs(neg)), RELATIVE_CLUSTER_TOL)
        extras["cluster_sizes"] = sizes
        extras["multiplicity_bound_ok"] = bool(all(s <= kernel.order for s in sizes))
    return SpectrumReport(eigenvalues=lam_sorted, residuals=res_sorted,
                          grid_meta={"t0": kernel.t0, "N": n, "K": kernel.order},
                          extras=extras)


def h_squared_spectrum(kernel: DeltaKernel, n: int) -> np.ndarray:
    """Eigenvalues of the squared operator: the order-2K differential operator
    sum_{k,l} (-1)^k h_k h_l D^{k+l} with the K left conditions plus the
    adjoint-side right conditions sum_l (-1)^l h_l f^(k+l)(t0) = 0.

    The square root of this spectrum cross-validates the reflection route
    (eigenvalue magnitudes must agree; signs come from the reflection solve).
    """
    k_ord = kernel.order
    if k_ord < 1:
        raise NotApplicableError("squared-operator route needs K >= 1")
    if n < 4 * k_ord + 8:
        raise DomainError(f"N={n} too small: need N >= 4K+8 = {4 * k_ord + 8}")
    nodes, d = chebyshev_lobatto(n, kernel.t0)
    powers = _derivative_powers(d, 2 * k_ord)
    m = np.zeros((n, n))
    for k, hk in enumerate(kernel.h_coeffs):
        for l, hl in enumerate(kernel.h_coeffs):
            if hk != 0.0 and hl != 0.0:
                m += (-1.0) ** k * hk * hl * powers[k + l]
    rows = [powers[k][0, :] for k in range(k_ord)]
    for k in range(k_ord):
        row = np.zeros(n)
        for l, hl in enumerate(kernel.h_coeffs):
            if hl != 0.0:
                row += (-1.0) ** l * hl * powers[k + l][-1, :]
        rows.append(row)
    bc = _row_normalized(np.array(rows))
    if np.linalg.matrix_rank(bc) < 2 * k_ord:
        raise DiscretizationError("squared-operator boundary rows rank deficient")
    basis = null_space(bc)
    w = dense_eig(basis.T @ m @ basis, right=False)
    keep = np.abs(w.imag) <= 1e-6 * np.maximum(np.abs(w), 1e-300)
    return np.sort(w.real[keep & (w.real > 0.0)])
