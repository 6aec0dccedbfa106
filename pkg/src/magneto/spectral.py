"""Magnetic Laplacian, Hermitian eigendecomposition and heat-kernel checks.

The complex Hermitian eigenproblem is solved through the real symmetric 2N
embedding [[A, -B], [B, A]] of H = A + iB, whose spectrum is that of H with
every eigenvalue doubled. Eigenvalue pairs are collapsed structurally and the
complex eigenvectors reassembled from the real/imaginary halves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import MagnetoError
from .graph import MagneticGraph


@dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-12
    pairing: float = 1e-9
    residual: float = 1e-9
    pointwise: float = 1e-10
    entrywise: float = 1e-12
    semigroup: float = 1e-9
    heat_eq_step: float = 1e-5
    heat_eq_rel: float = 1e-6


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class SpectralData:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # orthonormal columns
    residual: float


@dataclass(frozen=True)
class HeatKernel:
    t: float
    matrix: np.ndarray


def magnetic_laplacian(g: MagneticGraph, signed: bool = True) -> np.ndarray:
    """Normalized magnetic Laplacian D_mu^{-1/2} (D - A^s) D_mu^{-1/2}.

    ``signed=False`` replaces the signature by 1 (the unsigned comparison
    operator used in the Kato and domination inequalities).
    """
    n = g.n
    lap = np.zeros((n, n), dtype=complex)
    np.fill_diagonal(lap, g.degrees() / g.mu)
    s = g.signature_values() if signed else np.ones(g.m)
    scale = np.sqrt(g.mu)
    for idx in range(g.m):
        u, v = int(g.eu[idx]), int(g.ev[idx])
        off = -g.ew[idx] * s[idx] / (scale[u] * scale[v])
        lap[u, v] += off
        lap[v, u] += np.conj(off)
    return lap


def eigendecomposition(h: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> SpectralData:
    """Full spectrum of a Hermitian matrix via the 2N real symmetric embedding."""
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    scale = max(1.0, float(np.abs(h).max(initial=0.0)))
    if float(np.abs(h - h.conj().T).max(initial=0.0)) > tol.hermitian * scale:
        raise MagnetoError("NOT_HERMITIAN", "matrix is not Hermitian within tolerance")
    a, b = h.real, h.imag
    big = np.block([[a, -b], [b, a]])
    w, u = np.linalg.eigh(big)
    gap_tol = tol.pairing * scale
    if np.any(np.abs(w[1::2] - w[0::2]) > gap_tol):
        raise MagnetoError("PAIRING_FAILURE", "doubled eigenvalues do not pair up")
    lam = 0.5 * (w[0::2] + w[1::2])
    vecs = np.zeros((n, n), dtype=complex)
    i = 0
    while i < n:
        j = i + 1
        while j < n and lam[j] - lam[j - 1] <= gap_tol:
            j += 1
        cols = u[:, 2 * i : 2 * j]  # 2(j-i) real eigenvectors of the cluster
        cand = cols[:n, :] + 1j * cols[n:, :]
        q, r, _ = scipy.linalg.qr(cand, mode="economic", pivoting=True)
        vecs[:, i:j] = q[:, : j - i]
        i = j
    residual = float(np.abs(h @ vecs - vecs * lam[None, :]).max(initial=0.0))
    return SpectralData(lam, vecs, residual)


def spectral_data(g: MagneticGraph, signed: bool = True, tol: Tolerances = DEFAULT_TOL) -> SpectralData:
    return eigendecomposition(magnetic_laplacian(g, signed=signed), tol)


def heat_kernel(g: MagneticGraph, t: float, signed: bool = True,
                tol: Tolerances = DEFAULT_TOL) -> HeatKernel:
    """K_t = sum_j e^{-lambda_j t} P_j, computed from the full spectrum."""
    if t < 0:
        raise MagnetoError("NEGATIVE_TIME", f"t must be >= 0, got {t}")
    sd = spectral_data(g, signed=signed, tol=tol)
    k = (sd.eigenvectors * np.exp(-sd.eigenvalues * t)[None, :]) @ sd.eigenvectors.conj().T
    return HeatKernel(t, 0.5 * (k + k.conj().T))


def heat_kernel_properties_check(g: MagneticGraph, t: float, a: float,
                                 tol: Tolerances = DEFAULT_TOL) -> dict:
    """Verify the basic heat-kernel identities at one (t, a) pair."""
    if not 0 <= a <= t:
        raise MagnetoError("NEGATIVE_TIME", "need 0 <= a <= t")
    k_t = heat_kernel(g, t, tol=tol).matrix
    k_a = heat_kernel(g, a, tol=tol).matrix
    k_rest = heat_kernel(g, t - a, tol=tol).matrix
    scale = max(1.0, float(np.abs(k_t).max()))
    report = {}
    report["hermitian"] = float(np.abs(k_t - k_t.conj().T).max()) <= tol.semigroup
    report["semigroup"] = float(np.abs(k_a @ k_rest - k_t).max()) <= tol.semigroup * scale
    delta = np.zeros(g.n, dtype=complex)
    if g.n:
        delta[0] = 1.0
    report["delta_action"] = bool(np.allclose(k_t @ delta, k_t[:, 0], atol=tol.semigroup))
    lap = magnetic_laplacian(g)
    if t >= tol.heat_eq_step:
        k_plus = heat_kernel(g, t + tol.heat_eq_step, tol=tol).matrix
        k_minus = heat_kernel(g, t - tol.heat_eq_step, tol=tol).matrix
        deriv = (k_plus - k_minus) / (2.0 * tol.heat_eq_step)
        rhs = -lap @ k_t
        denom = max(float(np.abs(rhs).max()), 1.0)
        report["heat_equation"] = float(np.abs(deriv - rhs).max()) <= tol.heat_eq_rel * denom
    else:
        report["heat_equation"] = True  # step larger than t; skipped
    k_plain = heat_kernel(g, t, signed=False, tol=tol).matrix
    sqrt_mu = np.sqrt(g.mu)
    report["unsigned_positive"] = float(k_plain.real.min(initial=0.0)) >= -tol.entrywise and \
        float(np.abs(k_plain.imag).max(initial=0.0)) <= tol.entrywise
    report["fixes_sqrt_mu"] = bool(np.allclose(k_plain @ sqrt_mu, sqrt_mu, atol=tol.semigroup))
    report["ok"] = all(v for key, v in report.items() if key != "ok")
    return report


def positivity_check(g: MagneticGraph, lam: float, f,
                     tol: Tolerances = DEFAULT_TOL) -> bool:
    """Resolvent positivity: (Delta + lam)^{-1} f >= 0 for real f >= 0."""
    if lam <= 0:
        raise MagnetoError("BAD_LAMBDA", "lambda must be positive")
    f = np.asarray(f, dtype=float)
    if np.any(f < 0):
        raise MagnetoError("BAD_INPUT", "positivity check needs f >= 0")
    sd = spectral_data(g, signed=False, tol=tol)
    coeffs = sd.eigenvectors.conj().T @ f
    sol = sd.eigenvectors @ (coeffs / (sd.eigenvalues + lam))
    return bool(np.min(sol.real, initial=0.0) >= -tol.pointwise)


def kato_check(g: MagneticGraph, f, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Pointwise |f| Delta|f| <= Re(Delta_sigma f conj(f))."""
    f = np.asarray(f, dtype=complex)
    lap_u = magnetic_laplacian(g, signed=False)
    lap_s = magnetic_laplacian(g, signed=True)
    lhs = np.abs(f) * (lap_u @ np.abs(f)).real
    rhs = ((lap_s @ f) * np.conj(f)).real
    return bool(np.all(lhs <= rhs + tol.pointwise))


def domination_check(g: MagneticGraph, t: float, f,
                     tol: Tolerances = DEFAULT_TOL) -> bool:
    """|e^{-t Delta_sigma} f| <= e^{-t Delta} |f| and |K^s_t| <= K_t entrywise."""
    f = np.asarray(f, dtype=complex)
    k_signed = heat_kernel(g, t, signed=True, tol=tol).matrix
    k_plain = heat_kernel(g, t, signed=False, tol=tol).matrix
    vec_ok = np.all(np.abs(k_signed @ f) <= (k_plain @ np.abs(f)).real + tol.pointwise)
    ent_ok = np.all(np.abs(k_signed) <= k_plain.real + tol.pointwise)
    return bool(vec_ok and ent_ok)


def trace_bound_constant(delta: float, c_delta: float, d_mu: float) -> float:
    """C_delta = (72 delta d_mu)^{delta/2} c_delta^{-delta} ((delta-1)/(delta-2))^delta."""
    if delta <= 2:
        raise MagnetoError("BAD_DELTA", "trace bound requires delta > 2")
    if c_delta <= 0:
        raise MagnetoError("ZERO_CONSTANT", "c_delta must be positive (unbalanced graph)")
    return (72.0 * delta * d_mu) ** (delta / 2.0) / c_delta**delta * \
        ((delta - 1.0) / (delta - 2.0)) ** delta


def trace_bound_check(g: MagneticGraph, delta: float, c_delta: float, t_grid,
                      tol: Tolerances = DEFAULT_TOL) -> dict:
    """Heat-trace bound sum_j e^{-lambda_j t} <= C_delta vol / t^{delta/2},
    plus the per-vertex diagonal bound K_t(u,u) <= C_delta mu(u) / t^{delta/2}."""
    c_big = trace_bound_constant(delta, c_delta, g.max_mu_degree())
    vol = g.volume(g.full_mask())
    sd = spectral_data(g, tol=tol)
    entries = []
    ok = True
    for t in t_grid:
        if t <= 0:
            raise MagnetoError("BAD_DELTA", "t grid must be positive")
        lhs = float(np.sum(np.exp(-sd.eigenvalues * t)))
        rhs = c_big * vol / t ** (delta / 2.0)
        diag = np.real(np.diag(heat_kernel(g, t, tol=tol).matrix))
        diag_ok = bool(np.all(diag <= c_big * g.mu / t ** (delta / 2.0) + tol.pointwise))
        good = lhs <= rhs + tol.pointwise and diag_ok
        ok = ok and good
        entries.append({"t": float(t), "trace": lhs, "bound": rhs, "ok": good})
    return {"ok": ok, "constant": c_big, "entries": entries}


def eigenvalue_lower_bound_check(g: MagneticGraph, delta: float, c_delta: float,
                                 k_index: int, tol: Tolerances = DEFAULT_TOL) -> dict:
    """lambda_k >= (delta / 2e) (k / (C_delta vol))^{2/delta}."""
    c_big = trace_bound_constant(delta, c_delta, g.max_mu_degree())
    sd = spectral_data(g, tol=tol)
    if not 1 <= k_index <= g.n:
        raise MagnetoError("BAD_INDEX", f"k must lie in 1..{g.n}")
    vol = g.volume(g.full_mask())
    bound = (delta / (2.0 * math.e)) * (k_index / (c_big * vol)) ** (2.0 / delta)
    lam_k = float(sd.eigenvalues[k_index - 1])
    return {"ok": lam_k >= bound - tol.pointwise, "lambda_k": lam_k, "bound": bound}
