"""Matrix elements of phase-space translations in the Hermite eigenbasis.

Three independent routes are provided for <U_a phi_k, phi_k'>:

* `u_element`     -- closed form: Laguerre polynomial times a log-space
                     factorial prefactor and an explicit phase.
* `u_element_oracle` -- the defining inner-product integral by high-order
                     Gauss-Hermite quadrature (the test oracle).
* `u_element_bessel` -- partial sums of the Bessel-series expansion.

`v_matrix`/`build_matrix` assemble the dense truncated matrix of V and
of H+V.  The closed-form route is evaluated through a prefactored
Laguerre recurrence whose iterates are exactly the (signed) element
magnitudes, so every intermediate stays bounded by 1 and basis sizes of
10^4 never overflow.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, roots_hermite

from .model import PhasePoint, Potential, rho as rho_of

__all__ = [
    "MatrixElementTable",
    "u_element",
    "u_element_oracle",
    "u_element_bessel",
    "v_element",
    "v_matrix",
    "build_matrix",
    "window_sup",
]

MAX_BASIS = 20_000
ORACLE_INDEX_MAX = 300


def _omega(a: PhasePoint, alpha: float) -> complex:
    """The complex parameter carrying the phase of the closed form."""
    sa = math.sqrt(alpha)
    return complex(0.5 * sa * a.a_xi, -0.5 * a.a_x / sa)


def _magnitude(k: int, m: int, rho: float) -> float:
    """Signed magnitude sqrt(k!/k'!) (sqrt2 rho)^m e^{-rho^2} L_k^{(m)}(2 rho^2).

    Recurrence on the prefactored quantity itself; bounded by 1 throughout.
    """
    x = 2.0 * rho * rho
    g = math.exp(m * math.log(math.sqrt(2.0) * rho) - rho * rho
                 - 0.5 * math.lgamma(m + 1))
    if k == 0:
        return g
    prev = 0.0
    for j in range(k):
        prev, g = g, (
            (2 * j + 1 + m - x) * g - math.sqrt(j * (j + m)) * prev
        ) / math.sqrt((j + 1) * (j + 1 + m))
    return g


def u_element(a: PhasePoint, alpha: float, k: int, k_prime: int) -> complex:
    """Closed-form matrix element <U_a phi_k, phi_k'>."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if k < 0 or k_prime < 0:
        raise ValueError("indices must be nonnegative")
    if k > k_prime:
        # U_a^* = U_{-a}
        return u_element(-a, alpha, k_prime, k).conjugate()
    w = _omega(a, alpha)
    r = abs(w)
    if r == 0.0:
        return 1.0 + 0.0j if k == k_prime else 0.0j
    m = k_prime - k
    mag = _magnitude(k, m, r)
    if not math.isfinite(mag):
        raise OverflowError(
            f"matrix-element magnitude not finite at k={k}, k'={k_prime}"
        )
    theta = cmath.phase(-w)
    return cmath.exp(1j * m * theta) * mag


@lru_cache(maxsize=64)
def _gh_rule(n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Hermite nodes with weight-free ('total') weights.

    The usual weights w_i carry e^{-u_i^2} and underflow at high order;
    w_i e^{u_i^2} = 1/(n psi_{n-1}(u_i)^2) with psi the normalized Hermite
    function, which the bounded recurrence evaluates directly.
    """
    u, _ = roots_hermite(n_nodes)
    # psi_{n-1}(u) at extreme nodes passes through the classically
    # forbidden region where it underflows; carry value * e^scale instead.
    psi_prev = np.zeros_like(u)
    psi = np.full_like(u, math.pi ** -0.25)
    scale = -0.5 * u * u
    for n in range(n_nodes - 1):
        psi_prev, psi = psi, (
            u * math.sqrt(2.0 / (n + 1)) * psi
            - math.sqrt(n / (n + 1.0)) * psi_prev
        )
        mag = np.abs(psi)
        big = mag > 1e100
        if np.any(big):
            adj = np.where(big, np.log(np.where(big, mag, 1.0)), 0.0)
            factor = np.exp(-adj)
            psi = psi * factor
            psi_prev = psi_prev * factor
            scale = scale + adj
    val = psi * np.exp(scale)
    return u, 1.0 / (n_nodes * val * val)


def _hermite_factor(n: int, u: np.ndarray, shift: float) -> np.ndarray:
    """p_n(u + shift) * e^{-u^2/2} with p_n the orthonormal Hermite polynomial."""
    arg = u + shift
    r_prev = np.zeros_like(u)
    r = math.pi ** -0.25 * np.exp(-0.5 * u * u)
    for j in range(n):
        r_prev, r = r, (
            arg * math.sqrt(2.0 / (j + 1)) * r
            - math.sqrt(j / (j + 1.0)) * r_prev
        )
    return r


def u_element_oracle(a: PhasePoint, alpha: float, k: int, k_prime: int) -> complex:
    """<U_a phi_k, phi_k'> by direct Gauss-Hermite quadrature of the integral."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if k > ORACLE_INDEX_MAX or k_prime > ORACLE_INDEX_MAX:
        raise ValueError(f"oracle quadrature capped at index {ORACLE_INDEX_MAX}")
    n_nodes = 4 * (k + k_prime) + 200
    u, wt = _gh_rule(n_nodes)
    b = math.sqrt(alpha) * a.a_xi
    beta = a.a_x / math.sqrt(alpha)
    rk = _hermite_factor(k, u, 0.5 * b)
    rkp = _hermite_factor(k_prime, u, -0.5 * b)
    osc = np.exp(1j * beta * u)
    total = np.sum(wt * rk * rkp * osc)
    prefactor = cmath.exp(1j * (0.5 * a.a_x * a.a_xi - 0.5 * beta * b)
                          ) * math.exp(-0.25 * b * b)
    return complex(prefactor * total)


def u_element_bessel(a: PhasePoint, alpha: float, k: int, k_prime: int,
                     jmax: int = 48) -> complex:
    """Partial Bessel-series sum for <U_a phi_k, phi_k'> (k <= k').

    Converges to the closed form in the regime 2 rho <= (k'+k+1)^(1/6).
    """
    from .specialfn import a_coefficients, bessel_j

    if k > k_prime:
        raise ValueError("bessel route requires k <= k'")
    w = _omega(a, alpha)
    r = abs(w)
    if r == 0.0:
        return 1.0 + 0.0j if k == k_prime else 0.0j
    m = k_prime - k
    s = k_prime + k + 1
    arg = 2.0 * r * math.sqrt(s)
    coeffs = a_coefficients(k, k_prime, jmax).values
    ratio = r / math.sqrt(s)
    total = 0.0
    for j, aj in enumerate(coeffs):
        if aj != 0.0:
            total += aj * ratio**j * bessel_j(m + j, arg)
    sqrt_f = math.exp(0.5 * ((gammaln(k_prime + 1) - gammaln(k + 1))
                             + m * math.log(2.0 / s)))
    theta = cmath.phase(-w)
    return cmath.exp(1j * m * theta) * sqrt_f * total


def v_element(V: Potential, k: int, k_prime: int) -> complex:
    """<V phi_k, phi_k'> = sum_a c_a <U_a phi_k, phi_k'> (+ c0 on the diagonal)."""
    total = V.c0 if k == k_prime else 0.0j
    for p, c in V.terms:
        total += c * u_element(p, V.alpha, k, k_prime)
    return complex(total)


def _accumulate_pair(out: np.ndarray, p: PhasePoint, c: complex,
                     alpha: float, N: int) -> None:
    """Add the {a, -a} pair contribution to the upper triangle of `out`.

    One pass of the prefactored Laguerre recurrence, shared across all
    diagonal offsets m = k' - k; row k is emitted as the recurrence reaches
    degree k.
    """
    w = _omega(p, alpha)
    r = abs(w)
    x = 2.0 * r * r
    theta = cmath.phase(-w)
    marr = np.arange(N, dtype=float)
    # c_a e^{i m theta} + conj(c_a) e^{i m (theta+pi)}
    phase = np.exp(1j * marr * theta)
    coeff = phase * (c + np.where(np.arange(N) % 2 == 0, c.conjugate(),
                                  -c.conjugate()))
    g = np.exp(marr * math.log(math.sqrt(2.0) * r) - r * r
               - 0.5 * gammaln(marr + 1.0))
    g_prev = np.zeros(N)
    out[0, :] += coeff * g
    for k in range(1, N):
        j = k - 1
        num = (2 * j + 1 + marr - x) * g - np.sqrt(j * (j + marr)) * g_prev
        g_prev, g = g, num / np.sqrt((j + 1) * (j + 1 + marr))
        width = N - k
        out[k, k:] += coeff[:width] * g[:width]


def v_matrix(V: Potential, N: int) -> np.ndarray:
    """Dense N x N matrix of <V phi_k, phi_k'>, Hermitian by construction."""
    if N < 1:
        raise ValueError("N must be positive")
    if N > MAX_BASIS:
        raise ValueError(f"basis size {N} exceeds configured maximum {MAX_BASIS}")
    upper = np.zeros((N, N), dtype=complex)
    for p, c in V.pairs():
        _accumulate_pair(upper, p, c, V.alpha, N)
    if V.c0 != 0:
        upper[np.diag_indices(N)] += V.c0
    # mirror the strict upper triangle row by row (no index-array blowup)
    for k in range(N - 1):
        upper[k + 1:, k] = np.conj(upper[k, k + 1:])
    return upper


@dataclass(frozen=True)
class MatrixElementTable:
    """Truncated matrix of H+V in the Hermite eigenbasis."""

    alpha: float
    dimension: int
    entries: np.ndarray


def build_matrix(V: Potential, N: int) -> MatrixElementTable:
    """The N x N truncation alpha(2k+1) delta_{kk'} + <V phi_k, phi_k'>."""
    mat = v_matrix(V, N)
    diag = V.alpha * (2.0 * np.arange(N) + 1.0)
    mat[np.diag_indices(N)] += diag
    return MatrixElementTable(alpha=V.alpha, dimension=N, entries=mat)


def window_sup(V: Potential, n: int) -> float:
    """sup |<V phi_k, phi_k'>| over the window |k-n|, |k'-n| <= kappa sqrt(n)."""
    half = int(math.floor(V.kappa() * math.sqrt(n)))
    lo, hi = max(0, n - half), n + half
    best = 0.0
    for k in range(lo, hi + 1):
        for kp in range(k, hi + 1):
            best = max(best, abs(v_element(V, k, kp)))
    return best
