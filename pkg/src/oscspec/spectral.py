"""Diagonalization of the truncated H+V matrix with convergence control.

Eigenvalues of the truncation only approximate eigenvalues of H+V up to
some index; `spectrum` certifies a trusted window by re-solving at twice
the basis size and comparing a sampled set of indices.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .matelem import MatrixElementTable, build_matrix
from .model import Potential

__all__ = ["Spectrum", "TruncationError", "eigensolve", "spectrum", "basis_size"]

_REAL_TOL = 1e-13


class TruncationError(RuntimeError):
    """Raised when the doubling check cannot certify the requested indices."""


def eigensolve(table: MatrixElementTable) -> np.ndarray:
    """All eigenvalues of the Hermitian table, ascending.

    Backed by LAPACK's Hermitian solver; purely real input (common for
    even potentials) is routed through the cheaper symmetric path.
    """
    m = table.entries
    if np.max(np.abs(m.imag)) <= _REAL_TOL * max(1.0, np.max(np.abs(m.real))):
        return np.linalg.eigvalsh(m.real)
    return np.linalg.eigvalsh(m)


def basis_size(nmax: int) -> int:
    """Padding rule: translations couple index k to a band of width O(sqrt k)."""
    return 2 * nmax + math.ceil(8.0 * math.sqrt(nmax)) + 64


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues of a truncation, with a certified index window."""

    alpha: float
    basis_size: int
    trusted_max: int
    eigenvalues: np.ndarray
    convergence_tol: float

    def trusted(self) -> np.ndarray:
        return self.eigenvalues[: self.trusted_max + 1]


def spectrum(V: Potential, nmax: int, convergence_tol: float = 1e-8) -> Spectrum:
    """Eigenvalues of H+V trusted through index nmax.

    Solves at N = basis_size(nmax) and again at 2N; trusted_max is the
    largest index whose sampled neighbourhood agrees within
    convergence_tol under the doubling.  Raises TruncationError if that
    falls short of nmax.
    """
    if nmax < 1:
        raise ValueError("nmax must be at least 1")
    n_basis = basis_size(nmax)
    ev = eigensolve(build_matrix(V, n_basis))
    ev_double = eigensolve(build_matrix(V, 2 * n_basis))

    step = max(1, math.ceil(nmax / 32))
    samples = sorted(set(range(0, nmax + 1, step)) | {0, nmax})
    trusted_max = -1
    for idx in samples:
        if abs(ev[idx] - ev_double[idx]) <= convergence_tol:
            trusted_max = idx
        else:
            break
    if trusted_max < nmax:
        raise TruncationError(
            f"doubling check failed beyond index {trusted_max} "
            f"(requested {nmax} at basis size {n_basis})"
        )

    if V.coefficient_sum() >= V.alpha:
        warnings.warn(
            "sum |c_a| >= alpha: sorted-order eigenvalue labelling may differ "
            "from the perturbative labelling at low indices",
            stacklevel=2,
        )
    return Spectrum(
        alpha=V.alpha,
        basis_size=n_basis,
        trusted_max=trusted_max,
        eigenvalues=ev,
        convergence_tol=convergence_tol,
    )
