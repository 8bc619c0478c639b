"""The Wigner distribution and its calculus.

The distribution is built from the two-point correlation of the state:
for every lattice point ``q_j`` the correlation
``c_j(m) = conj(psi(q_j - m*dq)) * psi(q_j + m*dq)`` is formed over integer
offsets ``m`` (zero outside the grid) and spectrally transformed over ``m``.
With the half-spaced momentum lattice the transform is an ordinary DFT with
an alternating sign absorbing the centering of the p axis, so the q-marginal
of the result reproduces ``|psi_j|^2`` exactly and the total quadrature mass
of a normalized state is exactly one.

Values of the distribution may be negative; it is a quasi-probability.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import GridMismatchError, InvariantViolation
from .grid import POSITION, Grid, WaveFunction, inner_product, normalize, squared_norm

#: Allowed imaginary residue of the spectral correlation before truncation.
_IMAG_RESIDUE_TOL = 1e-10

#: States with h*integral(W^2) above this are considered pure.
PURITY_THRESHOLD = 1.0 - 1e-6


@dataclass(frozen=True)
class WignerFunction:
    """Real matrix over the q x p lattice, indexed ``values[q_index, p_index]``."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        n = self.grid.n_points
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (n, n):
            raise ValueError(f"expected a {n} x {n} matrix, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("non-finite values in Wigner matrix")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def mass(self) -> float:
        return float(np.sum(self.values) * self.grid.delta_q * self.grid.delta_p)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian matrix ``entries[a, b] = <q_a|rho|q_b>`` over the coordinate lattice."""

    grid: Grid
    entries: np.ndarray

    def __post_init__(self):
        n = self.grid.n_points
        entries = np.array(self.entries, dtype=np.complex128)
        if entries.shape != (n, n):
            raise ValueError(f"expected a {n} x {n} matrix, got shape {entries.shape}")
        deviation = np.max(np.abs(entries - entries.conj().T))
        if deviation > 1e-12:
            raise InvariantViolation(
                f"density matrix is not Hermitian (max deviation {deviation:.2e})"
            )
        trace = float(np.trace(entries).real) * self.grid.delta_q
        if abs(trace - 1.0) > 1e-10:
            raise InvariantViolation(f"density matrix trace is {trace}, expected 1")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def smallest_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries).min()) * self.grid.delta_q


def pure_density(psi: WaveFunction) -> DensityMatrix:
    """Projector |psi><psi| for a normalized position-representation state."""
    if psi.representation != POSITION:
        raise ValueError("pure_density expects a position-representation state")
    return DensityMatrix(psi.grid, np.outer(psi.values, np.conj(psi.values)))


def mixed_density(states: Sequence[WaveFunction], weights: Sequence[float]) -> DensityMatrix:
    """Statistical mixture sum_i w_i |psi_i><psi_i| with sum w_i = 1."""
    if len(states) != len(weights) or not states:
        raise ValueError("need one weight per state")
    entries = sum(
        w * np.outer(s.values, np.conj(s.values)) for s, w in zip(states, weights)
    )
    return DensityMatrix(states[0].grid, entries)


def _signed_offsets(n: int) -> np.ndarray:
    # DFT-ordered offsets [0, 1, ..., n/2-1, -n/2, ..., -1]
    return np.fft.fftfreq(n, 1.0 / n).astype(np.int64)


def _transform_correlation(corr: np.ndarray, grid: Grid) -> np.ndarray:
    """Spectral transform over the correlation offset, scaled to a distribution."""
    n = grid.n_points
    m = _signed_offsets(n)[None, :]
    scale = 2.0 * grid.delta_q / grid.h
    spectrum = np.fft.fft(corr * np.where(m % 2 == 0, 1.0, -1.0), axis=1)
    residue = float(np.max(np.abs(spectrum.imag))) * scale
    if residue >= _IMAG_RESIDUE_TOL:
        raise InvariantViolation(
            f"imaginary residue {residue:.2e} of the spectral correlation "
            "exceeds tolerance; input is not a consistent state"
        )
    return scale * spectrum.real


def _correlation_from_amplitudes(amplitudes: np.ndarray, n: int) -> np.ndarray:
    j = np.arange(n)[:, None]
    m = _signed_offsets(n)[None, :]
    plus = j + m
    minus = j - m
    valid = (plus >= 0) & (plus < n) & (minus >= 0) & (minus < n)
    corr = np.zeros((n, n), dtype=np.complex128)
    corr[valid] = np.conj(amplitudes[minus[valid]]) * amplitudes[plus[valid]]
    return corr


def wigner_values_of_amplitudes(amplitudes: np.ndarray, grid: Grid) -> np.ndarray:
    """Distribution matrix of raw position amplitudes, no normalization required.

    Filter outputs carry their transmission in the overall scale, so this
    low-level path deliberately skips the unit-norm gate of
    :func:`wdf_from_wavefunction`.
    """
    corr = _correlation_from_amplitudes(np.asarray(amplitudes, dtype=np.complex128), grid.n_points)
    return _transform_correlation(corr, grid)


def wdf_from_wavefunction(psi: WaveFunction) -> WignerFunction:
    """Wigner distribution of a normalized position-representation state."""
    if psi.representation != POSITION:
        raise ValueError("wdf_from_wavefunction expects a position-representation state")
    norm = squared_norm(psi)
    if abs(norm - 1.0) > 1e-6:
        raise InvariantViolation(
            f"input squared norm {norm} deviates from 1 by more than 1e-6"
        )
    return WignerFunction(psi.grid, wigner_values_of_amplitudes(psi.values, psi.grid))


def wdf_from_density(rho: DensityMatrix) -> WignerFunction:
    """Wigner distribution of a density matrix.

    Identical correlation-then-transform construction, with
    ``c_j(m) = <q_j + m dq|rho|q_j - m dq>``; agrees with the pure-state
    path for projectors.
    """
    n = rho.grid.n_points
    j = np.arange(n)[:, None]
    m = _signed_offsets(n)[None, :]
    plus = j + m
    minus = j - m
    valid = (plus >= 0) & (plus < n) & (minus >= 0) & (minus < n)
    corr = np.zeros((n, n), dtype=np.complex128)
    corr[valid] = rho.entries[plus[valid], minus[valid]]
    return WignerFunction(rho.grid, _transform_correlation(corr, rho.grid))


def marginal_q(w: WignerFunction) -> np.ndarray:
    """Momentum-integrated distribution, the position density |psi(q)|^2."""
    return np.asarray(w.values.sum(axis=1) * w.grid.delta_p)


def marginal_p(w: WignerFunction) -> np.ndarray:
    """Position-integrated distribution, the momentum density |psi_bar(p)|^2."""
    return np.asarray(w.values.sum(axis=0) * w.grid.delta_q)


def expectation(w: WignerFunction, symbol: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> float:
    """Phase-space average ``integral symbol(q, p) W(q, p) dq dp``.

    The symbol is evaluated pointwise on the lattice.  This equals the
    quantum expectation of an operator exactly when the symbol is its
    Weyl-ordered (symmetrized) scalar counterpart.
    """
    g = w.grid
    qq, pp = np.meshgrid(g.q, g.p, indexing="ij")
    return float(np.sum(np.asarray(symbol(qq, pp), dtype=np.float64) * w.values)
                 * g.delta_q * g.delta_p)


def _variances(w: WignerFunction) -> tuple[float, float]:
    mean_q = expectation(w, lambda q, p: q)
    mean_p = expectation(w, lambda q, p: p)
    var_q = expectation(w, lambda q, p: (q - mean_q) ** 2)
    var_p = expectation(w, lambda q, p: (p - mean_p) ** 2)
    return var_q, var_p


def uncertainty_product(w: WignerFunction) -> float:
    """Return ``delta_q * delta_p`` of the distribution; >= hbar/2 for physical states."""
    var_q, var_p = _variances(w)
    if var_q < 0 or var_p < 0:
        raise InvariantViolation(
            f"negative variance (var_q={var_q:.3e}, var_p={var_p:.3e}); "
            "input is not a physical state"
        )
    return float(np.sqrt(var_q) * np.sqrt(var_p))


def overlap_probability(w1: WignerFunction, w2: WignerFunction) -> float:
    """Transition probability ``h * integral W1 W2 dq dp``.

    Equals |<psi1|psi2>|^2 for pure states.
    """
    if w1.grid != w2.grid:
        raise GridMismatchError("distributions live on different grids")
    g = w1.grid
    return float(g.h * np.sum(w1.values * w2.values) * g.delta_q * g.delta_p)


def purity(w: WignerFunction) -> float:
    """Self-overlap ``h * integral W^2 dq dp``; one for pure states, below one for mixtures."""
    return overlap_probability(w, w)


def _upsample_rows(values: np.ndarray) -> np.ndarray:
    """Double the row count by trigonometric interpolation along the q axis."""
    n = values.shape[0]
    half = n // 2
    spectrum = np.fft.fft(values, axis=0)
    padded = np.zeros((2 * n,) + values.shape[1:], dtype=np.complex128)
    padded[:half] = spectrum[:half]
    padded[half] = 0.5 * spectrum[half]
    padded[3 * half] = 0.5 * spectrum[half]
    padded[3 * half + 1:] = spectrum[half + 1:]
    return np.fft.ifft(padded, axis=0).real * 2.0


def recover_wavefunction(w: WignerFunction, min_reference: float = 1e-6) -> WaveFunction:
    """Invert the distribution of a pure state back to its wavefunction.

    Uses the correlation against the fixed reference point q = 0:
    ``psi(q) psi*(0) = integral W(q/2, p) exp(ipq/hbar) dp``.  The half
    coordinate is reached by spectral upsampling of the q axis, which is
    exact for band-limited data.  The global phase is fixed by making
    psi(0) real and positive.
    """
    pur = purity(w)
    if pur < PURITY_THRESHOLD:
        raise InvariantViolation(f"purity {pur:.6f} below pure-state threshold; cannot invert")
    g = w.grid
    j0 = g.origin_index()
    halved = _upsample_rows(w.values)
    rows = halved[np.arange(g.n_points) + j0]
    phases = np.exp(1j * np.outer(g.q, g.p) / g.hbar)
    correlation = (rows * phases).sum(axis=1) * g.delta_p
    reference = correlation[j0].real
    if reference <= min_reference**2:
        raise InvariantViolation(
            "|psi(0)| is too small to serve as the recovery reference point"
        )
    amplitudes = correlation / np.sqrt(reference)
    return normalize(WaveFunction(g, amplitudes, POSITION))


def overlap_of_states(psi1: WaveFunction, psi2: WaveFunction) -> float:
    """|<psi1|psi2>|^2, the wavefunction-side oracle for :func:`overlap_probability`."""
    return float(abs(inner_product(psi1, psi2)) ** 2)
