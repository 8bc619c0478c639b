"""Time evolution of the phase-space distribution for polynomial potentials.

The equation of motion is classical Liouville transport plus a finite sum
of odd-order quantum corrections,

    dW/dt = -(p/m) dW/dq + V'(q) dW/dp
            + sum_{n>=1} (-1)^n (hbar/2)^(2n) / (2n+1)! * V^(2n+1)(q) d^(2n+1)W/dp^(2n+1),

which terminates for polynomial V (degree <= 8 keeps the highest stencil
order bounded).  All derivatives are spectral; stepping is the classic
explicit fourth-order scheme with a CFL-style admissibility bound checked
up front.  A Strang-split Schroedinger propagator acts as the independent
oracle for the same dynamics on the wavefunction side.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation
from .grid import POSITION, Grid, WaveFunction
from .wigner import WignerFunction

_MASS_DRIFT_ABORT = 1e-4


@dataclass(frozen=True)
class PotentialSpec:
    """Polynomial potential ``V(q) = sum_k coefficients[k] q^k`` and particle mass."""

    coefficients: tuple[float, ...]
    mass: float = 1.0

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        if len(coeffs) > 9:
            raise ValueError("potential degree is limited to 8")
        if not all(np.isfinite(coeffs)):
            raise ValueError("potential coefficients must be finite")
        if not self.mass > 0:
            raise ValueError("mass must be positive")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        deg = len(self.coefficients) - 1
        while deg > 0 and self.coefficients[deg] == 0.0:
            deg -= 1
        return max(deg, 0)

    def derivative_values(self, q: np.ndarray, order: int) -> np.ndarray:
        coeffs = np.polynomial.polynomial.polyder(self.coefficients, m=order) if order else np.asarray(self.coefficients)
        return np.polynomial.polynomial.polyval(q, coeffs)


@dataclass(frozen=True)
class EvolutionConfig:
    """Stepping parameters: step size, step count and quantum-series truncation.

    ``series_order`` is the highest correction index requested; zero selects
    purely classical transport.  For polynomial potentials the series is
    finite and is always summed in full when corrections are on.
    """

    dt: float
    n_steps: int
    series_order: int = 3

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if self.n_steps < 0:
            raise ValueError("n_steps must be nonnegative")
        if self.series_order < 0:
            raise ValueError("series_order must be nonnegative")


def _series_terms(v: PotentialSpec, series_order: int) -> int:
    """Number of quantum correction terms actually summed."""
    needed = max((v.degree - 1) // 2, 0)
    if series_order == 0:
        return 0
    if series_order < needed:
        warnings.warn(
            f"series_order {series_order} is below the {needed} terms this potential "
            "needs; the finite series is summed in full rather than truncated",
            stacklevel=3,
        )
    return needed


def stability_limit(grid: Grid, v: PotentialSpec) -> float:
    """Largest admissible explicit step: 0.5*min(m*dq/p_max, dp/max|V'|)."""
    p_max = float(np.max(np.abs(grid.p)))
    bound = 0.5 * v.mass * grid.delta_q / p_max
    v_prime_max = float(np.max(np.abs(v.derivative_values(grid.q, 1))))
    if v_prime_max > 0:
        bound = min(bound, 0.5 * grid.delta_p / v_prime_max)
    return bound


class _MoyalRHS:
    """Precomputed right-hand-side evaluator for one grid/potential combination."""

    def __init__(self, grid: Grid, v: PotentialSpec, series_order: int):
        n = grid.n_points
        self.grid = grid
        self.mass = v.mass
        # spectral wavenumbers; Nyquist zeroed for odd derivative orders
        self.kq = 2.0 * np.pi * np.fft.rfftfreq(n, d=grid.delta_q)
        self.kp = 2.0 * np.pi * np.fft.rfftfreq(n, d=grid.delta_p)
        self.kq_odd = self.kq.copy()
        self.kq_odd[-1] = 0.0
        self.kp_odd = self.kp.copy()
        self.kp_odd[-1] = 0.0
        self.p_row = grid.p[None, :]
        self.v_prime = v.derivative_values(grid.q, 1)[:, None]
        self.quantum = []
        for term in range(1, _series_terms(v, series_order) + 1):
            order = 2 * term + 1
            coeff = (-1.0) ** term * (grid.hbar / 2.0) ** (2 * term) / math.factorial(order)
            v_deriv = v.derivative_values(grid.q, order)[:, None]
            if np.any(v_deriv):
                self.quantum.append((order, coeff * v_deriv))

    def __call__(self, w: np.ndarray) -> np.ndarray:
        n = self.grid.n_points
        spec_q = np.fft.rfft(w, axis=0)
        dw_dq = np.fft.irfft(spec_q * (1j * self.kq_odd)[:, None], n=n, axis=0)
        spec_p = np.fft.rfft(w, axis=1)
        dw_dp = np.fft.irfft(spec_p * (1j * self.kp_odd)[None, :], n=n, axis=1)
        rhs = -(self.p_row / self.mass) * dw_dq + self.v_prime * dw_dp
        for order, weighted in self.quantum:
            deriv = np.fft.irfft(spec_p * (1j * self.kp_odd)[None, :] ** order, n=n, axis=1)
            rhs += weighted * deriv
        return rhs


def moyal_rhs(w: WignerFunction, v: PotentialSpec, series_order: int = 3) -> np.ndarray:
    """Time derivative dW/dt of the distribution under the given potential.

    For quadratic potentials every quantum correction vanishes identically
    and the result is pure classical transport.
    """
    return _MoyalRHS(w.grid, v, series_order)(w.values)


def propagate(w: WignerFunction, v: PotentialSpec, cfg: EvolutionConfig) -> WignerFunction:
    """Step the distribution forward by ``cfg.n_steps`` steps of ``cfg.dt``.

    Classic fourth-order explicit stepping of the spectral right-hand side.
    Aborts on mass drift beyond 1e-4, on non-finite values, and on amplitude
    blow-up, all of which indicate an inadmissible step size or an escaping
    state.
    """
    limit = stability_limit(w.grid, v)
    if cfg.dt > limit:
        raise ValueError(
            f"dt={cfg.dt} exceeds the stability bound {limit:.3e} "
            "(0.5*min(m*dq/p_max, dp/max|V'|)) for this grid and potential"
        )
    rhs = _MoyalRHS(w.grid, v, cfg.series_order)
    current = w.values.copy()
    initial_mass = float(current.sum()) * w.grid.delta_q * w.grid.delta_p
    amplitude_cap = 10.0 * max(2.0 / w.grid.h, float(np.max(np.abs(current))))
    dt = cfg.dt
    cell = w.grid.delta_q * w.grid.delta_p
    for step in range(cfg.n_steps):
        k1 = rhs(current)
        k2 = rhs(current + 0.5 * dt * k1)
        k3 = rhs(current + 0.5 * dt * k2)
        k4 = rhs(current + dt * k3)
        current = current + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if step % 25 == 24 or step == cfg.n_steps - 1:
            peak = float(np.max(np.abs(current)))
            if not np.isfinite(peak) or peak > amplitude_cap:
                raise InvariantViolation(
                    f"evolution went unstable at step {step + 1} (peak {peak:.2e})"
                )
            drift = abs(float(current.sum()) * cell - initial_mass)
            if drift > _MASS_DRIFT_ABORT:
                raise InvariantViolation(
                    f"mass drift {drift:.2e} at step {step + 1} exceeds 1e-4; aborting"
                )
    return WignerFunction(w.grid, current)


def split_step_schrodinger(psi: WaveFunction, v: PotentialSpec, cfg: EvolutionConfig) -> WaveFunction:
    """Strang-split kinetic/potential propagator, the wavefunction-side oracle.

    Each half/full factor is an exact phase, so the stepping is
    unconditionally stable and norm-conserving; accuracy is second order in
    the step size.  Aborts when the state develops edge amplitude above
    1e-6 of its peak.
    """
    if psi.representation != POSITION:
        raise ValueError("split_step_schrodinger expects a position-representation state")
    g = psi.grid
    n = g.n_points
    v_values = v.derivative_values(g.q, 0)
    half_kick = np.exp(-0.5j * cfg.dt * v_values / g.hbar)
    # internal spectral step on the full-band lattice: the plain FFT pair is
    # exactly unitary, so no mode can grow under repeated application
    momenta = 2.0 * np.pi * g.hbar * np.fft.fftfreq(n, d=g.delta_q)
    drift = np.exp(-1j * cfg.dt * momenta**2 / (2.0 * v.mass * g.hbar))

    values = psi.values.copy()
    for step in range(cfg.n_steps):
        values = values * half_kick
        values = np.fft.ifft(np.fft.fft(values) * drift)
        values *= half_kick
        if step % 16 == 15 or step == cfg.n_steps - 1:
            peak = float(np.max(np.abs(values)))
            if not np.isfinite(peak):
                raise InvariantViolation(f"wavefunction became non-finite at step {step + 1}")
            edge = max(abs(values[0]), abs(values[-1])) / peak
            if edge > 1e-6:
                raise InvariantViolation(
                    f"edge amplitude {edge:.2e} at step {step + 1}: state reached the "
                    "grid boundary, enlarge the grid or shorten the run"
                )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # edge diagnostics already enforced above
        return WaveFunction(g, values, POSITION)
