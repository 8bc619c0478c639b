"""Phase-space localization diagnostics.

Three measures of how a state occupies phase space:

* ``effective_area``: inverse-participation area ``h / (2 * h*integral(W^2))``,
  calibrated so a minimum-uncertainty Gaussian scores exactly h/2 and any
  physical state scores at least that.
* ``smoothed_minimum``: the global minimum after Gaussian smoothing.
  Averaging over a cell of area at least hbar/2 (sigma_q*sigma_p >= hbar/2)
  wipes out all negativity; smaller cells can retain it.
* ``subplanck_scale``: the area of the finest oscillation cell, read off the
  significant spectral support of the distribution and normalized so an
  unstructured Gaussian registers its full h/2 blob.  Interference fringes
  push spectral support outward and shrink this well below h.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np
from scipy.signal import fftconvolve

from .errors import InvariantViolation
from .wigner import WignerFunction, purity

#: Relative spectral power below which a frequency does not count as structure.
SPECTRAL_POWER_FLOOR = 1e-6


@dataclass(frozen=True)
class BlobReport:
    """Summary of the localization diagnostics of one distribution."""

    effective_area: float
    min_value: float
    min_smoothed_value: float
    subplanck_scale: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def effective_area(w: WignerFunction) -> float:
    """Inverse-participation phase-space area, h/2 for any pure state.

    Requires unit total mass; rejects data whose self-overlap exceeds one,
    which no physical state can produce.
    """
    mass = w.mass()
    if abs(mass - 1.0) > 1e-6:
        raise InvariantViolation(f"total mass {mass} deviates from 1; normalize first")
    pur = purity(w)
    if pur > 1.0 + 1e-6:
        raise InvariantViolation(
            f"self-overlap {pur:.6f} exceeds one: sharper than any admissible state"
        )
    return float(w.grid.h / (2.0 * pur))


def smoothed_minimum(w: WignerFunction, sigma_q: float, sigma_p: float) -> float:
    """Global minimum of the distribution after Gaussian smoothing.

    The kernel is a normalized Gaussian of the given widths evaluated on
    the offset lattice; at sigma_q*sigma_p = hbar/2 it coincides with a
    minimum-uncertainty device and the result is a detector readout,
    nonnegative for every physical state.
    """
    if not (sigma_q > 0 and sigma_p > 0):
        raise ValueError("smoothing widths must be positive")
    g = w.grid
    n = g.n_points
    offsets = np.arange(n) - n // 2
    kernel = np.exp(-((offsets * g.delta_q) ** 2) / (2.0 * sigma_q**2))[:, None] * np.exp(
        -((offsets * g.delta_p) ** 2) / (2.0 * sigma_p**2)
    )[None, :]
    kernel /= kernel.sum() * g.delta_q * g.delta_p
    full = fftconvolve(w.values, kernel, mode="full")
    smoothed = full[n // 2: n // 2 + n, n // 2: n // 2 + n] * g.delta_q * g.delta_p
    return float(smoothed.min())


def _max_significant_frequency(power: np.ndarray, freqs: np.ndarray, floor: float) -> float:
    significant = power > floor * power.max()
    return float(np.max(np.abs(freqs[significant])))


def subplanck_scale(w: WignerFunction, power_floor: float = SPECTRAL_POWER_FLOOR) -> float:
    """Area of the finest oscillation cell of the distribution.

    Measured from the highest frequency carrying relative spectral power
    above ``power_floor`` in each direction, and normalized so a Gaussian
    of any width yields h/2.  Only states with structure finer than their
    envelope (interference fringes) score below that.
    """
    g = w.grid
    n = g.n_points
    spec_q = np.fft.fft(w.values, axis=0)
    spec_p = np.fft.fft(w.values, axis=1)
    power_q = np.sum(np.abs(spec_q) ** 2, axis=1)
    power_p = np.sum(np.abs(spec_p) ** 2, axis=0)
    nu_q = _max_significant_frequency(power_q, 2.0 * np.pi * np.fft.fftfreq(n, g.delta_q), power_floor)
    nu_p = _max_significant_frequency(power_p, 2.0 * np.pi * np.fft.fftfreq(n, g.delta_p), power_floor)
    if nu_q <= 0 or nu_p <= 0:
        raise InvariantViolation("distribution has no resolvable structure on this grid")
    return float(2.0 * np.pi * np.log(1.0 / power_floor) / (nu_q * nu_p))


def blob_report(
    w: WignerFunction,
    sigma_q: float | None = None,
    sigma_p: float | None = None,
) -> BlobReport:
    """Assemble the full diagnostic report; smoothing defaults to the hbar/2 cell."""
    if sigma_q is None:
        sigma_q = float(np.sqrt(w.grid.hbar / 2.0))
    if sigma_p is None:
        sigma_p = float(w.grid.hbar / 2.0 / sigma_q)
    return BlobReport(
        effective_area=effective_area(w),
        min_value=float(w.values.min()),
        min_smoothed_value=smoothed_minimum(w, sigma_q, sigma_p),
        subplanck_scale=subplanck_scale(w),
    )
