"""Chain quantization and the one-channel determinant.

A chain of m identical phase-preserving scatterers accumulates the
total phase m*(theta + pi/4) + m * P(E), where P is the unwrapped
gamma-ratio phase; periodicity quantizes it to integer multiples of
2 pi.  The same condition is the vanishing of the 1x1 determinant
(t')^{-1} - G' built from the unit-modulus scattering factor, so the
m = 1 quantization roots and the determinant roots coincide.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from ..errors import ConvergenceError, DomainError
from ..specfun import gamma_phase_ratio, phase_monotone_cutoff

__all__ = [
    "QuantizationProblem",
    "analytic_phase",
    "krein_quantization",
    "quantization_residual",
    "kkr_det",
    "kkr_det_roots",
    "det_root_index",
    "physical_t_matrix",
]

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
_RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class QuantizationProblem:
    """m scatterers, common phase offset theta, and the integer range to solve."""

    m: int
    theta: float
    n_range: tuple

    def __post_init__(self):
        if int(self.m) < 1:
            raise DomainError(f"scatterer count m must be >= 1, got {self.m}")
        n_lo, n_hi = self.n_range
        if int(n_lo) > int(n_hi):
            raise DomainError(f"empty n_range {self.n_range}")


def analytic_phase(e_hat: float, theta: float) -> float:
    """Total phase 2*delta = theta + pi/4 + P(e_hat), unwrapped.

    The pi/4 is the fixed far-field contribution that accompanies the
    gamma ratio in the scattering factor; linear in theta, so shifting
    theta by 2 pi shifts the output by exactly 2 pi.
    """
    return float(theta) + math.pi / 4.0 + gamma_phase_ratio(float(e_hat), 0.5)


def _phase(e_hat: float) -> float:
    return gamma_phase_ratio(e_hat, 0.5)


def _solve_phase_equals(target: float, hi_hint: float = 4.0):
    """Root of P(e) = target on the increasing side, or None when the
    target sits below the phase minimum."""
    cutoff = phase_monotone_cutoff()
    if _phase(cutoff) >= target:
        return None
    hi = max(2.0 * cutoff, hi_hint)
    while _phase(hi) < target:
        hi *= 2.0
    return brentq(lambda e: _phase(e) - target, cutoff, hi, xtol=1e-13, rtol=8.9e-16)


def krein_quantization(problem: QuantizationProblem) -> list:
    """Solve m*(theta + pi/4) + m*P(E) = 2 pi n for each n in range.

    Returns (n, root) pairs, strictly increasing in both; integers whose
    target falls below the phase minimum are skipped with a logged
    notice.  Each returned root satisfies the quantization equation to
    1e-9.
    """
    m = int(problem.m)
    out = []
    n_lo, n_hi = int(problem.n_range[0]), int(problem.n_range[1])
    for n in range(n_lo, n_hi + 1):
        target = TWO_PI * n / m - problem.theta - math.pi / 4.0
        root = _solve_phase_equals(target)
        if root is None:
            log.info("quantization n=%d below range for m=%d, theta=%g", n, m, problem.theta)
            continue
        residual = quantization_residual(m, problem.theta, n, root)
        if abs(residual) > _RESIDUAL_TOL:
            raise ConvergenceError(
                f"quantization residual {residual:.3e} above {_RESIDUAL_TOL:g} at n={n}"
            )
        out.append((n, root))
    return out


def quantization_residual(m: int, theta: float, n: int, e_hat: float) -> float:
    return m * (theta + math.pi / 4.0) + m * _phase(e_hat) - TWO_PI * n


# ---------------------------------------------------------------------------
# 1x1 determinant


def kkr_det(e_hat: float, theta: float) -> complex:
    """Determinant (t')^{-1} - G' of the one-channel problem.

    t' = e^{i theta} and G' = e^{i pi/4} Gamma(1/2 + iE)/Gamma(1/2 - iE)
    is the unit-modulus scattering combination (the fixed pi/4 travels
    with the gamma ratio, keeping determinant roots identical to the
    m = 1 quantization roots).  The modulus satisfies
    |det| = 2 |sin((P + pi/4 + theta)/2)| identically.
    """
    total = _phase(float(e_hat)) + math.pi / 4.0
    return cmath.exp(-1j * float(theta)) - cmath.exp(1j * total)


def kkr_det_roots(e_range: tuple, theta: float) -> list:
    """All determinant roots with e_hat in (max(lo, cutoff), hi].

    Roots solve theta + pi/4 + P(E) = 2 pi n; searched only on the
    increasing side of P.
    """
    lo, hi = float(e_range[0]), float(e_range[1])
    if not lo < hi:
        raise DomainError(f"bad root range {e_range}")
    cutoff = phase_monotone_cutoff()
    lo = max(lo, cutoff)
    if hi <= lo:
        return []
    val_lo = (theta + math.pi / 4.0 + _phase(lo)) / TWO_PI
    val_hi = (theta + math.pi / 4.0 + _phase(hi)) / TWO_PI
    out = []
    for n in range(math.ceil(val_lo - 1e-12), math.floor(val_hi + 1e-12) + 1):
        root = _solve_phase_equals(TWO_PI * n - theta - math.pi / 4.0)
        if root is not None and lo <= root <= hi:
            out.append(root)
    return out


def det_root_index(e_hat: float, theta: float) -> int:
    """Winding integer n associated with a determinant root."""
    return round((theta + math.pi / 4.0 + _phase(e_hat)) / TWO_PI)


def physical_t_matrix(e_hat: float, theta: float) -> complex:
    """Conventional scattering-matrix element -sqrt(E) sin(delta) e^{i delta}.

    Diagnostic only: its modulus is not 1, which is incompatible with
    the unit-modulus determinant identity, so it never enters root
    finding.
    """
    delta = 0.5 * analytic_phase(e_hat, theta)
    return -math.sqrt(float(e_hat)) * math.sin(delta) * cmath.exp(1j * delta)
