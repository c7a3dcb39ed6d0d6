"""Inverted-oscillator scattering: ODE integration and far-field fits.

The radial problem integrated here is phi'' + (xi^2 - 2*E)phi = 0 from
xi = 0 outward.  Its far field is a pair of conjugate travelling waves
xi^{-1/2} exp[+-i(xi^2/2 - E ln(sqrt(2) xi))]; fitting the integrated
solution onto that pair recovers the complex amplitudes whose phase
ratio carries the scattering information.

The same operator arises from the attractive inverse-square problem
-(1/2)psi'' - g psi / Q^2 = 0 with 2g = E^2 + 1/4 under the standard
coordinate transformation; that route is recorded here for reference
and is not integrated separately (the origin singularity makes its
numerics ambiguous while the spectral content is identical).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from ..errors import (
    ConvergenceError,
    DomainError,
    IllConditionedFitError,
)
from ..specfun import log_gamma

__all__ = [
    "IHOSolution",
    "AsymptoticFit",
    "WPhaseReport",
    "integrate_iho",
    "fit_asymptotic",
    "verify_w_phase",
    "w_initial_conditions",
    "XI_MAX_MIN",
    "E_HAT_MAX",
]

XI_MAX_MIN = 20.0
E_HAT_MAX = 20.0
_IC_KINDS = ("even", "odd", "w_function")

# Above this barrier strength the decaying w-solution spans a dynamic
# range ~ e^{pi*E/2} that double precision cannot carry through the
# forbidden region; the barrier segment is then integrated in extended
# precision.
_BARRIER_SPLIT_E = 6.0
_BARRIER_DPS = 40


def w_initial_conditions(e_hat: float) -> tuple:
    """Origin values (phi, phi') of the standing parabolic-cylinder
    solution W in the scaled coordinate x = sqrt(2) xi.

    W(a,0) = 2^{-3/4} |Gamma(1/4 + ia/2) / Gamma(3/4 + ia/2)|^{1/2} and
    W'(a,0) = -2^{-1/4} |Gamma(3/4 + ia/2) / Gamma(1/4 + ia/2)|^{1/2}
    with a = e_hat; the xi-derivative picks up the sqrt(2) scale factor.
    """
    a = float(e_hat)
    half_log_ratio = 0.5 * (
        log_gamma(complex(0.25, 0.5 * a)).real - log_gamma(complex(0.75, 0.5 * a)).real
    )
    w0 = 2.0 ** -0.75 * math.exp(half_log_ratio)
    wp0 = -(2.0 ** -0.25) * math.exp(-half_log_ratio)
    return w0, math.sqrt(2.0) * wp0


@dataclass
class IHOSolution:
    """Integrated solution samples plus the dense interpolant behind them.

    `xi_grid` is uniform from 0 to xi_max; `values`/`derivatives` hold
    phi and phi' there.  `ode_residual` spot-checks the equation on the
    interpolant with a five-point stencil, returning residuals relative
    to the local term size.
    """

    e_hat: float
    xi_grid: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray
    ic_kind: str
    _segments: list = field(repr=False, default_factory=list)

    def evaluate(self, xi):
        """phi at arbitrary points inside the integrated range."""
        xi_arr = np.atleast_1d(np.asarray(xi, dtype=float))
        out = np.empty_like(xi_arr)
        for i, x in enumerate(xi_arr):
            out[i] = self._point(x)[0]
        return out if np.ndim(xi) else float(out[0])

    def _point(self, x):
        for lo, hi, func in self._segments:
            if lo <= x <= hi:
                return func(x)
        raise DomainError(f"xi = {x:g} outside integrated range")

    def ode_residual(self, points=None):
        """Relative residual of phi'' + (xi^2 - 2 e_hat) phi at interior points.

        Five-point stencil with curvature-adapted step; normalized by the
        local oscillation amplitude so solution nodes do not inflate the
        ratio.
        """
        if points is None:
            points = np.linspace(self.xi_grid[0] + 0.2, self.xi_grid[-1] - 0.2, 25)
        out = []
        for x in points:
            q = x * x - 2.0 * self.e_hat
            momentum = math.sqrt(max(1.0, abs(q)))
            h = 0.009 / momentum
            f = [self._point(x + j * h)[0] for j in (-2, -1, 0, 1, 2)]
            second = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
            slope = (f[3] - f[1]) / (2.0 * h)
            amplitude = max(abs(f[2]), abs(slope) / momentum)
            scale = max(abs(second), (abs(q) + 1.0) * amplitude, 1e-30)
            out.append(abs(second + q * f[2]) / scale)
        return np.asarray(out)


def _solve_segment(e_hat, xi_lo, xi_hi, y0):
    def rhs(x, y):
        return (y[1], (2.0 * e_hat - x * x) * y[0])

    sol = solve_ivp(
        rhs,
        (xi_lo, xi_hi),
        y0,
        method="DOP853",
        rtol=1e-12,
        atol=1e-18,
        dense_output=True,
    )
    if not sol.success:
        raise ConvergenceError(f"integration stalled: {sol.message}")
    return sol


def _barrier_segment_mpmath(e_hat, xi_h):
    """Extended-precision traverse of the classically forbidden region.

    Rounding of the initial values is amplified by ~e^{pi*e_hat} across
    the barrier, so the initial conditions are also evaluated at the
    working precision.
    """
    import mpmath as mp

    with mp.workdps(_BARRIER_DPS):
        a = mp.mpf(repr(float(e_hat)))
        ratio = mp.sqrt(abs(mp.gamma(mp.mpc(0.25, a / 2)) / mp.gamma(mp.mpc(0.75, a / 2))))
        w0 = 2 ** mp.mpf("-0.75") * ratio
        wp0 = -(2 ** mp.mpf("-0.25")) / ratio
        func = mp.odefun(
            lambda x, y: [y[1], (2 * a - x * x) * y[0]],
            0,
            [w0, mp.sqrt(2) * wp0],
        )
        phi_h, dphi_h = func(xi_h)
        phi_h, dphi_h = float(phi_h), float(dphi_h)

    def eval_point(x):
        with mp.workdps(_BARRIER_DPS):
            vals = func(x)
            return float(vals[0]), float(vals[1])

    return (phi_h, dphi_h), eval_point


def integrate_iho(e_hat: float, xi_max: float, ic_kind: str = "even", grid_step: float = 0.01) -> IHOSolution:
    """Integrate phi'' + (xi^2 - 2 e_hat) phi = 0 outward from xi = 0.

    Initial conditions: even (1, 0), odd (0, 1), or w_function (the
    standing parabolic-cylinder values, see `w_initial_conditions`).
    Local integration error is held at ~1e-12 relative per step.

    Requires xi_max >= 20 and 0 <= e_hat <= 20.
    """
    e_hat = float(e_hat)
    xi_max = float(xi_max)
    if xi_max < XI_MAX_MIN:
        raise DomainError(f"xi_max must be >= {XI_MAX_MIN:g}, got {xi_max:g}")
    if not (0.0 <= e_hat <= E_HAT_MAX):
        raise DomainError(f"e_hat must lie in [0, {E_HAT_MAX:g}], got {e_hat:g}")
    if ic_kind not in _IC_KINDS:
        raise DomainError(f"ic_kind must be one of {_IC_KINDS}, got {ic_kind!r}")

    n_cells = int(round(xi_max / grid_step))
    xi_grid = np.linspace(0.0, xi_max, n_cells + 1)
    segments = []

    if ic_kind == "w_function" and e_hat > _BARRIER_SPLIT_E:
        xi_h = math.sqrt(2.0 * e_hat) + 2.0
        (phi_h, dphi_h), barrier_eval = _barrier_segment_mpmath(e_hat, xi_h)
        main = _solve_segment(e_hat, xi_h, xi_max, [phi_h, dphi_h])
        segments.append((0.0, xi_h, barrier_eval))
        segments.append((xi_h, xi_max, lambda x: tuple(main.sol(x))))
        values = np.empty_like(xi_grid)
        derivs = np.empty_like(xi_grid)
        below = xi_grid <= xi_h
        for i in np.nonzero(below)[0]:
            values[i], derivs[i] = barrier_eval(xi_grid[i])
        above = ~below
        ys = main.sol(xi_grid[above])
        values[above], derivs[above] = ys[0], ys[1]
    else:
        if ic_kind == "even":
            y0 = [1.0, 0.0]
        elif ic_kind == "odd":
            y0 = [0.0, 1.0]
        else:
            y0 = list(w_initial_conditions(e_hat))
        main = _solve_segment(e_hat, 0.0, xi_max, y0)
        segments.append((0.0, xi_max, lambda x: tuple(main.sol(x))))
        ys = main.sol(xi_grid)
        values, derivs = ys[0].copy(), ys[1].copy()

    return IHOSolution(
        e_hat=e_hat,
        xi_grid=xi_grid,
        values=values,
        derivatives=derivs,
        ic_kind=ic_kind,
        _segments=segments,
    )


# ---------------------------------------------------------------------------
# Far-field fit


@dataclass(frozen=True)
class AsymptoticFit:
    """Complex far-field amplitudes for the conjugate travelling-wave pair.

    `residual_rms` is the fit residual RMS divided by the solution RMS
    over the window.  For real solutions c2 equals conj(c1) up to
    rounding, so only arg(c2/c1) carries physics.
    """

    c1: complex
    c2: complex
    window: tuple
    residual_rms: float
    gram_condition: float


def _correction_coefficients(e_hat: float, xi_lo: float, max_terms: int = 16):
    """Inverse-square correction series for the outgoing far-field mode.

    Substituting phi = xi^{-1/2} e^{i(xi^2/2 - E ln(sqrt(2) xi))} v(xi)
    with v = sum c_k xi^{-2k} into the equation gives the recursion
    below.  The series is asymptotic: accumulate terms while they still
    shrink at xi_lo and stop at ~1e-17 relative.
    """
    coeffs = [1.0 + 0.0j]
    for k in range(max_terms):
        numer = (2 * k + 0.5) * (2 * k + 1.5) - e_hat**2 + 2j * e_hat * (2 * k + 1)
        nxt = coeffs[-1] * numer / (4j * (k + 1))
        if abs(nxt) / xi_lo ** (2 * (k + 1)) >= abs(coeffs[-1]) / xi_lo ** (2 * k):
            break
        coeffs.append(nxt)
        if abs(nxt) / xi_lo ** (2 * (k + 1)) < 1e-17:
            break
    return coeffs


def fit_asymptotic(sol: IHOSolution, window: tuple) -> AsymptoticFit:
    """Least squares of the solution onto the conjugate far-field pair.

    The basis is xi^{-1/2} exp[+-i(xi^2/2 - e_hat ln(sqrt(2) xi))] times
    its inverse-square correction series (without the corrections the
    residual floor is ~1e-4 on any window reachable by direct
    integration, far above the 1e-6 contract).  Constant phase factors
    of the far-field form are absorbed into c1 and c2.

    Requires the window inside the grid, xi_lo >= 15, and at least 200
    grid samples.
    """
    lo, hi = float(window[0]), float(window[1])
    if not (lo < hi):
        raise DomainError("window must be an increasing pair")
    if lo < 15.0:
        raise DomainError(f"window must start at xi >= 15, got {lo:g}")
    if lo < sol.xi_grid[0] or hi > sol.xi_grid[-1] + 1e-12:
        raise DomainError("window outside the integrated range")
    mask = (sol.xi_grid >= lo) & (sol.xi_grid <= hi)
    xi = sol.xi_grid[mask]
    if xi.size < 200:
        raise DomainError(f"window holds {xi.size} samples, need >= 200")
    phi = sol.values[mask]

    psi = 0.5 * xi**2 - sol.e_hat * np.log(math.sqrt(2.0) * xi)
    correction = np.zeros(xi.size, dtype=complex)
    for k, c in enumerate(_correction_coefficients(sol.e_hat, lo)):
        correction += c * xi ** (-2.0 * k)
    mode = xi**-0.5 * np.exp(1j * psi) * correction
    design = np.column_stack([mode, np.conj(mode)])

    cond = np.linalg.cond(design) ** 2  # condition of the 2x2 Gram matrix
    if cond > 1e8:
        raise IllConditionedFitError(f"basis Gram condition {cond:.3g} exceeds 1e8")
    coef, *_ = np.linalg.lstsq(design, phi.astype(complex), rcond=None)
    residual = phi - (design @ coef).real
    rms = math.sqrt(float(np.mean(residual**2)))
    scale = math.sqrt(float(np.mean(phi**2)))
    return AsymptoticFit(
        c1=complex(coef[0]),
        c2=complex(coef[1]),
        window=(lo, hi),
        residual_rms=rms / scale,
        gram_condition=float(cond),
    )


# ---------------------------------------------------------------------------
# Phase-law verification


@dataclass(frozen=True)
class WPhaseReport:
    measured_offset: float
    predicted_offset: float
    gap: float
    fit: AsymptoticFit


def _wrap_to_pi(x: float) -> float:
    out = math.fmod(x, 2.0 * math.pi)
    if out > math.pi:
        out -= 2.0 * math.pi
    elif out <= -math.pi:
        out += 2.0 * math.pi
    return out


def verify_w_phase(e_hat: float, xi_max: float = 30.0, window: tuple | None = None) -> WPhaseReport:
    """Measure the constant far-field phase of the w-solution and compare
    with pi/4 + (1/2) arg Gamma(1/2 + i e_hat).

    The measured offset is arg(c1) after the running phase
    xi^2/2 - e_hat ln(sqrt(2) xi) is removed by the fit basis; the
    prediction uses the unwrapped gamma phase.  Valid for
    0.5 <= e_hat <= 10.
    """
    e_hat = float(e_hat)
    if not (0.5 <= e_hat <= 10.0):
        raise DomainError(f"verify_w_phase is validated for 0.5 <= e_hat <= 10, got {e_hat:g}")
    if window is None:
        window = (max(15.0, xi_max * 2.0 / 3.0), xi_max)
    sol = integrate_iho(e_hat, xi_max, ic_kind="w_function")
    fit = fit_asymptotic(sol, window)
    measured = cmath.phase(fit.c1)
    predicted = math.pi / 4.0 + 0.5 * log_gamma(complex(0.5, e_hat)).imag
    gap = abs(_wrap_to_pi(measured - predicted))
    return WPhaseReport(
        measured_offset=measured,
        predicted_offset=predicted,
        gap=gap,
        fit=fit,
    )
