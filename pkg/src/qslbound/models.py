"""Analytic reduced dynamics of two dissipative qubit models.

Damped Jaynes-Cummings model (amplitude damping into a Lorentzian
reservoir of width ``lam`` and coupling ``gamma0``, times in units of the
qubit frequency): the excited-state amplitude is damped by the factor

    q_t = exp(-lam*t/2) * [cosh(h t/2) + (lam/h) sinh(h t/2)],
    h   = sqrt(lam**2 - 2*gamma0*lam),

which is hyperbolic for 2*gamma0 < lam, the limit exp(-lam*t/2)(1+lam*t/2)
at 2*gamma0 = lam, and trigonometric (oscillatory, with zeros) for
2*gamma0 > lam.  The Bloch map is (x, y, z) -> (x q, y q, (1+z) q**2 - 1).

Pure dephasing model (Ohmic-family reservoir, exponent ``s``, coupling
``eta``, soft exponential cutoff at ``omega_c``, times in units of
1/omega_c): coherences are damped by exp(-Gamma_t) with the
zero-temperature dephasing factor

    Gamma_t = eta * [1 - cos((s-1) arctan t) / (1+t**2)**((s-1)/2)] * gamma(s-1)

and rate gamma_t = eta (1+t**2)**(-s/2) gamma(s) sin(s arctan t); the
Bloch map is (x, y, z) -> (x e^-Gamma, y e^-Gamma, z).  A finite
temperature enters only through the direct quadrature of the reservoir
integral, see :func:`dephasing_gamma_factor_quadrature`.

Both models expose the propagated Bloch state, the time-local generator
matrix d(rho_t)/dt (always finite, also at the q zeros where the canonical
rate diverges), and the purity deficit 1 - tr[rho_t**2] used by the
bound's weight factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Protocol

import numpy as np

from .errors import InvalidInputError, PoleError
from .matcore import BlochState
from .quadrature import QuadratureSpec, integrate

_EULER_GAMMA = 0.5772156649015328606

# Branch window: |2*gamma0 - lam| <= 1e-12 * lam evaluates the exact
# critical-limit formulas instead of the generic ones.
_CRITICAL_BAND = 1e-12

# |q_t| below this counts as sitting on a zero of q (rate pole).
_Q_POLE_EPS = 1e-12

# |s - 1| below this switches the dephasing factor to its series in (s-1),
# bridging the gamma-function pole at s = 1.
_OHMIC_SEAM = 1e-4


def _require_time(t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise InvalidInputError(f"time must be finite and >= 0, got {t!r}")
    return t


class JcBranch(Enum):
    MARKOVIAN = "markovian-real"
    CRITICAL = "critical"
    OSCILLATORY = "oscillatory"


@dataclass(frozen=True)
class JcParams:
    """Lorentzian reservoir: spectral width ``lam`` and coupling ``gamma0``.

    Both are in units of the qubit frequency and must be positive.  The
    dynamics is oscillatory (non-Markovian q zeros) once 2*gamma0 > lam.
    """

    lam: float
    gamma0: float

    def __post_init__(self):
        for name in ("lam", "gamma0"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise InvalidInputError(f"{name} must be finite and > 0, got {value!r}")
            object.__setattr__(self, name, value)

    @property
    def h_squared(self) -> float:
        return self.lam * (self.lam - 2.0 * self.gamma0)

    @property
    def h_abs(self) -> float:
        """|h| where h = sqrt(lam**2 - 2 gamma0 lam), imaginary when oscillatory."""
        return math.sqrt(abs(self.h_squared))

    @property
    def branch(self) -> JcBranch:
        delta = 2.0 * self.gamma0 - self.lam
        if abs(delta) <= _CRITICAL_BAND * self.lam:
            return JcBranch.CRITICAL
        return JcBranch.MARKOVIAN if delta < 0.0 else JcBranch.OSCILLATORY


def jc_q(t: float, params: JcParams) -> float:
    """Excited-state amplitude damping factor q_t; q_0 = 1."""
    t = _require_time(t)
    if t == 0.0:
        return 1.0
    lam = params.lam
    branch = params.branch
    if branch is JcBranch.CRITICAL:
        return math.exp(-0.5 * lam * t) * (1.0 + 0.5 * lam * t)
    h = params.h_abs
    if branch is JcBranch.MARKOVIAN:
        # Rewritten with non-positive exponents so large lam*t cannot overflow.
        ep = math.exp(0.5 * (h - lam) * t)
        em = math.exp(-0.5 * (h + lam) * t)
        return 0.5 * ((1.0 + lam / h) * ep + (1.0 - lam / h) * em)
    y = 0.5 * h * t
    return math.exp(-0.5 * lam * t) * (math.cos(y) + (lam / h) * math.sin(y))


def jc_qdot(t: float, params: JcParams) -> float:
    """Time derivative of :func:`jc_q`; zero at t = 0."""
    t = _require_time(t)
    if t == 0.0:
        return 0.0
    lam = params.lam
    g0 = params.gamma0
    branch = params.branch
    if branch is JcBranch.CRITICAL:
        return -0.5 * g0 * lam * t * math.exp(-0.5 * lam * t)
    h = params.h_abs
    if branch is JcBranch.MARKOVIAN:
        ep = math.exp(0.5 * (h - lam) * t)
        em = math.exp(-0.5 * (h + lam) * t)
        return -0.5 * (g0 * lam / h) * (ep - em)
    return -(g0 * lam / h) * math.exp(-0.5 * lam * t) * math.sin(0.5 * h * t)


def jc_gamma(t: float, params: JcParams) -> float:
    """Time-local decay rate gamma_t = -2 qdot_t / q_t.

    On the oscillatory branch the rate has poles at the zeros of q_t;
    evaluation there raises :class:`PoleError` (|q_t| < 1e-12) so callers
    can decide how to treat the divergence.
    """
    t = _require_time(t)
    if t == 0.0:
        return 0.0
    lam = params.lam
    g0 = params.gamma0
    branch = params.branch
    if branch is JcBranch.CRITICAL:
        return g0 * lam * t / (1.0 + 0.5 * lam * t)
    h = params.h_abs
    if branch is JcBranch.MARKOVIAN:
        th = math.tanh(0.5 * h * t)
        return 2.0 * g0 * lam * th / (h + lam * th)
    if abs(jc_q(t, params)) < _Q_POLE_EPS:
        raise PoleError(f"gamma_t pole: q_t vanishes at t = {t!r}")
    y = 0.5 * h * t
    s = math.sin(y)
    return 2.0 * g0 * lam * s / (h * math.cos(y) + lam * s)


def jc_state(t: float, rho0: BlochState, params: JcParams) -> BlochState:
    """Bloch vector of the propagated state."""
    q = jc_q(t, params)
    return BlochState(
        rho0.r_x * q,
        rho0.r_y * q,
        (1.0 + rho0.r_z) * q * q - 1.0,
    )


def jc_generator(t: float, rho0: BlochState, params: JcParams) -> np.ndarray:
    """Matrix d(rho_t)/dt; traceless Hermitian, finite for all t >= 0."""
    q = jc_q(t, params)
    qd = jc_qdot(t, params)
    diag = (1.0 + rho0.r_z) * q * qd
    off = 0.5 * (rho0.r_x - 1j * rho0.r_y) * qd
    return np.array([[diag, off], [off.conjugate(), -diag]], dtype=complex)


def _jc_purity_deficit(q: float, rho0: BlochState) -> float:
    c2 = rho0.r_x**2 + rho0.r_y**2
    rz = rho0.r_z
    return 0.5 * max(
        0.0, q * q * (2.0 + 2.0 * rz - c2 - q * q * (1.0 + rz) ** 2)
    )


class JcTrajectory:
    """Read-only view of one damped Jaynes-Cummings evolution."""

    def __init__(self, params: JcParams, initial: BlochState):
        self.params = params
        self.initial = initial

    def state(self, t: float) -> BlochState:
        return jc_state(t, self.initial, self.params)

    def generator(self, t: float) -> np.ndarray:
        return jc_generator(t, self.initial, self.params)

    def purity_deficit(self, t: float) -> float:
        return _jc_purity_deficit(jc_q(t, self.params), self.initial)


@dataclass(frozen=True)
class DephasingParams:
    """Ohmic-family reservoir: coupling ``eta``, exponent ``s``, cutoff ``omega_c``.

    ``s`` < 1 is sub-Ohmic, ``s`` = 1 Ohmic, ``s`` > 1 super-Ohmic.
    ``temperature`` is in energy units (Boltzmann constant 1); only the
    quadrature path of the dephasing factor uses it.
    """

    eta: float
    s: float
    omega_c: float = 1.0
    temperature: float = 0.0

    def __post_init__(self):
        for name, low in (("eta", 0.0), ("s", 0.0), ("omega_c", 0.0)):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= low:
                raise InvalidInputError(f"{name} must be finite and > {low}, got {value!r}")
            object.__setattr__(self, name, value)
        temp = float(self.temperature)
        if not math.isfinite(temp) or temp < 0.0:
            raise InvalidInputError(f"temperature must be finite and >= 0, got {temp!r}")
        object.__setattr__(self, "temperature", temp)


def _gamma_factor_series(x: float, eps: float) -> float:
    # Series of [1 - cos(eps*arctan x) (1+x^2)^(-eps/2)] * gamma(eps) around
    # eps = 0, through second order; bridges the gamma pole at s = 1.
    a = math.atan(x)
    big_l = math.log1p(x * x)
    c2 = 0.5 * a * a - big_l * big_l / 8.0
    c3 = big_l**3 / 48.0 - 0.25 * a * a * big_l
    g = _EULER_GAMMA
    second = c3 - g * c2 + (0.5 * g * g + math.pi * math.pi / 12.0) * (0.5 * big_l)
    return 0.5 * big_l + eps * (c2 - 0.5 * g * big_l) + eps * eps * second


def dephasing_gamma_factor(tau: float, params: DephasingParams) -> float:
    """Zero-temperature dephasing factor Gamma_tau; coherences decay as exp(-Gamma).

    Nonnegative for every tau >= 0 and every (eta, s); the s = 1 case is
    the limit (eta/2) log(1 + tau**2).
    """
    tau = _require_time(tau)
    if tau == 0.0:
        return 0.0
    x = params.omega_c * tau
    eps = params.s - 1.0
    if abs(eps) < _OHMIC_SEAM:
        return params.eta * _gamma_factor_series(x, eps)
    value = (
        1.0 - math.cos(eps * math.atan(x)) / (1.0 + x * x) ** (0.5 * eps)
    ) * math.gamma(eps)
    return params.eta * value


def dephasing_rate(t: float, params: DephasingParams) -> float:
    """Time-local dephasing rate gamma_t = d(Gamma_t)/dt.

    Negative stretches (possible for s > 2) signal non-Markovian backflow.
    """
    t = _require_time(t)
    if t == 0.0:
        return 0.0
    x = params.omega_c * t
    s = params.s
    return (
        params.eta
        * params.omega_c
        * (1.0 + x * x) ** (-0.5 * s)
        * math.gamma(s)
        * math.sin(s * math.atan(x))
    )


def ohmic_spectral_density(w: float, params: DephasingParams) -> float:
    """Reservoir spectrum eta * w**s / omega_c**(s-1) * exp(-w/omega_c)."""
    if w < 0.0:
        raise InvalidInputError("frequency must be >= 0")
    return (
        params.eta * w**params.s / params.omega_c ** (params.s - 1.0)
        * math.exp(-w / params.omega_c)
    )


def dephasing_gamma_factor_quadrature(
    tau: float,
    params: DephasingParams,
    spectral_density: Callable[[float], float] | None = None,
    spec: QuadratureSpec | None = None,
) -> float:
    """Dephasing factor from the reservoir integral

        Gamma_tau = int_0^inf dw J(w) coth(w / (2 T)) (1 - cos(w tau)) / w**2,

    evaluated by adaptive quadrature after mapping w = omega_c * u/(1-u)
    onto [0, 1].  At zero temperature with the default Ohmic-family
    spectrum this agrees with :func:`dephasing_gamma_factor`.
    """
    tau = _require_time(tau)
    if tau == 0.0:
        return 0.0
    wc = params.omega_c
    temp = params.temperature
    if spectral_density is None:
        density = lambda w: ohmic_spectral_density(w, params)
    else:
        density = spectral_density

    def transformed(u: float) -> float:
        if u >= 1.0:
            return 0.0
        # The u = 0 endpoint is the removable w -> 0 limit; evaluate it just
        # off zero so (1 - cos)/w**2 never forms 0/0.
        w = wc * u / (1.0 - u) if u > 0.0 else wc * 1e-12
        jacobian = wc / (1.0 - u) ** 2 if u > 0.0 else wc
        osc = 2.0 * math.sin(0.5 * w * tau) ** 2 / (w * w)
        if temp > 0.0:
            osc /= math.tanh(w / (2.0 * temp))
        return density(w) * osc * jacobian

    return integrate(transformed, 0.0, 1.0, spec)


def dephasing_state(t: float, rho0: BlochState, params: DephasingParams) -> BlochState:
    """Bloch vector of the propagated state; the population r_z is conserved."""
    envelope = math.exp(-dephasing_gamma_factor(t, params))
    return BlochState(rho0.r_x * envelope, rho0.r_y * envelope, rho0.r_z)


def dephasing_generator(
    t: float, rho0: BlochState, params: DephasingParams
) -> np.ndarray:
    """Matrix d(rho_t)/dt; zero diagonal, traceless Hermitian."""
    rate = dephasing_rate(t, params)
    envelope = math.exp(-dephasing_gamma_factor(t, params))
    off = -0.5 * rate * envelope * (rho0.r_x - 1j * rho0.r_y)
    return np.array([[0.0, off], [off.conjugate(), 0.0]], dtype=complex)


class DephasingTrajectory:
    """Read-only view of one pure-dephasing evolution."""

    def __init__(self, params: DephasingParams, initial: BlochState):
        self.params = params
        self.initial = initial

    def state(self, t: float) -> BlochState:
        return dephasing_state(t, self.initial, self.params)

    def generator(self, t: float) -> np.ndarray:
        return dephasing_generator(t, self.initial, self.params)

    def purity_deficit(self, t: float) -> float:
        envelope = math.exp(-dephasing_gamma_factor(t, self.params))
        c2 = self.initial.r_x**2 + self.initial.r_y**2
        return 0.5 * max(0.0, 1.0 - c2 * envelope * envelope - self.initial.r_z**2)


class Trajectory(Protocol):
    """What the bound engine needs from a propagated open-system evolution."""

    initial: BlochState

    def state(self, t: float) -> BlochState: ...

    def generator(self, t: float) -> np.ndarray: ...

    def purity_deficit(self, t: float) -> float: ...
