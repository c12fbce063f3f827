"""Generalized amplitude damping (GAD) channel for a single qubit.

The channel is parametrized by the temperature weight p in [0.5, 1] and the
damping strength r in [0, 1].  A matched Lindblad master-equation integrator
is provided as an independent cross-check of the Kraus map; the two pictures
are linked by r = 1 - exp[-(2 nbar + 1) gamma0 t] and
p = 1 / (1 + exp(-omega/T)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qstate import ATOL, QubitState

SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)  # |0><1|
SIGMA_PLUS = SIGMA_MINUS.conj().T


class ParameterOutOfRangeError(ValueError):
    pass


class MismatchedTemperatureError(ValueError):
    pass


class StepSizeError(ValueError):
    pass


@dataclass(frozen=True)
class GadChannel:
    """Temperature weight p in [0.5, 1] and damping strength r in [0, 1]."""

    p: float
    r: float

    def __post_init__(self):
        if not 0.5 <= self.p <= 1.0:
            raise ParameterOutOfRangeError(f"p must be in [0.5, 1], got {self.p}")
        if not 0.0 <= self.r <= 1.0:
            raise ParameterOutOfRangeError(f"r must be in [0, 1], got {self.r}")


@dataclass(frozen=True)
class BathSpec:
    """Thermal bath with hbar = k_B = 1 units.

    omega_s: system transition frequency, temperature: bath temperature in
    the same units, gamma0: spontaneous emission rate.
    """

    omega_s: float
    temperature: float
    gamma0: float

    def __post_init__(self):
        if not (math.isfinite(self.omega_s) and self.omega_s > 0):
            raise ParameterOutOfRangeError(f"omega_s must be positive, got {self.omega_s}")
        if not (math.isfinite(self.temperature) and self.temperature >= 0):
            raise ParameterOutOfRangeError(
                f"temperature must be >= 0, got {self.temperature}"
            )
        if not (math.isfinite(self.gamma0) and self.gamma0 > 0):
            raise ParameterOutOfRangeError(f"gamma0 must be positive, got {self.gamma0}")

    @property
    def mean_occupation(self) -> float:
        """Bose occupation nbar = 1 / (exp(omega/T) - 1); 0 at T = 0."""
        if self.temperature == 0.0:
            return 0.0
        return 1.0 / math.expm1(self.omega_s / self.temperature)


def kraus_operators(ch: GadChannel) -> list[np.ndarray]:
    """The four GAD Kraus matrices M0..M3 (M0, M1 relaxation; M2, M3 excitation)."""
    sp = math.sqrt(ch.p)
    sq = math.sqrt(1.0 - ch.p)
    sr = math.sqrt(ch.r)
    s1r = math.sqrt(1.0 - ch.r)
    m0 = sp * np.array([[1.0, 0.0], [0.0, s1r]], dtype=np.complex128)
    m1 = sp * np.array([[0.0, sr], [0.0, 0.0]], dtype=np.complex128)
    m2 = sq * np.array([[s1r, 0.0], [0.0, 1.0]], dtype=np.complex128)
    m3 = sq * np.array([[0.0, 0.0], [sr, 0.0]], dtype=np.complex128)
    return [m0, m1, m2, m3]


def apply(ch: GadChannel, state: QubitState) -> QubitState:
    """rho -> sum_k M_k rho M_k^dagger."""
    rho = state.matrix
    out = np.zeros((2, 2), dtype=np.complex128)
    for m in kraus_operators(ch):
        out += m @ rho @ m.conj().T
    return QubitState(out)


def equilibrium_state(ch: GadChannel) -> QubitState:
    """Thermal fixed point diag(p, 1 - p)."""
    return QubitState.diagonal(ch.p, 1.0 - ch.p)


def compose(ch1: GadChannel, ch2: GadChannel) -> GadChannel:
    """Same-temperature semigroup composition: r12 = 1 - (1-r1)(1-r2)."""
    if abs(ch1.p - ch2.p) > ATOL:
        raise MismatchedTemperatureError(
            f"cannot compose channels with p={ch1.p} and p={ch2.p}"
        )
    return GadChannel(ch1.p, 1.0 - (1.0 - ch1.r) * (1.0 - ch2.r))


def r_from_time(bath: BathSpec, t: float) -> float:
    """r(t) = 1 - exp[-(2 nbar + 1) gamma0 t]."""
    if t < 0:
        raise ParameterOutOfRangeError(f"t must be >= 0, got {t}")
    return -math.expm1(-(2.0 * bath.mean_occupation + 1.0) * bath.gamma0 * t)


def p_from_temperature(bath: BathSpec) -> float:
    """p(T) = 1 / (1 + exp(-omega/T)); limits 0.5 (T -> inf) and 1 (T -> 0)."""
    if bath.temperature == 0.0:
        return 1.0
    return 1.0 / (1.0 + math.exp(-bath.omega_s / bath.temperature))


def channel_for(bath: BathSpec, t: float) -> GadChannel:
    """The GAD channel matching evolution under `bath` for time t."""
    return GadChannel(p_from_temperature(bath), r_from_time(bath, t))


def lindblad_derivative(bath: BathSpec, state: QubitState) -> np.ndarray:
    """Right-hand side of the thermal master equation.

    d rho/dt = gamma0 (nbar+1) D[sigma-] rho + gamma0 nbar D[sigma+] rho,
    with D[L] rho = L rho L^dag - (1/2){L^dag L, rho}.  Traceless, Hermitian.
    """
    rho = state.matrix
    nbar = bath.mean_occupation
    out = np.zeros((2, 2), dtype=np.complex128)
    for rate, op in (
        (bath.gamma0 * (nbar + 1.0), SIGMA_MINUS),
        (bath.gamma0 * nbar, SIGMA_PLUS),
    ):
        if rate == 0.0:
            continue
        anti = op.conj().T @ op
        out += rate * (op @ rho @ op.conj().T - 0.5 * (anti @ rho + rho @ anti))
    return out


def evolve_master_equation(
    bath: BathSpec, initial: QubitState, t: float, dt: float | None = None
) -> QubitState:
    """Fixed-step classical 4th-order integration of the master equation.

    Default step is 1e-3 / [gamma0 (2 nbar + 1)]; the step count is rounded
    up so the final step lands exactly on t.
    """
    if t < 0:
        raise StepSizeError(f"t must be >= 0, got {t}")
    if t == 0.0:
        return initial
    if dt is None:
        dt = 1e-3 / (bath.gamma0 * (2.0 * bath.mean_occupation + 1.0))
    if not 0.0 < dt <= t:
        raise StepSizeError(f"dt must satisfy 0 < dt <= t, got dt={dt}, t={t}")

    n_steps = max(1, math.ceil(t / dt - 1e-9))
    h = t / n_steps

    def deriv(m: np.ndarray) -> np.ndarray:
        return lindblad_derivative(bath, QubitState(m))

    rho = np.array(initial.matrix, dtype=np.complex128)
    for _ in range(n_steps):
        k1 = deriv(rho)
        k2 = deriv(rho + 0.5 * h * k1)
        k3 = deriv(rho + 0.5 * h * k2)
        k4 = deriv(rho + h * k3)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    # Re-symmetrize to scrub integrator round-off.
    rho = 0.5 * (rho + rho.conj().T)
    return QubitState(rho)
