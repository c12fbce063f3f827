"""Wave-plate parametrized state preparation.

A half-wave plate at angle alpha followed by an incoherent path split and a
second half-wave plate fixed at pi/8 prepares a state with equal populations
and off-diagonal element cos(4 alpha)/2.  The dephased variant models a path
difference beyond the coherence length, which kills the off-diagonals
entirely.  Angles are radians internally; the CLI converts from degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import GadChannel, ParameterOutOfRangeError
from .qstate import QubitState

ALPHA_MAX = math.pi / 4.0


class AngleOutOfRangeError(ValueError):
    pass


class CoherenceOutOfRangeError(ValueError):
    pass


@dataclass(frozen=True)
class PrepSetting:
    """HWP1 angle alpha in [0, pi/4] and whether the preparation dephases."""

    alpha: float
    dephased: bool = False

    def __post_init__(self):
        if not 0.0 <= self.alpha <= ALPHA_MAX + 1e-12:
            raise AngleOutOfRangeError(
                f"alpha must be in [0, pi/4], got {self.alpha}"
            )


def prepare(setting: PrepSetting) -> QubitState:
    """The prepared photon state for a given wave-plate setting.

    Coherent: (|H><H| + |V><V|)/2 + cos(4 alpha)(|H><V| + |V><H|)/2.
    Dephased: the maximally mixed state.
    """
    if setting.dephased:
        off = 0.0
    else:
        off = 0.5 * math.cos(4.0 * setting.alpha)
    return QubitState(np.array([[0.5, off], [off, 0.5]], dtype=np.complex128))


def alpha_for_coherence(c: float) -> float:
    """The HWP1 angle giving l1 coherence c: alpha = arccos(c) / 4."""
    if not 0.0 <= c <= 1.0:
        raise CoherenceOutOfRangeError(f"coherence must be in [0, 1], got {c}")
    return math.acos(c) / 4.0


def evolved_closed_form(setting: PrepSetting, ch: GadChannel) -> QubitState:
    """Closed-form state after the GAD channel; oracle for the Kraus path.

    p_g = p r + (1-r)/2, p_e = (1+r)/2 - p r, p_c = cos(4 alpha) sqrt(1-r)/2.
    """
    p_g = ch.p * ch.r + (1.0 - ch.r) / 2.0
    p_e = (1.0 + ch.r) / 2.0 - ch.p * ch.r
    if setting.dephased:
        p_c = 0.0
    else:
        p_c = 0.5 * math.cos(4.0 * setting.alpha) * math.sqrt(1.0 - ch.r)
    return QubitState(np.array([[p_g, p_c], [p_c, p_e]], dtype=np.complex128))


def hwp_theta_for_p(p: float) -> float:
    """Interferometer HWP angle realizing p = cos^2(2 theta)."""
    if not 0.5 <= p <= 1.0:
        raise ParameterOutOfRangeError(f"p must be in [0.5, 1], got {p}")
    return math.acos(math.sqrt(p)) / 2.0


def hwp_phi_for_r(r: float) -> float:
    """Interferometer HWP angle realizing r = sin^2(2 phi)."""
    if not 0.0 <= r <= 1.0:
        raise ParameterOutOfRangeError(f"r must be in [0, 1], got {r}")
    return math.asin(math.sqrt(r)) / 2.0
