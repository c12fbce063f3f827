"""Four-basis single-qubit tomography with binomial shot noise.

Projection bases are H, V, R, D with |R> = (|H> + i|V>)/sqrt(2) and
|D> = (|H> + |V>)/sqrt(2).  Counts are per-basis binomial draws; the state
is reconstructed by Bloch-vector linear inversion followed by a radial
projection back into the Bloch ball when noise pushes the estimate outside.
Error bars come from a parametric bootstrap at the observed frequencies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qstate import QubitState, validate

BASIS_LABELS = ("H", "V", "R", "D")

# Identifier of the sampling RNG, recorded in harness output metadata.
# Cross-implementation bit-identity of draws is a non-goal.
RNG_ALGORITHM = "numpy.random.Generator(PCG64)"

# Stream tag separating bootstrap draws from count draws.
_BOOTSTRAP_STREAM = 0xB007


@dataclass(frozen=True)
class CountRecord:
    """Photon counts for the four projectors, all with the same shot budget."""

    counts: tuple[int, int, int, int]
    shots_per_basis: int
    seed: int

    def __post_init__(self):
        if self.shots_per_basis < 1:
            raise ValueError("shots_per_basis must be >= 1")
        if any(c < 0 or c > self.shots_per_basis for c in self.counts):
            raise ValueError(f"counts must lie in [0, shots], got {self.counts}")

    @property
    def frequencies(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.shots_per_basis


@dataclass(frozen=True)
class Reconstruction:
    """Reconstructed state with per-element bootstrap standard errors.

    stderr[i, j] combines real and imaginary spread of element (i, j).
    bootstrap_states holds the resampled reconstructions so downstream
    quantities (entropy productions) can get error bars from the same draw.
    """

    state: QubitState
    stderr: np.ndarray
    n_bootstrap: int
    bootstrap_states: tuple[QubitState, ...]


def projector_probabilities(state: QubitState) -> np.ndarray:
    """Born probabilities (p_H, p_V, p_R, p_D)."""
    m = state.matrix
    p_h = float(m[0, 0].real)
    p_v = float(m[1, 1].real)
    p_r = 0.5 - float(m[0, 1].imag)
    p_d = 0.5 + float(m[0, 1].real)
    return np.clip(np.array([p_h, p_v, p_r, p_d]), 0.0, 1.0)


def simulate_counts(state: QubitState, shots: int, seed: int) -> CountRecord:
    """Independent binomial draws per basis; deterministic given seed."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = np.random.default_rng(seed)
    probs = projector_probabilities(state)
    counts = tuple(int(rng.binomial(shots, p)) for p in probs)
    return CountRecord(counts=counts, shots_per_basis=shots, seed=seed)


def inversion_from_frequencies(frequencies) -> np.ndarray:
    """Linear inversion from (f_H, f_V, f_R, f_D); may be unphysical.

    Pauli expectations: <sz> = f_H - f_V, <sx> = 2 f_D - 1, <sy> = 2 f_R - 1.
    """
    f_h, f_v, f_r, f_d = np.asarray(frequencies, dtype=float)
    z = f_h - f_v
    x = 2.0 * f_d - 1.0
    y = 2.0 * f_r - 1.0
    return 0.5 * np.array(
        [[1.0 + z, x - 1j * y], [x + 1j * y, 1.0 - z]], dtype=np.complex128
    )


def linear_inversion(record: CountRecord) -> np.ndarray:
    """Hermitian unit-trace estimate from counts; possibly indefinite."""
    return inversion_from_frequencies(record.frequencies)


def project_to_physical(m: np.ndarray) -> QubitState:
    """Radially project a Bloch vector of length > 1 back to the sphere.

    For unit-trace Hermitian 2x2 input this is the Frobenius-nearest valid
    state; physical input passes through unchanged.
    """
    x = 2.0 * float(m[0, 1].real)
    y = -2.0 * float(m[0, 1].imag)
    z = float((m[0, 0] - m[1, 1]).real)
    length = np.sqrt(x * x + y * y + z * z)
    if length <= 1.0:
        return QubitState(m)
    return QubitState.from_bloch(x / length, y / length, z / length)


def reconstruct_counts(record: CountRecord) -> QubitState:
    """Linear inversion plus physicality projection."""
    return project_to_physical(linear_inversion(record))


def reconstruct_with_errors(
    state: QubitState, shots: int, seed: int, n_bootstrap: int = 200
) -> Reconstruction:
    """Simulate one tomography run and bootstrap its uncertainty.

    Resamples per-basis binomials at the observed frequencies n_bootstrap
    times and reports the elementwise standard error over the resampled
    reconstructions.  Deterministic given seed.
    """
    if n_bootstrap < 2:
        raise ValueError("n_bootstrap must be >= 2")
    record = simulate_counts(state, shots, seed)
    estimate = reconstruct_counts(record)
    validate(estimate)

    freqs = record.frequencies
    rng = np.random.default_rng(np.random.SeedSequence((seed, _BOOTSTRAP_STREAM)))
    boot_states = []
    boot_matrices = np.empty((n_bootstrap, 2, 2), dtype=np.complex128)
    for k in range(n_bootstrap):
        resampled = rng.binomial(shots, freqs) / shots
        st = project_to_physical(inversion_from_frequencies(resampled))
        boot_states.append(st)
        boot_matrices[k] = st.matrix
    stderr = np.sqrt(
        np.var(boot_matrices.real, axis=0, ddof=1)
        + np.var(boot_matrices.imag, axis=0, ddof=1)
    )
    return Reconstruction(
        state=estimate,
        stderr=stderr,
        n_bootstrap=n_bootstrap,
        bootstrap_states=tuple(boot_states),
    )
