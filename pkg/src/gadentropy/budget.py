"""Entropy production of a qubit relaxing toward a thermal state, split into
a population part and a coherence part.

Total production is the drop in relative entropy to the equilibrium state;
the population part is the same drop computed on dephased states, and the
coherence part is the drop in relative entropy of coherence.  The three are
additive: total = population + coherence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import GadChannel, apply, equilibrium_state
from .qstate import QubitState, dephase, rel_entropy_coherence, relative_entropy

# Values in [-NEG_FLOOR, 0) are floating-point noise and clamp to 0; anything
# more negative is a genuine positivity violation.
NEG_FLOOR = 1e-10
ADDITIVITY_TOL = 1e-10


class IndeterminateEntropyError(ArithmeticError):
    """Both relative entropies are infinite (inf - inf); restrict p < 1 or r > 0."""


class EntropyConsistencyError(RuntimeError):
    """A component came out negative beyond the numerical floor."""


@dataclass(frozen=True)
class EntropyBudget:
    """The triple (total, population, coherence), each >= 0, in nats."""

    total: float
    population: float
    coherence: float


def _clamp(value: float, label: str) -> float:
    if value < -NEG_FLOOR:
        raise EntropyConsistencyError(f"{label} production is negative: {value:.3e}")
    return max(value, 0.0)


def _difference(d_initial: float, d_final: float, label: str, clamp: bool) -> float:
    if math.isinf(d_initial) and math.isinf(d_final):
        raise IndeterminateEntropyError(
            f"{label} production is inf - inf; restrict p < 1 or r > 0"
        )
    if math.isinf(d_final):
        raise EntropyConsistencyError(
            f"{label}: relative entropy increased to infinity along the evolution"
        )
    if math.isinf(d_initial):
        return math.inf
    diff = d_initial - d_final
    return _clamp(diff, label) if clamp else diff


def total_production(
    initial: QubitState, final: QubitState, eq: QubitState, clamp: bool = True
) -> float:
    """Sigma = D(initial || eq) - D(final || eq) >= 0.

    With clamp=False the raw signed difference is returned; use it when the
    final state is a noisy estimate rather than an exact channel output.
    """
    return _difference(
        relative_entropy(initial, eq), relative_entropy(final, eq), "total", clamp
    )


def population_production(
    initial: QubitState, final: QubitState, eq: QubitState, clamp: bool = True
) -> float:
    """Sigma_pop = D(dephase(initial) || eq) - D(dephase(final) || eq) >= 0."""
    return _difference(
        relative_entropy(dephase(initial), eq),
        relative_entropy(dephase(final), eq),
        "population",
        clamp,
    )


def coherence_production(
    initial: QubitState, final: QubitState, clamp: bool = True
) -> float:
    """Sigma_coh = C(initial) - C(final) with C the relative entropy of coherence."""
    diff = rel_entropy_coherence(initial) - rel_entropy_coherence(final)
    return _clamp(diff, "coherence") if clamp else diff


def budget(initial: QubitState, ch: GadChannel) -> EntropyBudget:
    """Apply the channel and return (Sigma, Sigma_pop, Sigma_coh).

    The equilibrium reference is always taken from the channel itself.
    Verifies additivity total = population + coherence to 1e-10.
    """
    final = apply(ch, initial)
    eq = equilibrium_state(ch)
    total = total_production(initial, final, eq)
    population = population_production(initial, final, eq)
    coherence = coherence_production(initial, final)
    if math.isfinite(total) and math.isfinite(population):
        gap = abs(total - (population + coherence))
        if gap > ADDITIVITY_TOL:
            raise EntropyConsistencyError(
                f"additivity violated by {gap:.3e} at p={ch.p}, r={ch.r}"
            )
    return EntropyBudget(total=total, population=population, coherence=coherence)
