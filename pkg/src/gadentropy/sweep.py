"""Figure-reproduction sweeps and the aggregated property suite.

Each grid point runs the two-experiment protocol: the coherent preparation
gives the total entropy production, the dephased preparation gives the
population part, and the coherence part is their difference.  Both the
analytic path and the shot-noise tomography path are recorded per row.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import channel as chn
from . import prep, qstate, tomography
from .budget import (
    IndeterminateEntropyError,
    population_production,
    total_production,
)
from .budget import budget as entropy_budget

DEFAULT_SHOTS = 10_000
DEFAULT_BOOTSTRAP = 200
DEFAULT_SEED = 20240
DEFAULT_R_POINTS = 21

FIG2_P_VALUES = (0.9, 0.75, 0.6)
FIG3_P_VALUES = (0.9,)
FIG3_COHERENCES = (0.8, 0.6, 0.4)


class ConfigError(ValueError):
    pass


@dataclass
class SweepConfig:
    """Declarative description of a (p, alpha, r, shots, seed) grid."""

    scenario: str = "custom"
    p_values: tuple[float, ...] = FIG2_P_VALUES
    alpha_or_coherence: tuple[float, ...] = (1.0,)
    units: str = "coherence"  # "degrees" | "coherence"
    r_grid: tuple[float, ...] = ()
    shots: int = DEFAULT_SHOTS
    n_bootstrap: int = DEFAULT_BOOTSTRAP
    seed: int = DEFAULT_SEED
    output_path: str = "sweep.csv"

    def __post_init__(self):
        if self.scenario not in ("fig2", "fig3", "custom"):
            raise ConfigError(f"unknown scenario {self.scenario!r}")
        if self.units not in ("degrees", "coherence"):
            raise ConfigError(f"units must be 'degrees' or 'coherence', got {self.units!r}")
        if not self.r_grid:
            self.r_grid = uniform_r_grid(DEFAULT_R_POINTS)
        if not self.p_values or not self.alpha_or_coherence:
            raise ConfigError("p_values and alpha_or_coherence must be non-empty")
        if any(not 0.0 <= r <= 1.0 for r in self.r_grid):
            raise ConfigError("r_grid values must lie in [0, 1]")
        if self.shots < 1 or self.n_bootstrap < 2:
            raise ConfigError("shots must be >= 1 and n_bootstrap >= 2")

    def alphas(self) -> tuple[float, ...]:
        """HWP1 angles in radians for each configured initial state."""
        if self.units == "degrees":
            return tuple(math.radians(a) for a in self.alpha_or_coherence)
        return tuple(prep.alpha_for_coherence(c) for c in self.alpha_or_coherence)


def uniform_r_grid(n_points: int) -> tuple[float, ...]:
    if n_points < 2:
        raise ConfigError("r grid needs at least 2 points")
    return tuple(np.linspace(0.0, 1.0, n_points))


def fig2_config(**overrides) -> SweepConfig:
    """Maximum initial coherence, three bath temperatures."""
    base = dict(
        scenario="fig2",
        p_values=FIG2_P_VALUES,
        alpha_or_coherence=(1.0,),
        units="coherence",
        output_path="fig2.csv",
    )
    base.update(overrides)
    return SweepConfig(**base)


def fig3_config(**overrides) -> SweepConfig:
    """Fixed bath temperature, three initial coherences."""
    base = dict(
        scenario="fig3",
        p_values=FIG3_P_VALUES,
        alpha_or_coherence=FIG3_COHERENCES,
        units="coherence",
        output_path="fig3.csv",
    )
    base.update(overrides)
    return SweepConfig(**base)


_CONFIG_KEYS = {
    "scenario", "p_values", "alpha_deg", "coherence", "r_grid", "r_points",
    "shots", "n_bootstrap", "seed", "out",
}


def load_config(path: str) -> SweepConfig:
    """Parse a flat key-value config file (key = value, '#' comments)."""
    raw: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            raw[key] = value

    def floats(text: str) -> tuple[float, ...]:
        return tuple(float(tok) for tok in text.split(",") if tok.strip())

    kwargs: dict = {}
    if "scenario" in raw:
        kwargs["scenario"] = raw["scenario"]
    if "p_values" in raw:
        kwargs["p_values"] = floats(raw["p_values"])
    if "alpha_deg" in raw and "coherence" in raw:
        raise ConfigError("specify alpha_deg or coherence, not both")
    if "alpha_deg" in raw:
        kwargs["alpha_or_coherence"] = floats(raw["alpha_deg"])
        kwargs["units"] = "degrees"
    if "coherence" in raw:
        kwargs["alpha_or_coherence"] = floats(raw["coherence"])
        kwargs["units"] = "coherence"
    if "r_grid" in raw:
        kwargs["r_grid"] = floats(raw["r_grid"])
    elif "r_points" in raw:
        kwargs["r_grid"] = uniform_r_grid(int(raw["r_points"]))
    if "shots" in raw:
        kwargs["shots"] = int(raw["shots"])
    if "n_bootstrap" in raw:
        kwargs["n_bootstrap"] = int(raw["n_bootstrap"])
    if "seed" in raw:
        kwargs["seed"] = int(raw["seed"])
    if "out" in raw:
        kwargs["output_path"] = raw["out"]
    try:
        return SweepConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


@dataclass
class SweepRow:
    """One grid point: analytic and tomography entropy productions."""

    p: float
    r: float
    alpha_deg: float
    coherence_initial: float
    sigma_total: float
    sigma_pop: float
    sigma_coh: float
    sigma_total_tomo: float
    sigma_total_tomo_stderr: float
    sigma_pop_tomo: float
    sigma_pop_tomo_stderr: float
    sigma_coh_tomo: float
    sigma_coh_tomo_stderr: float
    seed_used: int
    indeterminate: int = 0


CSV_COLUMNS = tuple(f.name for f in dataclasses.fields(SweepRow))


def _row_seed(master_seed: int, row_index: int) -> int:
    return int(np.random.SeedSequence((master_seed, row_index)).generate_state(1, np.uint64)[0])


def _production_with_stderr(production, reconstruction) -> tuple[float, float]:
    """Evaluate a production functional on the point estimate and its bootstrap."""
    point = production(reconstruction.state)
    samples = np.array([production(s) for s in reconstruction.bootstrap_states])
    finite = samples[np.isfinite(samples)]
    if len(finite) < 2:
        return point, math.nan
    return point, float(np.std(finite, ddof=1))


def _indeterminate_row(base: dict) -> SweepRow:
    nan = math.nan
    return SweepRow(
        sigma_total=nan, sigma_pop=nan, sigma_coh=nan,
        sigma_total_tomo=nan, sigma_total_tomo_stderr=nan,
        sigma_pop_tomo=nan, sigma_pop_tomo_stderr=nan,
        sigma_coh_tomo=nan, sigma_coh_tomo_stderr=nan,
        indeterminate=1, **base,
    )


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """Evaluate every (p, alpha, r) grid point of the configured sweep.

    Rows are ordered by (p, alpha, r); indeterminate points (p = 1 with a
    divergent relative entropy) are flagged, not dropped.
    """
    rows: list[SweepRow] = []
    row_index = 0
    for p in config.p_values:
        for alpha in config.alphas():
            coherent = prep.prepare(prep.PrepSetting(alpha, dephased=False))
            dephased = prep.prepare(prep.PrepSetting(alpha, dephased=True))
            coherence_initial = qstate.l1_coherence(coherent)
            for r in config.r_grid:
                seed = _row_seed(config.seed, row_index)
                row_index += 1
                rows.append(
                    _evaluate_point(
                        p, r, alpha, coherence_initial, coherent, dephased,
                        config.shots, config.n_bootstrap, seed,
                    )
                )
    return rows


def _evaluate_point(
    p, r, alpha, coherence_initial, coherent, dephased, shots, n_bootstrap, seed
) -> SweepRow:
    ch = chn.GadChannel(p, r)
    eq = chn.equilibrium_state(ch)
    base = dict(
        p=p, r=r, alpha_deg=math.degrees(alpha),
        coherence_initial=coherence_initial, seed_used=seed,
    )
    try:
        analytic = entropy_budget(coherent, ch)
    except IndeterminateEntropyError:
        return _indeterminate_row(base)
    if not (math.isfinite(analytic.total) and math.isfinite(analytic.population)):
        # p = 1 with a finite final state: the analytic value diverges and
        # no tomography estimate is meaningful.
        return _indeterminate_row(base)

    try:
        # Experiment 1: coherent preparation, tomograph the evolved state.
        evolved_coh = chn.apply(ch, coherent)
        rec1 = tomography.reconstruct_with_errors(evolved_coh, shots, seed, n_bootstrap)
        total_tomo, total_err = _production_with_stderr(
            lambda s: total_production(coherent, s, eq, clamp=False), rec1
        )
        # Experiment 2: dephased preparation, only populations evolve.
        evolved_pop = chn.apply(ch, dephased)
        rec2 = tomography.reconstruct_with_errors(
            evolved_pop, shots, seed + 1, n_bootstrap
        )
        pop_tomo, pop_err = _production_with_stderr(
            lambda s: population_production(dephased, s, eq, clamp=False), rec2
        )
    except IndeterminateEntropyError:
        return _indeterminate_row(base)
    # The difference protocol; the direct value is the analytic sigma_coh,
    # and the two routes are asserted to agree inside budget().
    coh_tomo = total_tomo - pop_tomo
    coh_err = math.hypot(total_err, pop_err)

    return SweepRow(
        sigma_total=analytic.total,
        sigma_pop=analytic.population,
        sigma_coh=analytic.coherence,
        sigma_total_tomo=total_tomo,
        sigma_total_tomo_stderr=total_err,
        sigma_pop_tomo=pop_tomo,
        sigma_pop_tomo_stderr=pop_err,
        sigma_coh_tomo=coh_tomo,
        sigma_coh_tomo_stderr=coh_err,
        **base,
    )


def _format_value(value) -> str:
    if isinstance(value, int):
        return str(value)
    return format(value, ".12g")


def emit_csv(rows: list[SweepRow], path: str, config: SweepConfig | None = None) -> None:
    """Write the sweep as UTF-8 CSV with a fixed column order.

    Floats carry 12 significant digits so reruns with the same seed are
    byte-identical.  A JSON metadata sidecar (<path>.meta.json) records the
    configuration, the RNG algorithm, and the error-bar procedure.
    """
    if not rows:
        raise IOError("refusing to write an empty sweep")
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(
            ",".join(_format_value(getattr(row, name)) for name in CSV_COLUMNS)
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    if config is not None:
        meta = {
            "config": dataclasses.asdict(config),
            "rng_algorithm": tomography.RNG_ALGORITHM,
            "error_bars": (
                "parametric bootstrap: per-basis binomial resampling at the "
                "observed frequencies, stderr = sample std over resampled "
                "reconstructions; simulation-based, not a lab claim"
            ),
        }
        with open(path + ".meta.json", "w", encoding="utf-8") as fh:
            json.dump(meta, fh, indent=2, default=list)
            fh.write("\n")


def emit_summary(rows: list[SweepRow]) -> str:
    """Human-readable consistency report over a finished sweep."""
    if not rows:
        raise IOError("no rows to summarize")
    finite = [r for r in rows if not r.indeterminate]
    add_viol = max(
        (abs(r.sigma_total - (r.sigma_pop + r.sigma_coh)) for r in finite),
        default=0.0,
    )
    negativity = max(
        (-min(r.sigma_total, r.sigma_pop, r.sigma_coh) for r in finite),
        default=0.0,
    )
    max_dev = 0.0
    max_dev_sigmas = 0.0
    for r in finite:
        for analytic, tomo, err in (
            (r.sigma_total, r.sigma_total_tomo, r.sigma_total_tomo_stderr),
            (r.sigma_pop, r.sigma_pop_tomo, r.sigma_pop_tomo_stderr),
        ):
            dev = abs(tomo - analytic)
            if dev > max_dev:
                max_dev = dev
                max_dev_sigmas = dev / err if err > 0 else math.inf
    lines = [
        f"rows: {len(rows)} ({len(rows) - len(finite)} indeterminate)",
        f"max additivity violation (analytic): {add_viol:.3e}",
        f"max negativity (analytic): {max(negativity, 0.0):.3e}",
        f"max |tomography - analytic|: {max_dev:.3e} ({max_dev_sigmas:.2f} stderr)",
    ]
    return "\n".join(lines)


@dataclass
class PropertyResult:
    name: str
    passed: bool
    detail: str


@dataclass
class PropertyReport:
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def render(self) -> str:
        lines = [
            f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}"
            for r in self.results
        ]
        lines.append("ALL PASS" if self.passed else "FAILURES PRESENT")
        return "\n".join(lines)


def _random_state(rng: np.random.Generator) -> qstate.QubitState:
    v = rng.normal(size=3)
    radius = rng.uniform() ** (1.0 / 3.0)
    v = v / np.linalg.norm(v) * radius
    return qstate.QubitState.from_bloch(*v)


def run_property_suite(seed: int = 1234) -> PropertyReport:
    """Run every module invariant on documented grids with a fixed seed."""
    rng = np.random.default_rng(seed)
    report = PropertyReport()
    p_grid = np.linspace(0.5, 1.0, 11)
    r_grid = np.linspace(0.0, 1.0, 11)

    # Kraus completeness and fixed point over the (p, r) grid.
    worst_complete = 0.0
    worst_fixed = 0.0
    for p in p_grid:
        for r in r_grid:
            ch = chn.GadChannel(p, r)
            total = sum(m.conj().T @ m for m in chn.kraus_operators(ch))
            worst_complete = max(worst_complete, float(np.max(np.abs(total - np.eye(2)))))
            eq = chn.equilibrium_state(ch)
            worst_fixed = max(
                worst_fixed,
                float(np.max(np.abs(chn.apply(ch, eq).matrix - eq.matrix))),
            )
    report.results.append(PropertyResult(
        "kraus completeness (11x11 grid)", worst_complete < 1e-12,
        f"max deviation {worst_complete:.3e}"))
    report.results.append(PropertyResult(
        "equilibrium fixed point (11x11 grid)", worst_fixed < 1e-12,
        f"max deviation {worst_fixed:.3e}"))

    # Closed-form evolved state vs Kraus application.
    worst_closed = 0.0
    for alpha in np.linspace(0.0, math.pi / 4.0, 9):
        setting = prep.PrepSetting(alpha)
        state = prep.prepare(setting)
        for p in p_grid:
            for r in r_grid:
                ch = chn.GadChannel(p, r)
                dev = np.max(np.abs(
                    chn.apply(ch, state).matrix
                    - prep.evolved_closed_form(setting, ch).matrix
                ))
                worst_closed = max(worst_closed, float(dev))
    report.results.append(PropertyResult(
        "closed-form evolved state (9x11x11 grid)", worst_closed < 1e-12,
        f"max deviation {worst_closed:.3e}"))

    # Contractivity of relative entropy to equilibrium.
    violations = 0
    for _ in range(500):
        state = _random_state(rng)
        ch = chn.GadChannel(rng.uniform(0.5, 1.0 - 1e-9), rng.uniform(0.0, 1.0))
        eq = chn.equilibrium_state(ch)
        before = qstate.relative_entropy(state, eq)
        after = qstate.relative_entropy(chn.apply(ch, state), eq)
        if after > before + 1e-10:
            violations += 1
    report.results.append(PropertyResult(
        "relative-entropy contractivity (500 random cases)", violations == 0,
        f"{violations} violations"))

    # Decomposition additivity and non-negativity on random (alpha, p, r).
    worst_add = 0.0
    worst_neg = 0.0
    for _ in range(1000):
        setting = prep.PrepSetting(rng.uniform(0.0, math.pi / 4.0))
        ch = chn.GadChannel(rng.uniform(0.5, 1.0 - 1e-9), rng.uniform(0.0, 1.0))
        b = entropy_budget(prep.prepare(setting), ch)
        worst_add = max(worst_add, abs(b.total - (b.population + b.coherence)))
        worst_neg = max(worst_neg, -min(b.total, b.population, b.coherence))
    report.results.append(PropertyResult(
        "budget additivity + non-negativity (1000 random triples)",
        worst_add < 1e-10 and worst_neg <= 0.0,
        f"max additivity gap {worst_add:.3e}, max negativity {max(worst_neg, 0.0):.3e}"))

    # Off-diagonal decay sqrt(1-r) independent of p.
    worst_decay = 0.0
    for r in r_grid:
        factor = math.sqrt(1.0 - r)
        for p in p_grid:
            out = chn.apply(chn.GadChannel(p, r), qstate.PLUS)
            worst_decay = max(
                worst_decay, abs(float(out.matrix[0, 1].real) - 0.5 * factor)
            )
    report.results.append(PropertyResult(
        "coherence decay sqrt(1-r), p-independent", worst_decay < 1e-12,
        f"max deviation {worst_decay:.3e}"))

    # Same-p semigroup composition.
    worst_comp = 0.0
    for _ in range(100):
        p = rng.uniform(0.5, 1.0)
        ch1 = chn.GadChannel(p, rng.uniform(0.0, 1.0))
        ch2 = chn.GadChannel(p, rng.uniform(0.0, 1.0))
        state = _random_state(rng)
        sequential = chn.apply(ch2, chn.apply(ch1, state))
        composed = chn.apply(chn.compose(ch1, ch2), state)
        worst_comp = max(
            worst_comp, float(np.max(np.abs(sequential.matrix - composed.matrix)))
        )
    report.results.append(PropertyResult(
        "semigroup composition (100 random cases)", worst_comp < 1e-12,
        f"max deviation {worst_comp:.3e}"))

    # Tomography round trip at exact frequencies.
    worst_rt = 0.0
    for _ in range(200):
        state = _random_state(rng)
        probs = tomography.projector_probabilities(state)
        recon = tomography.project_to_physical(
            tomography.inversion_from_frequencies(probs)
        )
        worst_rt = max(worst_rt, float(np.max(np.abs(recon.matrix - state.matrix))))
    report.results.append(PropertyResult(
        "tomography exact-frequency round trip (200 random states)",
        worst_rt < 1e-12, f"max deviation {worst_rt:.3e}"))

    return report
